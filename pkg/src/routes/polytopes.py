"""
Routes for the stored polytopes.
"""
from typing import List, Type

from fastapi import APIRouter, Depends, HTTPException, Path, Query, status
from sqlalchemy.orm import Session

from src.conf import messages
from src.database.db import get_db
from src.database.models import PolytopeRecord
from src.repository import polytopes as repos_polytopes
from src.schemas import PolytopeRecordResponse

router = APIRouter(prefix="/polytopes", tags=["polytopes"])


@router.get("/", response_model=List[PolytopeRecordResponse])
async def get_records(skip: int = 0, limit: int = Query(default=10, le=100, ge=1),
                      db: Session = Depends(get_db)) -> List[Type[PolytopeRecord]]:
    """
    Get a list of stored polytopes.

    :param skip: Number of records to skip.
    :type skip: int
    :param limit: Number of records to retrieve.
    :type limit: int
    :param db: The database session.
    :type db: Session
    :return: List of records.
    :rtype: List[Type[PolytopeRecord]]
    """
    return await repos_polytopes.list_records(db, skip, limit)


@router.delete("/{record_id}", status_code=status.HTTP_204_NO_CONTENT)
async def remove_record(record_id: int = Path(ge=1), db: Session = Depends(get_db)) -> None:
    """
    Delete a stored polytope.

    :param record_id: The ID of the record to delete.
    :type record_id: int
    :param db: The database session.
    :type db: Session
    :return: None
    """
    record = await repos_polytopes.delete_record(record_id, db)
    if record is None:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=messages.RECORD_NOT_FOUND)
    return None
