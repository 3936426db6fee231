"""
Routes for the closed-form inequality families and the K5 facet catalogue.
"""
from typing import List

from fastapi import APIRouter, HTTPException, Query, status

from src.conf import messages
from src.repository.files import graph_to_model, inequality_to_model
from src.schemas import FamilyResponse, TableEntryResponse
from src.services.event_graph import complete_graph
from src.services.inequalities import FAMILIES, table_k5_representatives

router = APIRouter(prefix="/inequalities", tags=["inequalities"])


@router.get("/family", response_model=FamilyResponse)
async def get_family(family: str = Query(examples=["cycle", "hn"]), n: int = Query(ge=2, le=12)) -> FamilyResponse:
    """
    Inequalities of a closed-form family.

    :param family: ``cycle`` or ``hn``.
    :type family: str
    :param n: Size parameter.
    :type n: int
    :return: The graph and its inequalities.
    :rtype: FamilyResponse
    """
    if family not in FAMILIES:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND,
                            detail=messages.UNKNOWN_FAMILY.format(name=family))
    graph, inequalities = FAMILIES[family](n)
    return FamilyResponse(family=family, n=n, graph=graph_to_model(graph),
                          inequalities=[inequality_to_model(i, graph.edges) for i in inequalities])


@router.get("/table", response_model=List[TableEntryResponse])
async def get_table() -> List[TableEntryResponse]:
    edges = complete_graph(5).edges
    return [TableEntryResponse(name=name, inequality=inequality_to_model(entry.inequality, edges),
                               class_size=entry.class_size, violation=entry.violation,
                               hilbert_dimension=entry.hilbert_dimension)
            for name, entry in table_k5_representatives().items()]
