"""
Functions for storing computed polytopes in the database and reading them back
"""
from typing import List, Type

from sqlalchemy.orm import Session

from src.database.models import PolytopeRecord
from src.repository.files import format_ieq, format_poi, parse_ieq, parse_poi
from src.services.event_graph import EventGraph
from src.services.polytope import Polytope


async def get_record(graph: EventGraph, db: Session) -> PolytopeRecord | None:
    """
    Retrieves the stored polytope of a graph.

    :param graph: The event graph, looked up by its canonical key.
    :type graph: EventGraph
    :param db: The database session.
    :type db: Session
    :return: The record, or None if the polytope was never stored.
    :rtype: PolytopeRecord | None
    """
    return db.query(PolytopeRecord).filter_by(graph_key=graph.key()).first()


async def get_record_by_id(record_id: int, db: Session) -> PolytopeRecord | None:
    return db.query(PolytopeRecord).filter_by(id=record_id).first()


async def list_records(db: Session, skip: int, limit: int) -> List[Type[PolytopeRecord]]:
    """
    Retrieves stored polytopes, smallest graphs first.

    :param db: The database session.
    :type db: Session
    :param skip: The number of records to skip.
    :type skip: int
    :param limit: The maximum number of records to return.
    :type limit: int
    :return: A list of records.
    :rtype: List[Type[PolytopeRecord]]
    """
    query = db.query(PolytopeRecord).order_by(PolytopeRecord.n, PolytopeRecord.m, PolytopeRecord.id)
    return query.offset(skip).limit(limit).all()


async def save_polytope(graph: EventGraph, polytope: Polytope, db: Session) -> PolytopeRecord:
    """
    Stores the vertices and, when computed, the facets of the polytope of ``graph``,
    replacing an earlier record of the same graph.

    :param graph: The event graph.
    :type graph: EventGraph
    :param polytope: Its classical polytope.
    :type polytope: Polytope
    :param db: The database session.
    :type db: Session
    :return: The stored record.
    :rtype: PolytopeRecord
    """
    record = await get_record(graph, db)
    if record is None:
        record = PolytopeRecord(graph_key=graph.key(), n=graph.n, m=graph.m)
        db.add(record)
    record.vertex_count = len(polytope.vertices)
    record.vertices = format_poi(polytope.coord_labels, polytope.vertices)
    if polytope.facets is not None:
        record.facet_count = len(polytope.facets)
        record.facets = format_ieq(polytope.coord_labels, polytope.facets, polytope.equalities)
    db.commit()
    db.refresh(record)
    return record


async def load_polytope(graph: EventGraph, db: Session) -> Polytope | None:
    """
    Rebuilds a stored polytope.

    :param graph: The event graph.
    :type graph: EventGraph
    :param db: The database session.
    :type db: Session
    :return: The polytope over the edge coordinates of ``graph``, or None if it was never stored.
    :rtype: Polytope | None
    """
    record = await get_record(graph, db)
    if record is None:
        return None
    vertices = parse_poi(record.vertices, graph.key()).vertices
    if record.facets is None:
        return Polytope(graph.edges, vertices)
    stored = parse_ieq(record.facets, graph.key())
    return Polytope(graph.edges, vertices, stored.facets, stored.equalities)


async def delete_record(record_id: int, db: Session) -> PolytopeRecord | None:
    """
    Deletes a stored polytope.

    :param record_id: The ID of the record to delete.
    :type record_id: int
    :param db: The database session.
    :type db: Session
    :return: The deleted record, or None if it does not exist.
    :rtype: PolytopeRecord | None
    """
    record = await get_record_by_id(record_id, db)
    if record:
        db.delete(record)
        db.commit()
    return record
