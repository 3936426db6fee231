"""
Routes for the classical polytope of an event graph.
"""
from typing import List

from fastapi import APIRouter, Depends
from sqlalchemy.orm import Session

from src.database.db import get_db
from src.repository import polytopes as repos_polytopes
from src.repository.files import graph_from_model, inequality_from_model, inequality_to_model, weighting_from_model
from src.schemas import (AutomorphismResponse, CheckRequest, FacetCheckResponse, GraphModel, MembershipResponse,
                         OrbitClassResponse, PolytopeResponse, VerifyRequest)
from src.services.event_graph import EventGraph, automorphisms
from src.services.polytope import (Polytope, classical_polytope, classify_facets, membership, render_inequality,
                                   verify_facet)

router = APIRouter(prefix="/graphs", tags=["graphs"])


def _response(graph: EventGraph, polytope: Polytope) -> PolytopeResponse:
    facets = polytope.facets or ()
    return PolytopeResponse(
        graph_key=graph.key(),
        dim=polytope.dim,
        vertex_count=len(polytope.vertices),
        facet_count=None if polytope.facets is None else len(facets),
        vertices=[[str(x) for x in v] for v in polytope.vertices],
        facets=[inequality_to_model(f, graph.edges) for f in facets],
        equalities=[inequality_to_model(e, graph.edges) for e in polytope.equalities],
    )


async def _with_facets(graph: EventGraph, db: Session) -> Polytope:
    polytope = await repos_polytopes.load_polytope(graph, db)
    if polytope is None or polytope.facets is None:
        polytope = classical_polytope(graph)
        await repos_polytopes.save_polytope(graph, polytope, db)
    return polytope


@router.post("/vertices", response_model=PolytopeResponse)
async def get_vertices(body: GraphModel) -> PolytopeResponse:
    """
    Classical labellings of a graph, as 0/1 points in canonical edge order.

    :param body: The event graph.
    :type body: GraphModel
    :return: The V-representation.
    :rtype: PolytopeResponse
    """
    graph = graph_from_model(body)
    return _response(graph, classical_polytope(graph, facets=False))


@router.post("/facets", response_model=PolytopeResponse,
             description="Facets are computed once per graph and then served from the database.")
async def get_facets(body: GraphModel, db: Session = Depends(get_db)) -> PolytopeResponse:
    """
    Complete H-representation of the classical polytope.

    :param body: The event graph.
    :type body: GraphModel
    :param db: The database session.
    :type db: Session
    :return: Vertices and facets.
    :rtype: PolytopeResponse
    """
    graph = graph_from_model(body)
    return _response(graph, await _with_facets(graph, db))


@router.post("/classify", response_model=List[OrbitClassResponse])
async def classify(body: GraphModel, db: Session = Depends(get_db)) -> List[OrbitClassResponse]:
    """
    Facets grouped into orbits of the automorphism group.

    :param body: The event graph.
    :type body: GraphModel
    :param db: The database session.
    :type db: Session
    :return: Classes by size.
    :rtype: List[OrbitClassResponse]
    """
    graph = graph_from_model(body)
    polytope = await _with_facets(graph, db)
    return [OrbitClassResponse(representative=inequality_to_model(c.representative, graph.edges),
                               size=c.size, trivial=c.trivial)
            for c in classify_facets(graph, polytope.facets)]


@router.post("/check", response_model=MembershipResponse)
async def check(body: CheckRequest, db: Session = Depends(get_db)) -> MembershipResponse:
    """
    Exact membership of an edge weighting in the classical polytope.

    :param body: The graph and the weighting.
    :type body: CheckRequest
    :param db: The database session.
    :type db: Session
    :return: Verdict with the most violated facet as certificate.
    :rtype: MembershipResponse
    """
    graph = graph_from_model(body.graph)
    weighting = weighting_from_model(body.weighting, graph)
    result = membership(await _with_facets(graph, db), weighting)
    if result.member:
        return MembershipResponse(member=True, detail="classical")
    text = render_inequality(result.violated, graph.edges)
    return MembershipResponse(member=False, violated=inequality_to_model(result.violated, graph.edges),
                              excess=str(result.excess), detail=f"NOT classical; violated: {text}")


@router.post("/verify", response_model=FacetCheckResponse)
async def verify(body: VerifyRequest) -> FacetCheckResponse:
    """
    Whether an inequality is valid and facet-defining for the classical polytope.

    :param body: The graph and the inequality.
    :type body: VerifyRequest
    :return: Validity, facet property and the dimension of the face it defines.
    :rtype: FacetCheckResponse
    """
    graph = graph_from_model(body.graph)
    result = verify_facet(graph, inequality_from_model(body.inequality))
    return FacetCheckResponse(valid=result.valid, facet=result.facet, face_dimension=result.face_dimension,
                              saturating_count=len(result.saturating))


@router.post("/automorphisms", response_model=AutomorphismResponse)
async def get_automorphisms(body: GraphModel) -> AutomorphismResponse:
    perms = automorphisms(graph_from_model(body))
    return AutomorphismResponse(count=len(perms), permutations=[list(p) for p in perms])
