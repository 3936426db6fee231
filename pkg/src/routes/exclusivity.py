"""
Routes for noncontextuality inequalities of exclusivity graphs.
"""
from fastapi import APIRouter

from src.repository.files import graph_from_model, inequality_to_model
from src.schemas import DerivationResponse, GraphModel
from src.services.exclusivity import noncontextuality_inequalities, stab_polytope, verify_stab_isomorphism

router = APIRouter(prefix="/exclusivity", tags=["exclusivity"])


@router.post("/derive", response_model=DerivationResponse)
async def derive(body: GraphModel) -> DerivationResponse:
    """
    Noncontextuality inequalities of the exclusivity graph H from the classical
    polytope of its star extension, next to the facets of STAB(H).

    :param body: The exclusivity graph H.
    :type body: GraphModel
    :return: Both inequality lists over the vertices of H and the isomorphism verdict.
    :rtype: DerivationResponse
    """
    graph = graph_from_model(body)
    derived = noncontextuality_inequalities(graph)
    stab = stab_polytope(graph)
    return DerivationResponse(
        inequalities=[inequality_to_model(f, derived.coord_labels) for f in derived.facets],
        stab=[inequality_to_model(f, stab.coord_labels) for f in stab.facets],
        isomorphic=verify_stab_isomorphism(graph),
    )
