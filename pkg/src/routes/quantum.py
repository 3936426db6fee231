"""
Routes for quantum overlap weightings.
"""
from fastapi import APIRouter, HTTPException, status

from src.conf import messages
from src.repository.files import graph_from_model, inequality_from_model, states_from_model, states_to_model
from src.schemas import EvaluateRequest, EvaluationResponse, SearchRequest, ViolationResponse
from src.services.quantum import analytic_witnesses, evaluate_states, search_violation

router = APIRouter(prefix="/quantum", tags=["quantum"])


@router.post("/evaluate", response_model=EvaluationResponse)
async def evaluate(body: EvaluateRequest) -> EvaluationResponse:
    """
    Evaluates an inequality on the overlaps of explicit states or of a named witness.

    :param body: Graph, inequality and states (or ``witness``).
    :type body: EvaluateRequest
    :return: Value and violation.
    :rtype: EvaluationResponse
    """
    if body.states is not None:
        states = states_from_model(body.states)
    elif body.witness is not None:
        witnesses = analytic_witnesses()
        if body.witness not in witnesses:
            raise HTTPException(status_code=status.HTTP_404_NOT_FOUND,
                                detail=messages.UNKNOWN_WITNESS.format(name=body.witness))
        states = witnesses[body.witness]
    else:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=messages.MISSING_STATES)
    result = evaluate_states(inequality_from_model(body.inequality), graph_from_model(body.graph), states)
    return EvaluationResponse(value=float(result.value), violation=float(result.violation))


@router.post("/search", response_model=ViolationResponse,
             description="Restarts run one after another in the server process.")
async def search(body: SearchRequest) -> ViolationResponse:
    """
    Seeded stochastic search for pure states violating an inequality.

    :param body: Graph, inequality, dimension and search parameters.
    :type body: SearchRequest
    :return: The best states found with their value and violation.
    :rtype: ViolationResponse
    """
    result = search_violation(inequality_from_model(body.inequality), graph_from_model(body.graph), body.dim,
                              budget=body.budget, restarts=body.restarts, seed=body.seed, threads=1)
    return ViolationResponse(value=result.value, violation=result.violation, restart=result.restart,
                             evaluations=result.evaluations, states=states_to_model(result.states))
