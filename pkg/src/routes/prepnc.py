"""
Routes for preparation noncontextual weightings.
"""
from fastapi import APIRouter

from src.repository.files import distributions_from_model, inequality_from_model
from src.schemas import ComplianceResponse, PrepNCRequest
from src.services.event_graph import cycle_graph
from src.services.prep_nc import check_cycle_compliance, evaluate_on_confusability

router = APIRouter(prefix="/prepnc", tags=["prepnc"])


@router.post("/check", response_model=ComplianceResponse)
async def check(body: PrepNCRequest) -> ComplianceResponse:
    """
    Places the distributions around a cycle and evaluates the cycle inequalities
    on their confusability weighting. Extra inequalities over the cycle edges are
    evaluated too, without a bound.

    :param body: The distributions and optional extra inequalities.
    :type body: PrepNCRequest
    :return: The report.
    :rtype: ComplianceResponse
    """
    distributions = distributions_from_model(body.distributions)
    n = len(distributions.mus)
    report = check_cycle_compliance(distributions, n)
    extra = evaluate_on_confusability(distributions, cycle_graph(n),
                                      [inequality_from_model(i) for i in body.inequalities])
    return ComplianceResponse(n=n, bound=report.bound, values=[str(v) for v in report.values],
                              compliant=report.compliant, extra_values=[str(e.value) for e in extra])
