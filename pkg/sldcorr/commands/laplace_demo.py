import math
from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.schemas.laplace_schema import DerivativeJet
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.laplace_engine import laplace_coefficient
from sldcorr.services.specfun import odd_double_factorial


def gaussian_phase_jet(order: int) -> DerivativeJet:
    """Jet of p(t) = -t^2/2 at t0 = 0."""
    derivs = [0.0] * (order + 1)
    derivs[2] = -1.0
    return DerivativeJet(point=0.0, derivs=tuple(derivs))


def moment_jet(k: int, order: int) -> DerivativeJet:
    """Jet of q(t) = t^(2k) at 0: only the (2k)-th derivative, (2k)!, is non-zero."""
    derivs = [0.0] * (max(order, 2 * k) + 1)
    derivs[2 * k] = float(math.factorial(2 * k))
    return DerivativeJet(point=0.0, derivs=tuple(derivs))


class LaplaceDemoService(BaseCommandService):
    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        c_k for int e^{-x t^2/2} t^{2k} dt = sqrt(2pi) (2k-1)!! x^{-k-1/2}, whose
        expansion has the single coefficient c_k = sqrt(2pi) (2k-1)!! (2k)!.
        """
        rows = []
        phase = gaussian_phase_jet(2 * cfg.order + 2)
        for k in range(cfg.order + 1):
            computed = laplace_coefficient(k, phase, moment_jet(k, 2 * k))
            exact = math.sqrt(2.0 * math.pi) * odd_double_factorial(k) * math.factorial(2 * k)
            rows.append({
                "order": k,
                "amplitude": f"t^{2 * k}",
                "coefficient": computed,
                "exact": exact,
                "abs_error": abs(computed - exact),
            })
        return rows


laplace_demo_service = LaplaceDemoService()

laplace_demo_config = CommandConfig(
    name="laplace-demo",
    help="Laplace coefficients c_N against exact Gaussian moments",
    service=laplace_demo_service,
    arguments=("order",),
)

command = create_command(config=laplace_demo_config)
