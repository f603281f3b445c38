import math
from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.sld_core import saddle, tail_sld


class ApproxService(BaseCommandService):
    def __init__(self):
        super().__init__(required=("n", "c"))

    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        One row per sample size with the sharp approximation and its parts.
        """
        scenario = cfg.scenario_model
        sp = saddle(scenario, cfg.c)
        rows = []
        for n in cfg.sizes:
            estimate = tail_sld(scenario, n, cfg.c)
            rows.append({
                "scenario": scenario.label,
                "n": n,
                "c": cfg.c,
                "log_prob": estimate.log_prob,
                "prob": math.exp(estimate.log_prob),
                "leading_exponent": estimate.leading_exponent,
                "log_prefactor": estimate.log_prefactor,
                "lambda_c": sp.lambda_c,
                "sigma_sq": sp.sigma_sq,
                "rate": sp.rate,
            })
        return rows


approx_service = ApproxService()

approx_config = CommandConfig(
    name="approx",
    help="sharp large-deviation approximation of P(r_n >= c)",
    service=approx_service,
    arguments=("scenario", "n", "n_list", "c", "rho"),
)

command = create_command(config=approx_config)
