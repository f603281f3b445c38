import math
from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.schemas.sld_schema import TailEstimate
from sldcorr.services.densities_oracle import tail_exact


class ExactService(BaseCommandService):
    def __init__(self):
        super().__init__(required=("n", "c"))

    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        scenario = cfg.scenario_model
        rows = []
        for n in cfg.sizes:
            result = tail_exact(scenario, n, cfg.c)
            estimate = TailEstimate.from_quadrature(result)
            rows.append({
                "scenario": scenario.label,
                "n": n,
                "c": cfg.c,
                "log_prob": estimate.log_prob,
                "prob": math.exp(estimate.log_prob),
                "abs_error_estimate": estimate.error,
                "subdivisions": result.subdivisions,
            })
        return rows


exact_service = ExactService()

exact_config = CommandConfig(
    name="exact",
    help="P(r_n >= c) by quadrature of the exact density",
    service=exact_service,
    arguments=("scenario", "n", "n_list", "c", "rho"),
)

command = create_command(config=exact_config)
