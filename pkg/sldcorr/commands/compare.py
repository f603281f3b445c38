import math
from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.schemas.sld_schema import TailEstimate
from sldcorr.services.densities_oracle import tail_exact
from sldcorr.services.montecarlo import tail_mc
from sldcorr.services.sld_core import tail_sld


class CompareService(BaseCommandService):
    def __init__(self):
        super().__init__(required=("n", "c"))

    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        Sharp approximation against the quadrature oracle (and Monte Carlo when
        --samples > 0) for each sample size. n * |ratio - 1| should settle as n grows.
        """
        scenario = cfg.scenario_model
        rows = []
        for n in cfg.sizes:
            log_sld = tail_sld(scenario, n, cfg.c).log_prob
            log_exact = TailEstimate.from_quadrature(tail_exact(scenario, n, cfg.c)).log_prob
            ratio = math.exp(log_sld - log_exact)

            row = {
                "n": n,
                "log_sld": log_sld,
                "log_exact": log_exact,
                "sld": math.exp(log_sld),
                "exact": math.exp(log_exact),
            }
            if cfg.samples > 0:
                mc = TailEstimate.from_monte_carlo(
                    tail_mc(scenario, n, cfg.c, cfg.samples, seed=cfg.seed, partitions=cfg.threads)
                )
                row["mc"] = math.exp(mc.log_prob)
                row["mc_std_err"] = mc.error
            row["ratio"] = ratio
            row["scaled_error"] = n * abs(ratio - 1.0)
            rows.append(row)
        return rows


compare_service = CompareService()

compare_config = CommandConfig(
    name="compare",
    help="sharp approximation vs exact (and Monte Carlo) tail probabilities",
    service=compare_service,
    arguments=("scenario", "n", "n_list", "c", "rho", "samples", "seed", "threads"),
)

command = create_command(config=compare_config)
