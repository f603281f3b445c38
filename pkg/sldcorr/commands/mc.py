from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.montecarlo import tail_mc


class McService(BaseCommandService):
    def __init__(self):
        super().__init__(required=("n", "c"))

    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        if cfg.samples < 1:
            raise DomainError("command 'mc' requires --samples >= 1")
        scenario = cfg.scenario_model
        rows = []
        for n in cfg.sizes:
            estimate = tail_mc(scenario, n, cfg.c, cfg.samples, seed=cfg.seed, partitions=cfg.threads)
            rows.append({
                "scenario": scenario.label,
                "n": n,
                "c": cfg.c,
                "samples": estimate.samples,
                "seed": estimate.seed,
                "partitions": estimate.partitions,
                "p_hat": estimate.p_hat,
                "std_err": estimate.std_err,
                "log_p_hat": estimate.log_p_hat,
            })
        return rows


mc_service = McService()

mc_config = CommandConfig(
    name="mc",
    help="seeded Monte Carlo estimate of P(r_n >= c)",
    service=mc_service,
    arguments=("scenario", "n", "n_list", "c", "rho", "samples", "seed", "threads"),
)

command = create_command(config=mc_config)
