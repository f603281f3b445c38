from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.densities_oracle import mgf_exact
from sldcorr.services.sld_core import mgf_laplace, ncgf_expansion


class NcgfService(BaseCommandService):
    def __init__(self):
        super().__init__(required=("n", "lam"))

    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        Exact L_n(lambda) against limit + correction/n and the Laplace value of
        order --order; n * (exact - limit) should approach the correction.
        """
        scenario = cfg.scenario_model
        expansion = ncgf_expansion(scenario, cfg.lam)
        rows = []
        for n in cfg.sizes:
            exact = mgf_exact(scenario, n, cfg.lam)
            rows.append({
                "n": n,
                "lam": cfg.lam,
                "exact": exact,
                "limit": expansion.limit,
                "correction": expansion.correction,
                "first_order": expansion.at(n),
                "laplace": mgf_laplace(scenario, n, cfg.lam, cfg.order),
                "scaled_gap": n * (exact - expansion.limit),
            })
        return rows


ncgf_service = NcgfService()

ncgf_config = CommandConfig(
    name="ncgf",
    help="normalized cumulant generating function: exact vs expansion",
    service=ncgf_service,
    arguments=("scenario", "n", "n_list", "rho", "lam", "order"),
)

command = create_command(config=ncgf_config)
