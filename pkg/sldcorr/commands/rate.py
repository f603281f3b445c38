from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.core.config import settings
from sldcorr.schemas.common import Scenario, ScenarioKind
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.sld_core import open_grid, rate_function, rate_second_derivative


class RateService(BaseCommandService):
    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        I_rho and I_rho'' on an open grid of (-1, 1) that contains y = rho,
        the data behind the convexity plots on either side of rho_0.
        """
        scenario = Scenario(kind=ScenarioKind.GAUSSIAN_CENTERED, rho=cfg.rho)
        return [
            {
                "y": float(y),
                "rate": rate_function(scenario, float(y)),
                "second_derivative": rate_second_derivative(cfg.rho, float(y)),
            }
            for y in open_grid(settings.GRID_POINTS, include=(cfg.rho,))
        ]


rate_service = RateService()

rate_config = CommandConfig(
    name="rate",
    help="rate function I_rho and its second derivative on a grid",
    service=rate_service,
    arguments=("rho",),
)

command = create_command(config=rate_config)
