from typing import List

from sldcorr.commands.base import BaseCommandService, Row
from sldcorr.commands.command_config import CommandConfig
from sldcorr.commands.generic_command_factory import create_command
from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.common import Scenario
from sldcorr.schemas.run_schema import RunConfig
from sldcorr.services.bahadur import bahadur_slope, correlation_test, kl_infimum, kl_infimum_numeric


class BahadurService(BaseCommandService):
    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        Exact slope against twice the KL infimum at --rho. With --n and --c the
        test of H0: rho = 0 at the observed coefficient c is reported as well.
        """
        row = {
            "rho": cfg.rho,
            "slope": bahadur_slope(cfg.rho),
            "kl_infimum": kl_infimum(cfg.rho),
            "two_kl_infimum": 2.0 * kl_infimum(cfg.rho),
            "kl_infimum_numeric": kl_infimum_numeric(cfg.rho),
        }
        if cfg.c is not None:
            if cfg.n is None:
                raise DomainError("the test at --c needs --n")
            report = correlation_test(cfg.n, cfg.c, known_mean=Scenario(kind=cfg.scenario).known_mean)
            row.update({
                "n": report.n,
                "statistic": report.statistic,
                "log_p_value_sld": report.log_p_value,
                "log_p_value_exact": report.log_p_value_exact,
                "slope_at_statistic": report.slope_at_statistic,
            })
        return [row]


bahadur_service = BahadurService()

bahadur_config = CommandConfig(
    name="bahadur",
    help="Bahadur exact slope, KL infimum and p-values of the correlation test",
    service=bahadur_service,
    arguments=("rho", "n", "c", "scenario"),
)

command = create_command(config=bahadur_config)
