import logging
from abc import ABC, abstractmethod
from datetime import datetime, timezone
from typing import Any, Dict, List

from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.run_schema import RunConfig

logger = logging.getLogger(__name__)

Row = Dict[str, Any]


class BaseCommandService(ABC):
    """
    An abstract base class for command services.
    It encapsulates the logic shared by every command:
    1. Checking that the flags the command needs are present.
    2. Building the output rows.
    3. Logging a summary of the run.
    """
    def __init__(self, required: tuple = ()):
        self.required = required

    @abstractmethod
    def _build_rows(self, cfg: RunConfig) -> List[Row]:
        """
        Abstract method to be implemented by child classes.
        Maps a validated RunConfig to the rows of the output table, in their
        final column order.
        """
        pass

    def execute(self, cfg: RunConfig) -> List[Row]:
        """
        Handles the generic part of running a command.
        """
        # 1. Required flags
        for flag in self.required:
            if flag == "n" and cfg.sizes:
                continue
            if getattr(cfg, flag, None) is None:
                raise DomainError(f"command '{cfg.command}' requires --{flag.replace('_', '-')}")

        # 2. Rows
        start_time = datetime.now(timezone.utc)
        rows = self._build_rows(cfg)

        # 3. Summary
        logger.info(f"Command '{cfg.command}' produced {len(rows)} rows in {datetime.now(timezone.utc) - start_time}")
        return rows
