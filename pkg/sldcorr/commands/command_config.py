from dataclasses import dataclass
from typing import Optional, Tuple

from sldcorr.commands.base import BaseCommandService


@dataclass
class CommandConfig:
    """
    A configuration class to hold the specific details for a generic CLI command.
    """
    name: str

    # One-line help shown by `sld-correl --help`
    help: str

    # The specific service instance that builds the output rows
    service: BaseCommandService

    # Flags the command accepts besides --format/--out (e.g. ("scenario", "n", "c"))
    arguments: Tuple[str, ...]

    # Longer text for `sld-correl <command> --help`
    description: Optional[str] = None

    def __post_init__(self):
        """
        Falls back to the one-line help when no description is given.
        """
        if self.description is None:
            self.description = self.help
