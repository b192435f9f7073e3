"""Lie algebra deformations, BRST operators and heat-kernel invariants."""

import logging
import sys

from .cli import run

_LOGGER = logging.getLogger(__name__)


def main() -> None:
    """Lie BRST entry."""
    sys.exit(run())


if __name__ == "__main__":
    main()
