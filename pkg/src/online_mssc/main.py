import logging
import sys

from .harness.cli import run_cli
from .settings import get_settings

logger = logging.getLogger(__name__)


def main():
    """Main entry point for the online-mssc command."""
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
