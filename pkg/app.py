import logging

from partdim.config import configure_logging
from partdim.routes.cli import cli

# Set up logging
configure_logging()
logger = logging.getLogger(__name__)


def main() -> None:
    logger.debug("Starting partdim")
    cli(prog_name="partdim")


if __name__ == "__main__":
    main()
