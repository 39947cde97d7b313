import sys

from src.cli.commands import run
from src.core.config import get_settings
from src.core.logging import configure_logging


def app_entry() -> None:
    ## Initialize settings and configure logging
    settings = get_settings()
    configure_logging(settings)
    sys.exit(run(sys.argv[1:], settings))


if __name__ == "__main__":
    app_entry()
