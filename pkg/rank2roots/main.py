import logging
from typing import Optional, Sequence

import click

from rank2roots import settings
from rank2roots.cli.commands import cli

# Configure logging
logging.basicConfig(level=getattr(logging, settings.LOG_LEVEL), format=settings.LOG_FORMAT)
logger = logging.getLogger(__name__)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point; returns the process exit code."""
    logger.debug("Starting %s %s", settings.APP_NAME, settings.VERSION)
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="rank2roots", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    raise SystemExit(run())
