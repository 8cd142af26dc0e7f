from __future__ import annotations

import functools
import logging
from typing import Any, Callable

import click

from rank2roots.cli.schemas import dumps
from rank2roots.shared.config import get_settings
from rank2roots.shared.exceptions import Rank2Error

logger = logging.getLogger(__name__)


def render_error(exc: Exception, as_json: bool) -> int:
    """
    Print ``exc`` on stderr and return the process exit code.
    Library errors carry their own code; anything else is an internal failure.
    """
    if isinstance(exc, Rank2Error):
        error_response = exc.to_dict()
        exit_code = exc.exit_code
    else:
        logger.exception("Unexpected error occurred", extra={"error": str(exc)})
        error_response = {
            "error": "INTERNAL_ERROR",
            "message": str(exc) or "An unexpected error occurred",
            "exit_code": 3,
        }
        exit_code = 3

    if as_json:
        click.echo(dumps(error_response, get_settings().JSON_INDENT), err=True)
    else:
        click.echo(f"error [{error_response['error']}]: {error_response['message']}", err=True)
        for key, value in sorted(error_response.get("details", {}).items()):
            click.echo(f"  {key}: {value}", err=True)
    return exit_code


def handle_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """Turn exceptions raised by a command into a rendered diagnostic and an exit code."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException):
            raise
        except Exception as exc:
            raise click.exceptions.Exit(render_error(exc, kwargs.get("as_json", False)))

    return wrapper
