from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, Optional

import click
from pydantic import ValidationError

from rank2roots import __version__
from rank2roots.cli import service
from rank2roots.cli.errors import handle_errors
from rank2roots.cli.schemas import dumps, parse_sequence
from rank2roots.cli.service import SchemeService
from rank2roots.covering.service import detect_quotients as find_quotients
from rank2roots.decide.models import Decision
from rank2roots.decide.service import decide, extremal_scheme, realize_root_system, verify_certificate
from rank2roots.roots.service import build_root_system
from rank2roots.scheme.service import validate
from rank2roots.shared.config import get_settings
from rank2roots.shared.exceptions import InputValidationError

logger = logging.getLogger(__name__)


def scheme_options(command: Callable[..., Any]) -> Callable[..., Any]:
    command = click.option(
        "--input", "input_path", type=click.Path(exists=True, dir_okay=False), help="Scheme document (JSON)."
    )(command)
    command = click.option("--chain", help="Chain spine, e.g. 1,2,1.")(command)
    command = click.option("--cycle", help="Characteristic sequence, e.g. 5,1,2,2.")(command)
    return command


def json_option(command: Callable[..., Any]) -> Callable[..., Any]:
    return click.option("--json", "as_json", is_flag=True, help="Emit one JSON document.")(command)


def get_scheme_service() -> SchemeService:
    return SchemeService(get_settings())


def emit(payload: Any, text: str, as_json: bool) -> None:
    click.echo(dumps(payload, get_settings().JSON_INDENT) if as_json else text)


@click.group()
@click.version_option(__version__, prog_name="rank2roots")
def cli() -> None:
    """Finite root systems of connected rank-two Cartan schemes."""


@cli.command(name="decide")
@scheme_options
@click.option("--trace", is_flag=True, help="Print the reduction certificate.")
@click.option("--strict", is_flag=True, help="Exit with 1 when the verdict is not finite.")
@click.option("--verify-cert", type=click.Path(exists=True, dir_okay=False), help="Replay a decision document.")
@click.option("--batch", type=click.Path(exists=True, dir_okay=False), help="One scheme per line.")
@json_option
@click.pass_context
@handle_errors
def decide_command(
    ctx: click.Context,
    cycle: Optional[str],
    chain: Optional[str],
    input_path: Optional[str],
    trace: bool,
    strict: bool,
    verify_cert: Optional[str],
    batch: Optional[str],
    as_json: bool,
) -> None:
    """Decide whether a scheme admits a finite root system."""
    scheme_service = get_scheme_service()
    if batch is not None:
        results = scheme_service.run_batch(batch)
        lines = []
        for result in results:
            if "error" in result:
                lines.append(f"{result['input']}: error [{result['error']['error']}] {result['error']['message']}")
            else:
                lines.append(f"{result['input']}: {result['decision']['verdict']}")
        emit({"results": results}, "\n".join(lines), as_json)
        if any("error" in r for r in results):
            ctx.exit(2)
        if strict and any(not r["decision"]["finite"] for r in results):
            ctx.exit(1)
        return

    if verify_cert is not None:
        try:
            decision = Decision.model_validate_json(Path(verify_cert).read_text())
        except ValidationError as e:
            raise InputValidationError(
                "Invalid decision document", details={"errors": [err["msg"] for err in e.errors()]}
            )
        given = any(source is not None for source in (cycle, chain, input_path))
        scheme = scheme_service.load_scheme(cycle, chain, input_path) if given else decision.scheme
        verify_certificate(scheme, decision)
        emit(
            {"valid": True, "scheme": scheme.model_dump(), "verdict": decision.verdict},
            f"certificate valid: {scheme} is {decision.verdict}",
            as_json,
        )
        return

    decision = decide(scheme_service.load_scheme(cycle, chain, input_path))
    emit(service.decision_payload(decision), service.format_decision(decision, trace), as_json)
    if strict and not decision.finite:
        ctx.exit(1)


@cli.command(name="enumerate")
@click.option("--length", "length", type=int, required=True, help="Sequence length n >= 3.")
@click.option("--bruteforce", is_flag=True, help="Filter all candidates instead of expanding.")
@json_option
@handle_errors
def enumerate_command(length: int, bruteforce: bool, as_json: bool) -> None:
    """List the dihedral classes of A+ sequences of one length."""
    classes = get_scheme_service().enumerate_classes(length, bruteforce)
    emit(
        {"length": length, "count": len(classes), "classes": [list(s) for s in classes]},
        "\n".join(service.fmt(s) for s in classes),
        as_json,
    )


@cli.command(name="roots")
@scheme_options
@click.option("--aplus", help="Build the simply connected system of an A+ sequence, e.g. 1,2,1,2.")
@json_option
@handle_errors
def roots_command(
    cycle: Optional[str],
    chain: Optional[str],
    input_path: Optional[str],
    aplus: Optional[str],
    as_json: bool,
) -> None:
    """Construct and verify a finite root system."""
    if aplus is not None:
        if any(source is not None for source in (cycle, chain, input_path)):
            raise InputValidationError("--aplus cannot be combined with a scheme")
        rs = build_root_system(parse_sequence(aplus))
    else:
        rs = realize_root_system(get_scheme_service().load_scheme(cycle, chain, input_path))
    emit(service.roots_payload(rs), service.format_roots(rs), as_json)


@cli.command(name="cover")
@scheme_options
@click.option("--k", "k", type=int, help="k-fold covering of a cycle.")
@click.option("--chain-double", is_flag=True, help="Double covering of a chain.")
@click.option("--universal", is_flag=True, help="Universal covering of a cycle.")
@click.option("--detect-quotients", is_flag=True, help="Chain and half quotients of a cycle.")
@json_option
@handle_errors
def cover_command(
    cycle: Optional[str],
    chain: Optional[str],
    input_path: Optional[str],
    k: Optional[int],
    chain_double: bool,
    universal: bool,
    detect_quotients: bool,
    as_json: bool,
) -> None:
    """Build coverings and quotients."""
    modes = [k is not None, chain_double, universal, detect_quotients]
    if sum(modes) != 1:
        raise InputValidationError("Give exactly one of --k, --chain-double, --universal or --detect-quotients")
    scheme_service = get_scheme_service()
    scheme = scheme_service.load_scheme(cycle, chain, input_path)
    if detect_quotients:
        report = find_quotients(scheme)
        emit(report.model_dump(mode="json"), service.format_quotients(report), as_json)
        return
    rel = scheme_service.build_covering(scheme, k, chain_double, universal)
    emit(service.covering_payload(rel), service.format_covering(rel), as_json)


@cli.command(name="validate")
@scheme_options
@json_option
@click.pass_context
@handle_errors
def validate_command(
    ctx: click.Context,
    cycle: Optional[str],
    chain: Optional[str],
    input_path: Optional[str],
    as_json: bool,
) -> None:
    """Check the Cartan scheme axioms."""
    report = validate(get_scheme_service().load_scheme(cycle, chain, input_path))
    payload = report.model_dump(mode="json")
    payload["valid"] = report.valid
    emit(payload, service.format_validation(report), as_json)
    if not report.valid:
        ctx.exit(2)


@cli.command(name="extremal")
@click.option("--n", "n", type=int, required=True, help="Half the number of cycle objects.")
@json_option
@handle_errors
def extremal_command(n: int, as_json: bool) -> None:
    """Schemes whose largest Cartan entry 2n+1 meets the bound."""
    pair = extremal_scheme(n)
    cycle_decision, chain_decision = decide(pair.cycle), decide(pair.chain)
    payload = pair.model_dump(mode="json")
    payload["cycle_decision"] = service.decision_payload(cycle_decision)
    payload["chain_decision"] = service.decision_payload(chain_decision)
    text = "\n".join(
        [
            f"cycle {pair.cycle}: {cycle_decision.verdict}",
            f"chain {pair.chain}: {chain_decision.verdict}",
            f"largest entry {2 * n + 1}" + (" (base case)" if pair.base_case else ""),
        ]
    )
    emit(payload, text, as_json)


@cli.command(name="stats")
@scheme_options
@click.option("--cap", type=int, help="State budget of the groupoid search (default 24|A|+1).")
@json_option
@handle_errors
def stats_command(
    cycle: Optional[str],
    chain: Optional[str],
    input_path: Optional[str],
    cap: Optional[int],
    as_json: bool,
) -> None:
    """Invariants h, q, |R+| and a census of the Weyl groupoid."""
    scheme_service = get_scheme_service()
    scheme = scheme_service.load_scheme(cycle, chain, input_path)
    decision, report = scheme_service.census(scheme, cap)
    payload = {
        "scheme": scheme.model_dump(),
        "verdict": decision.verdict,
        "stats": decision.stats.model_dump() if decision.stats else None,
        "groupoid": report.model_dump(),
    }
    lines = [service.format_decision(decision, trace=False)]
    if report.budget_exceeded:
        lines.append(f"  groupoid: budget of {report.cap} states exceeded")
    else:
        lines.append(
            f"  groupoid: {report.total_states} morphisms from a0, |End(a0)|={report.end_size}"
            f" ({report.end_even} even, {report.end_odd} odd), C3 {'holds' if report.c3_holds else 'fails'}"
        )
    emit(payload, "\n".join(lines), as_json)
