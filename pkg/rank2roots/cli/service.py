"""Glue between the command line and the library: loading schemes, batch runs and rendering."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

from rank2roots.aplus.models import Seq
from rank2roots.aplus.service import enumerate_aplus
from rank2roots.cli.schemas import SchemeDocument, parse_batch_line, parse_document, parse_sequence
from rank2roots.covering.models import CoveringRelation, QuotientReport
from rank2roots.covering.service import chain_double_cover, check_covering, k_fold_cover, universal_cover
from rank2roots.decide.models import (
    AllGeTwoStep,
    BaseFourStep,
    ChainToCycleStep,
    ContractStep,
    Decision,
    NonCSDoubleStep,
    SmallCaseOracleStep,
    TripleOnesStep,
    ZeroCaseStep,
)
from rank2roots.decide.service import decide
from rank2roots.oracle.models import BFSReport
from rank2roots.oracle.service import enumerate_aplus_bruteforce, groupoid_bfs
from rank2roots.roots.models import RootSystem2
from rank2roots.roots.service import positive_root_count, verify_axioms
from rank2roots.scheme.models import CartanScheme2, ValidationReport
from rank2roots.shared.config import Settings
from rank2roots.shared.exceptions import InputValidationError, Rank2Error

logger = logging.getLogger(__name__)


def fmt(seq: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in seq) + ")"


def decision_payload(decision: Decision) -> dict[str, Any]:
    payload = decision.model_dump(mode="json")
    payload["verdict"] = decision.verdict
    return payload


def describe_step(step: Any) -> str:
    if isinstance(step, ChainToCycleStep):
        return f"chain_to_cycle: {step.before} -> {step.after}"
    if isinstance(step, NonCSDoubleStep):
        return f"non_cs_double: {fmt(step.before.sequence)} -> {fmt(step.after.sequence)}"
    if isinstance(step, ContractStep):
        return f"contract at {step.position}: {fmt(step.before)}^2 -> {fmt(step.after)}^2"
    if isinstance(step, ZeroCaseStep):
        return f"zero_case: |A|={step.objects}, all_zero={step.all_zero}, walk_closes={step.walk_closes}"
    if isinstance(step, AllGeTwoStep):
        return f"all_ge_two: {fmt(step.half)}^2 has every entry >= 2"
    if isinstance(step, TripleOnesStep):
        return f"triple_ones: {fmt(step.half)}^2"
    if isinstance(step, BaseFourStep):
        return f"base_four: {fmt(step.half)}^2 with c1={step.c1}"
    if isinstance(step, SmallCaseOracleStep):
        return f"small_case_oracle: {fmt(step.half)}^2, h={step.h if step.h is not None else 'infinite'}"
    return str(step)


def reduction_chain(decision: Decision) -> list[str]:
    """Half sequences visited by the reduction, written as squares."""
    chain: list[str] = []
    for step in decision.certificate:
        if isinstance(step, ContractStep):
            if not chain:
                chain.append(f"{fmt(step.before)}^2")
            chain.append(f"{fmt(step.after)}^2")
        elif not chain and hasattr(step, "half"):
            chain.append(f"{fmt(step.half)}^2")
    return chain


def format_decision(decision: Decision, trace: bool) -> str:
    lines = [f"{decision.scheme}: {decision.verdict}" + ("" if decision.irreducible else " (reducible)")]
    if decision.stats is not None:
        s = decision.stats
        lines.append(f"  h={s.h} q={s.q} positive_roots={s.positive_roots} m={s.m}")
    if trace:
        lines.append("  certificate:")
        lines.extend(f"    {k + 1}. {describe_step(step)}" for k, step in enumerate(decision.certificate))
        chain = reduction_chain(decision)
        if chain:
            lines.append("  reduction: " + " -> ".join(chain))
    return "\n".join(lines)


def decide_line(line: str) -> dict[str, Any]:
    """Decide one batch line; errors are reported in the result instead of raised."""
    try:
        decision = decide(parse_batch_line(line).to_scheme())
        return {"input": line.strip(), "decision": decision_payload(decision)}
    except Rank2Error as e:
        return {"input": line.strip(), "error": e.to_dict()}


class SchemeService:
    """What the commands do beyond rendering, with the limits taken from settings."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.batch_workers = settings.BATCH_WORKERS
        self.enumerate_max_length = settings.ENUMERATE_MAX_LENGTH

    def load_scheme(self, cycle: Optional[str], chain: Optional[str], input_path: Optional[str]) -> CartanScheme2:
        """Scheme from exactly one of --cycle, --chain or --input."""
        given = [source for source in (cycle, chain, input_path) if source is not None]
        if len(given) != 1:
            raise InputValidationError("Give exactly one of --cycle, --chain or --input")
        if cycle is not None:
            document = SchemeDocument(kind="cycle", char_seq=parse_sequence(cycle))
        elif chain is not None:
            document = SchemeDocument(kind="chain", spine=parse_sequence(chain))
        else:
            document = parse_document(Path(input_path).read_text())
        return document.to_scheme()

    def run_batch(self, path: str) -> list[dict[str, Any]]:
        """Decide every non-empty line of ``path``, results in input order."""
        lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
        workers = self.batch_workers
        logger.info("Deciding %d batch entries with %d workers", len(lines), workers)
        if workers <= 1 or len(lines) <= 1:
            return [decide_line(line) for line in lines]
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(decide_line, lines))

    def enumerate_classes(self, length: int, bruteforce: bool) -> list[Seq]:
        if length > self.enumerate_max_length:
            raise InputValidationError(
                f"Length {length} exceeds the configured maximum {self.enumerate_max_length}",
                details={"length": length},
            )
        return enumerate_aplus_bruteforce(length) if bruteforce else enumerate_aplus(length)

    def build_covering(
        self, scheme: CartanScheme2, k: Optional[int], chain_double: bool, universal: bool
    ) -> CoveringRelation:
        if k is not None:
            return k_fold_cover(scheme, k)
        if chain_double:
            return chain_double_cover(scheme)
        if universal:
            return universal_cover(scheme)
        raise InputValidationError("No covering requested")

    def census(self, scheme: CartanScheme2, cap: Optional[int] = None) -> tuple[Decision, BFSReport]:
        """Decision and groupoid search, the search budget defaulting to the configured cap."""
        decision = decide(scheme)
        return decision, groupoid_bfs(scheme, cap if cap is not None else self.settings.bfs_cap(scheme.objects))


def roots_payload(rs: RootSystem2) -> dict[str, Any]:
    report = verify_axioms(rs)
    return {
        "scheme": rs.scheme.model_dump(),
        "objects": rs.scheme.objects,
        "positive_root_count": positive_root_count(rs),
        "axioms_valid": report.valid,
        "violations": [v.model_dump() for v in report.violations],
        "roots": [
            {"object": a, "positive": [list(r) for r in rs.positive_roots(a)], "all": [list(r) for r in rs.roots[a]]}
            for a in range(rs.scheme.objects)
        ],
    }


def format_roots(rs: RootSystem2) -> str:
    payload = roots_payload(rs)
    lines = [
        f"{rs.scheme}: {payload['objects']} objects, {payload['positive_root_count']} positive roots each"
        + ("" if payload["axioms_valid"] else " (axioms violated)")
    ]
    for entry in payload["roots"]:
        roots = " ".join(fmt(r) for r in entry["positive"])
        lines.append(f"  a{entry['object']}: {roots}")
    return "\n".join(lines)


def covering_payload(rel: CoveringRelation) -> dict[str, Any]:
    payload = rel.model_dump(mode="json")
    payload["violations"] = check_covering(rel)
    return payload


def format_covering(rel: CoveringRelation) -> str:
    problems = check_covering(rel)
    lines = [
        f"{rel.kind.value} covering of degree {rel.fold}: {rel.cover} -> {rel.base}",
        "  pi: " + " ".join(f"{x}->{image}" for x, image in enumerate(rel.object_map)),
    ]
    lines.extend(f"  violation: {p}" for p in problems)
    return "\n".join(lines)


def format_quotients(report: QuotientReport) -> str:
    lines = [f"{report.scheme}:"]
    if not report.chain_quotients:
        lines.append("  no chain quotient")
    for q in report.chain_quotients:
        lines.append(f"  chain quotient at (label {q.label}, a{q.object}): spine {fmt(q.spine)}")
    if report.half_quotient is not None:
        lines.append(f"  half quotient: {report.half_quotient}")
    else:
        lines.append("  no half quotient")
    return "\n".join(lines)


def format_validation(report: ValidationReport) -> str:
    lines = [f"{report.scheme}: {'valid' if report.valid else 'invalid'}"]
    for v in report.violations:
        where = "" if v.object is None else f" at a{v.object}"
        lines.append(f"  violation ({v.axiom}){where}: {v.message}")
    for v in report.obstructions:
        where = "" if v.object is None else f" at a{v.object}"
        lines.append(f"  obstruction ({v.axiom}){where}: {v.message}")
    return "\n".join(lines)
