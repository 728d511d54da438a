"""Verification of the bundled reference tables against the engine.

For every fixture row the transcribed source value is compared with the
engine's recomputed value.  Rows that disagree are accepted only when

* a corrected closed form is on file and equals the engine value,
* the correction is listed in the reviewed errata document shipped with
  the package (``data/errata.md``), and
* the numeric oracle, run on random exact bindings that distinguish the
  two forms, sides with the corrected form at every sample and with the
  source form at none (verdict ``"paper typo"``).

Classical fixtures additionally check that specialising the symbolic
block entry ``a`` to ``+1`` and ``-1`` reproduces the dedicated
sign-branch pipelines, and the random bindings alternate the sign of the
block entry, so both branches are exercised for every fixture.

Reports are line-oriented (records mode) and deterministic: fixtures are
verified in parallel but assembled in fixture-id order, and all random
sampling is seeded per fixture and row.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import islice
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .errors import Inconclusive, SupertimeError
from .fixtures import (
    Binding,
    Fixture,
    FixtureRow,
    binding_stream,
    fixtures_for_suite,
)
from .models import cpi_pipeline
from .oracle import LedgerEntry, discrepancy_ledger, numeric_eval, numeric_pipeline
from .parsing import super_to_text

__all__ = [
    "EXIT_OK",
    "EXIT_MISMATCH",
    "EXIT_ERROR",
    "RowResult",
    "FixtureResult",
    "VerifyReport",
    "verify_suite",
    "ledgered_rows",
]

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2

_SAMPLES_PER_ROW = 6
_MAX_DRAWS = 400


@dataclass(frozen=True)
class RowResult:
    """Outcome for one table slot."""

    label: str
    status: str  # "match" | "corrected" | "mismatch" | "error"
    note: str = ""
    ledger: Optional[LedgerEntry] = None
    printed: str = ""
    engine: str = ""


@dataclass(frozen=True)
class FixtureResult:
    """Outcome for one fixture (one source table)."""

    fid: str
    suite: str
    title: str
    status: str  # "ok" | "corrected" | "mismatch" | "error"
    rows: Tuple[RowResult, ...]
    zero_claim: bool
    zero_violations: Tuple[str, ...]
    branch_ok: Optional[bool]  # a -> +-1 specialisation check; None for quantum fixtures
    notes: Tuple[str, ...] = ()
    error: str = ""


@dataclass(frozen=True)
class VerifyReport:
    """Deterministic records-mode report over a suite of fixtures."""

    suite: str
    results: Tuple[FixtureResult, ...]

    @property
    def exit_code(self) -> int:
        statuses = {result.status for result in self.results}
        if "error" in statuses:
            return EXIT_ERROR
        if "mismatch" in statuses:
            return EXIT_MISMATCH
        return EXIT_OK

    def lines(self) -> Tuple[str, ...]:
        out: List[str] = [f"suite={self.suite}"]
        for result in self.results:
            out.append(
                f"fixture={result.fid} status={result.status} title={result.title!r}"
            )
            if result.error:
                out.append(f"  error={result.error}")
            for row in result.rows:
                out.append(f"  row={result.fid}/{row.label} status={row.status}")
                if row.status != "match":
                    if row.printed:
                        out.append(f"    printed={row.printed}")
                    if row.engine:
                        out.append(f"    engine={row.engine}")
                    if row.note:
                        out.append(f"    note={row.note}")
                    if row.ledger is not None:
                        for line in row.ledger.lines():
                            out.append(f"    ledger.{line}")
            if result.zero_claim:
                if result.zero_violations:
                    joined = ", ".join(result.zero_violations)
                    out.append(f"  zero-claim=violated slots={joined}")
                else:
                    out.append("  zero-claim=ok")
            if result.branch_ok is not None:
                out.append(f"  sign-branches={'ok' if result.branch_ok else 'mismatch'}")
        counts = {
            "ok": 0, "corrected": 0, "mismatch": 0, "error": 0,
        }
        for result in self.results:
            counts[result.status] += 1
        out.append(
            "summary: "
            + " ".join(f"{name}={counts[name]}" for name in ("ok", "corrected", "mismatch", "error"))
            + f" exit={self.exit_code}"
        )
        return tuple(out)

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


# --------------------------------------------------------------------------
# the reviewed errata document
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def ledgered_rows() -> FrozenSet[Tuple[str, str]]:
    """(fixture id, row label) pairs listed in the shipped errata document.

    A corrected row counts as a confirmed misprint only when it appears
    here; an unlisted correction is reported as an ordinary mismatch.
    """
    doc = resources.files("supertime").joinpath("data/errata.md").read_text("utf-8")
    entries = set()
    for line in doc.splitlines():
        if line.startswith("### "):
            parts = line[4:].split(maxsplit=1)
            if len(parts) == 2:
                entries.add((parts[0], parts[1].strip()))
    return frozenset(entries)


# --------------------------------------------------------------------------
# oracle plumbing
# --------------------------------------------------------------------------


class _OracleCache:
    """Memoises one numeric pipeline run per distinct binding."""

    def __init__(self, fixture: Fixture) -> None:
        self._fixture = fixture
        self._runs: Dict[Tuple[Tuple[str, Fraction], ...], object] = {}

    def pipeline(self, binding: Binding):
        key = tuple(sorted(binding.items()))
        run = self._runs.get(key)
        if run is None:
            run = numeric_pipeline(
                binding,
                model=self._fixture.model,
                time_dependent=self._fixture.time_dependent,
            )
            self._runs[key] = run
        return run

    def slot_fn(self, row: FixtureRow) -> Callable[[Binding], object]:
        def fn(binding: Binding):
            run = self.pipeline(binding)
            if row.kind == "christoffel":
                i, j, k = row.indices
                return run.christoffels[i][j][k]
            if row.kind == "ricci":
                i, j = row.indices
                return run.ricci[i][j]
            return run.scalar

        return fn


def _discriminating_samples(
    fixture: Fixture, row: FixtureRow, count: int, seed: int
) -> List[Binding]:
    """Random bindings at which the printed and corrected forms differ."""
    samples: List[Binding] = []
    for binding in islice(binding_stream(fixture, seed=seed), _MAX_DRAWS):
        if numeric_eval(row.printed, binding) != numeric_eval(row.corrected, binding):
            samples.append(binding)
            if len(samples) == count:
                return samples
    raise Inconclusive(
        f"{fixture.fid} {row.label}: no {count} bindings separate printed from corrected"
    )


# --------------------------------------------------------------------------
# per-row and per-fixture verification
# --------------------------------------------------------------------------


def _verify_row(
    fixture: Fixture, row: FixtureRow, cache: _OracleCache, samples_per_row: int
) -> RowResult:
    if row.corrected is None:
        if row.printed == row.engine:
            return RowResult(label=row.label, status="match", note=row.note)
        return RowResult(
            label=row.label, status="mismatch",
            note=row.note or "source row disagrees with the engine and no correction is on file",
            printed=super_to_text(row.printed), engine=super_to_text(row.engine),
        )

    engine_text = super_to_text(row.engine)
    if row.engine != row.corrected:
        return RowResult(
            label=row.label, status="mismatch",
            note="corrected form on file no longer matches the engine",
            printed="-" if row.printed is None else super_to_text(row.printed),
            engine=engine_text,
        )
    if (fixture.fid, row.label) not in ledgered_rows():
        return RowResult(
            label=row.label, status="mismatch",
            note="correction is not listed in the errata document",
            printed="-" if row.printed is None else super_to_text(row.printed),
            engine=engine_text,
        )

    seed = zlib.crc32(f"{fixture.fid}:{row.label}".encode()) & 0xFFFF
    if row.printed is None:
        # No literal claim to arbitrate; confirm the engine value one-sidedly.
        bindings = list(islice(binding_stream(fixture, seed=seed), samples_per_row))
        slot = cache.slot_fn(row)
        agreed = all(numeric_eval(row.engine, b) == slot(b) for b in bindings)
        entry = LedgerEntry(
            fixture=f"{fixture.fid} {row.label}",
            verdict="engine verified" if agreed else "inconclusive",
            samples=(),
            note="no literal source claim; oracle checked the engine value at "
                 f"{len(bindings)} bindings",
        )
        status = "corrected" if agreed else "mismatch"
        return RowResult(
            label=row.label, status=status, note=row.note, ledger=entry,
            printed="-", engine=engine_text,
        )

    bindings = _discriminating_samples(fixture, row, samples_per_row, seed)
    entry = discrepancy_ledger(
        fixture=f"{fixture.fid} {row.label}",
        printed=row.printed,
        computed=row.corrected,
        bindings=bindings,
        oracle_fn=cache.slot_fn(row),
        note=row.note,
    )
    status = "corrected" if entry.verdict == "paper typo" else "mismatch"
    return RowResult(
        label=row.label, status=status, note=row.note, ledger=entry,
        printed=super_to_text(row.printed), engine=engine_text,
    )


def _branch_check(fixture: Fixture) -> Optional[bool]:
    """Classical fixtures: a -> +-1 must reproduce the sign-branch pipelines."""
    if fixture.model != "cpi":
        return None
    for sign in (1, -1):
        std = cpi_pipeline(sign=sign, time_dependent=fixture.time_dependent)
        for row in fixture.rows:
            specialised = row.engine.substitute({"a": sign})
            if row.kind == "christoffel":
                i, j, k = row.indices
                slot = std.christoffels.components[i][j][k]
            elif row.kind == "ricci":
                i, j = row.indices
                slot = std.curvature.ricci_matrix.rows[i][j]
            else:
                slot = std.curvature.scalar
            if specialised != slot:
                return False
    return True


def _verify_fixture(fixture: Fixture, samples_per_row: int) -> FixtureResult:
    try:
        cache = _OracleCache(fixture)
        rows = tuple(
            _verify_row(fixture, row, cache, samples_per_row) for row in fixture.rows
        )
        branch_ok = _branch_check(fixture)
        statuses = {row.status for row in rows}
        if "error" in statuses:
            status = "error"
        elif "mismatch" in statuses or fixture.zero_violations or branch_ok is False:
            status = "mismatch"
        elif "corrected" in statuses:
            status = "corrected"
        else:
            status = "ok"
        return FixtureResult(
            fid=fixture.fid, suite=fixture.suite, title=fixture.title,
            status=status, rows=rows, zero_claim=fixture.zero_claim,
            zero_violations=fixture.zero_violations, branch_ok=branch_ok,
            notes=fixture.notes,
        )
    except SupertimeError as exc:
        return FixtureResult(
            fid=fixture.fid, suite=fixture.suite, title=fixture.title,
            status="error", rows=(), zero_claim=fixture.zero_claim,
            zero_violations=fixture.zero_violations, branch_ok=None,
            notes=fixture.notes, error=f"{type(exc).__name__}: {exc}",
        )


def verify_suite(
    suite: str = "all",
    *,
    samples_per_row: int = _SAMPLES_PER_ROW,
    parallel: bool = True,
) -> VerifyReport:
    """Verify every fixture of a suite and assemble a deterministic report.

    Fixture verification runs in parallel; results are assembled in
    fixture-id order so the report is byte-identical across runs and
    thread schedules.
    """
    fixtures = fixtures_for_suite(suite)
    if parallel and len(fixtures) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(fixtures))) as pool:
            results = tuple(
                pool.map(lambda f: _verify_fixture(f, samples_per_row), fixtures)
            )
    else:
        results = tuple(_verify_fixture(f, samples_per_row) for f in fixtures)
    ordered = tuple(sorted(results, key=lambda r: r.fid))
    return VerifyReport(suite=suite, results=ordered)
