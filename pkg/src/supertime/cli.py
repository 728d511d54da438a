"""Command-line interface: verify bundled tables, compute curvatures, analyse flatness.

Subcommands
-----------
verify
    Recompute every fixture of a suite and compare against the
    transcribed source tables, arbitrating disagreements through the
    numeric oracle and the shipped errata document.  Exit status 0 when
    everything matches or every mismatch is a confirmed misprint, 1 on
    an unconfirmed mismatch, 2 on internal error.
compute
    Run the curvature pipeline for one of the built-in vierbein families
    (``cpi``/``qpi``) or a user-supplied ``custom`` vierbein or upper
    metric, and emit the metric, the Christoffel symbols, the Ricci
    tensor and the curvature scalar.
flatness
    For the classical family, drive the curvature to zero along the
    constraint chain and report the residuals; for the quantum family,
    run the obstruction analysis showing the curvature cannot vanish in
    the true quantum limit.

Input files are plain-text sectioned documents::

    [model]
    name = custom

    [vierbein]
    E_t_t = 1
    E_t_theta = 0
    ...                         # nine entries, super-expression strings

    [metric]                    # alternative to [vierbein]: upper metric
    g_t_t = 1 - 2*pi5*thetabar*theta
    ...

    [bindings]
    pi1 = 3/2                   # exact rationals

    [options]
    sign = +
    time-dependent = no
    pi6-form = eq69
    format = records

Command-line flags override file options; ``--bind`` entries override
file bindings.  Output formats: ``text`` (pretty expressions),
``records`` (line-oriented ``key=expression`` pairs that re-parse to
identical canonical forms), ``tex`` (typeset markup).  All output is
deterministic: exact values, sorted orderings, no timestamps.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ParseError, SingularBlockB, SupertimeError, UnknownSymbol
from .fixtures import SUITES, christoffel_label, ricci_label
from .geometry import (
    DEFAULT_CONVENTIONS,
    Metric,
    christoffel,
    kill_primes,
    metric_from_vierbein,
    ricci_scalar,
    ricci_tensor,
    riemann,
)
from .grassmann import SuperFunction
from .models import (
    PipelineResult,
    QPIPiParams,
    cpi_flatness,
    cpi_pipeline,
    qpi_obstruction,
    qpi_pipeline,
)
from .parsing import parse_super, super_to_tex, super_to_text
from .scalars import REGISTRY
from .supermatrix import INDEX_NAMES, SuperMatrix3
from .verify import EXIT_ERROR, EXIT_OK, verify_suite

__all__ = ["JobSpec", "main", "cmd_verify", "cmd_compute", "cmd_flatness"]

_FORMATS = ("text", "records", "tex")
_VIERBEIN_KEYS = tuple(
    f"E_{row}_{col}" for row in INDEX_NAMES for col in INDEX_NAMES
)
_METRIC_KEYS = tuple(
    f"g_{row}_{col}" for row in INDEX_NAMES for col in INDEX_NAMES
)


@dataclass(frozen=True)
class JobSpec:
    """One CLI job: model choice, inputs, bindings and output options."""

    model: str = "cpi"  # "cpi" | "qpi" | "custom"
    input_path: Optional[str] = None
    vierbein: Optional[SuperMatrix3] = None
    metric_upper: Optional[SuperMatrix3] = None
    bindings: Dict[str, Fraction] = field(default_factory=dict)
    sign: int = 1
    time_dependent: bool = False
    pi6_form: str = "eq69"
    fmt: str = "text"
    suite: str = "all"


# ---------------------------------------------------------------------------
# input file handling
# ---------------------------------------------------------------------------


def _read_sectioned(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), interpolation=None
    )
    parser.optionxform = str  # labels are case-sensitive
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ParseError(f"{path}: cannot read input file: {exc}") from exc
    except configparser.Error as exc:
        raise ParseError(f"{path}: malformed sectioned document: {exc}") from exc
    return parser


def _parse_entry(path: str, section: str, key: str, text: str) -> SuperFunction:
    try:
        return parse_super(text)
    except SupertimeError as exc:
        raise ParseError(f"{path} [{section}] {key}: {exc}") from exc


def _matrix_from_section(
    path: str, parser: configparser.ConfigParser, section: str, keys: Tuple[str, ...]
) -> SuperMatrix3:
    present = set(parser.options(section))
    missing = [key for key in keys if key not in present]
    extra = sorted(present - set(keys))
    if missing or extra:
        detail = []
        if missing:
            detail.append("missing " + ", ".join(missing))
        if extra:
            detail.append("unexpected " + ", ".join(extra))
        raise ParseError(
            f"{path} [{section}]: needs exactly the nine entries "
            f"{keys[0]} .. {keys[-1]} ({'; '.join(detail)})"
        )
    rows = []
    for a, row_name in enumerate(INDEX_NAMES):
        row = []
        for b, col_name in enumerate(INDEX_NAMES):
            key = keys[3 * a + b]
            row.append(_parse_entry(path, section, key, parser.get(section, key)))
        rows.append(tuple(row))
    return SuperMatrix3.from_rows(tuple(rows))


def _parse_rational(text: str, *, where: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: not an exact rational: {text!r}") from exc


def _parse_sign(text: str, *, where: str) -> int:
    table = {"+": 1, "+1": 1, "-": -1, "-1": -1}
    value = table.get(text.strip())
    if value is None:
        raise ParseError(f"{where}: sign must be + or -, got {text!r}")
    return value


def _parse_flag(text: str, *, where: str) -> bool:
    table = {"yes": True, "true": True, "on": True, "1": True,
             "no": False, "false": False, "off": False, "0": False}
    value = table.get(text.strip().lower())
    if value is None:
        raise ParseError(f"{where}: expected yes/no, got {text!r}")
    return value


def _spec_from_args(args: argparse.Namespace) -> JobSpec:
    """Assemble the JobSpec: file values first, then command-line overrides."""
    spec = JobSpec()
    input_path = getattr(args, "input", None)
    if input_path:
        parser = _read_sectioned(input_path)
        updates: dict = {"input_path": input_path}
        if parser.has_section("model"):
            if parser.has_option("model", "name"):
                updates["model"] = parser.get("model", "name").strip()
        if parser.has_section("options"):
            opts = parser["options"]
            where = f"{input_path} [options]"
            if "sign" in opts:
                updates["sign"] = _parse_sign(opts["sign"], where=f"{where} sign")
            if "time-dependent" in opts:
                updates["time_dependent"] = _parse_flag(
                    opts["time-dependent"], where=f"{where} time-dependent"
                )
            if "pi6-form" in opts:
                updates["pi6_form"] = opts["pi6-form"].strip()
            if "format" in opts:
                updates["fmt"] = opts["format"].strip()
            if "suite" in opts:
                updates["suite"] = opts["suite"].strip()
        if parser.has_section("bindings"):
            updates["bindings"] = {
                label: _parse_rational(
                    value, where=f"{input_path} [bindings] {label}"
                )
                for label, value in parser.items("bindings")
            }
        spec = replace(spec, **updates)
        if parser.has_section("vierbein"):
            spec = replace(
                spec,
                vierbein=_matrix_from_section(
                    input_path, parser, "vierbein", _VIERBEIN_KEYS
                ),
            )
        if parser.has_section("metric"):
            spec = replace(
                spec,
                metric_upper=_matrix_from_section(
                    input_path, parser, "metric", _METRIC_KEYS
                ),
            )
        if spec.vierbein is not None and spec.metric_upper is not None:
            raise ParseError(
                f"{input_path}: give either [vierbein] or [metric], not both"
            )
    overrides: dict = {}
    if getattr(args, "model", None):
        overrides["model"] = args.model
    if getattr(args, "sign", None):
        overrides["sign"] = _parse_sign(args.sign, where="--sign")
    if getattr(args, "time_dependent", False):
        overrides["time_dependent"] = True
    if getattr(args, "pi6_form", None):
        overrides["pi6_form"] = args.pi6_form
    if getattr(args, "format", None):
        overrides["fmt"] = args.format
    if getattr(args, "suite", None):
        overrides["suite"] = args.suite
    binds = dict(spec.bindings)
    for item in getattr(args, "bind", None) or ():
        if "=" not in item:
            raise ParseError(f"--bind {item!r}: expected SYM=RATIONAL")
        label, _, value = item.partition("=")
        binds[label.strip()] = _parse_rational(value, where=f"--bind {label.strip()}")
    overrides["bindings"] = binds
    spec = replace(spec, **overrides)

    if spec.model not in ("cpi", "qpi", "custom"):
        raise ParseError(f"unknown model {spec.model!r}; expected cpi, qpi or custom")
    if spec.fmt not in _FORMATS:
        raise ParseError(f"unknown format {spec.fmt!r}; expected one of {_FORMATS}")
    if spec.pi6_form not in ("eq69", "eq72"):
        raise ParseError(f"unknown pi6 form {spec.pi6_form!r}; expected eq69 or eq72")
    for label in spec.bindings:
        try:
            REGISTRY.require(label)
        except KeyError:
            raise UnknownSymbol(
                f"binding {label!r}: not a registered symbol"
            ) from None
    return spec


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def _custom_pipeline(spec: JobSpec) -> PipelineResult:
    if spec.vierbein is None and spec.metric_upper is None:
        raise ParseError(
            "model custom needs an --input file with a [vierbein] or [metric] section"
        )
    section = "vierbein" if spec.vierbein is not None else "metric"
    try:
        if spec.vierbein is not None:
            metric = metric_from_vierbein(spec.vierbein)
        else:
            metric = Metric.from_upper(spec.metric_upper)
        cs = christoffel(metric, DEFAULT_CONVENTIONS)
        curv = ricci_tensor(riemann(cs))
        curv = replace(curv, scalar=ricci_scalar(metric, curv, DEFAULT_CONVENTIONS))
    except SupertimeError as exc:
        raise type(exc)(f"{spec.input_path} [{section}]: {exc}") from exc
    if not spec.time_dependent:
        cs = kill_primes(cs)
        curv = kill_primes(curv)
    return PipelineResult(
        "custom", spec.sign, spec.time_dependent, metric, cs, curv
    )


def _resolve_pipeline(spec: JobSpec) -> Tuple[PipelineResult, Dict[str, Fraction]]:
    """Build the pipeline for the spec; returns it plus leftover bindings.

    For the quantum model an ``eps`` binding fixes the block entry
    pi7Q = a_B eps before the pipeline runs, since the regulator does not
    appear in the pi-form symbols themselves; eps = 0 therefore surfaces
    the singularity of the unregulated metric as SingularBlockB.
    """
    bindings = dict(spec.bindings)
    if spec.model == "custom":
        return _custom_pipeline(spec), bindings
    if spec.model == "cpi":
        return (
            cpi_pipeline(sign=spec.sign, time_dependent=spec.time_dependent),
            bindings,
        )
    eps = bindings.pop("eps", None)
    if eps is None:
        return (
            qpi_pipeline(sign=spec.sign, time_dependent=spec.time_dependent),
            bindings,
        )
    p = QPIPiParams.symbolic(
        spec.sign, spec.pi6_form, time_dependent=spec.time_dependent
    ).substitute({"pi7Q": spec.sign * eps})
    try:
        return qpi_pipeline(p, time_dependent=spec.time_dependent), bindings
    except SingularBlockB as exc:
        raise SingularBlockB(
            f"eps = {eps} makes pi7Q = a_B eps = 0: the theta block of the "
            "quantum metric loses its body in the eps -> 0 limit and has no "
            "inverse (the unregulated metric is singular)"
        ) from exc


_TEX_IDX = ("t", "\\theta", "\\bar{\\theta}")


def _labels(kind: str, fmt: str) -> List[Tuple[Tuple[int, ...], str]]:
    out: List[Tuple[Tuple[int, ...], str]] = []
    if kind in ("upper", "lower"):
        deco = "^" if kind == "upper" else "_"
        for a in range(3):
            for b in range(3):
                if fmt == "tex":
                    label = f"g{deco}{{{_TEX_IDX[a]}{_TEX_IDX[b]}}}"
                else:
                    label = f"g{deco}[{INDEX_NAMES[a]},{INDEX_NAMES[b]}]"
                out.append(((a, b), label))
    elif kind == "christoffel":
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    if fmt == "tex":
                        label = (
                            f"\\Gamma_{{{_TEX_IDX[a]}{_TEX_IDX[b]}}}"
                            f"{{}}^{{{_TEX_IDX[c]}}}"
                        )
                    else:
                        label = christoffel_label(a, b, c)
                    out.append(((a, b, c), label))
    elif kind == "ricci":
        for a in range(3):
            for b in range(3):
                if fmt == "tex":
                    label = f"R_{{{_TEX_IDX[a]}{_TEX_IDX[b]}}}"
                else:
                    label = ricci_label(a, b)
                out.append(((a, b), label))
    return out


def cmd_compute(spec: JobSpec) -> Tuple[List[str], int]:
    result, leftover = _resolve_pipeline(spec)
    metric = result.metric
    cs = result.christoffels
    curv = result.curvature
    if leftover:
        metric = metric.substitute(leftover)
        cs = cs.substitute(leftover)
        curv = curv.substitute(leftover)

    render = super_to_tex if spec.fmt == "tex" else super_to_text
    sections: List[Tuple[str, List[Tuple[str, SuperFunction]]]] = []
    sections.append(
        (
            "upper metric",
            [
                (label, metric.upper.rows[i[0]][i[1]])
                for i, label in _labels("upper", spec.fmt)
            ],
        )
    )
    sections.append(
        (
            "lower metric",
            [
                (label, metric.lower.rows[i[0]][i[1]])
                for i, label in _labels("lower", spec.fmt)
            ],
        )
    )
    sections.append(
        (
            "christoffel symbols",
            [
                (label, cs.components[i[0]][i[1]][i[2]])
                for i, label in _labels("christoffel", spec.fmt)
            ],
        )
    )
    sections.append(
        (
            "ricci tensor",
            [
                (label, curv.ricci_matrix.rows[i[0]][i[1]])
                for i, label in _labels("ricci", spec.fmt)
            ],
        )
    )
    sections.append(("curvature scalar", [("R", curv.scalar)]))

    lines: List[str] = []
    head = (
        f"model={result.model} sign={'+1' if spec.sign > 0 else '-1'}"
        f" time-dependent={'yes' if spec.time_dependent else 'no'}"
    )
    if spec.fmt == "records":
        lines.append(head)
        for _, entries in sections:
            for label, value in entries:
                lines.append(f"{label}={render(value)}")
    elif spec.fmt == "tex":
        lines.append(f"% {head}")
        lines.append("\\begin{align*}")
        body = []
        for _, entries in sections:
            for label, value in entries:
                body.append(f"{label} &= {render(value)}")
        lines.extend(line + " \\\\" for line in body[:-1])
        lines.append(body[-1])
        lines.append("\\end{align*}")
    else:
        lines.append(head)
        for title, entries in sections:
            lines.append("")
            lines.append(f"{title}:")
            for label, value in entries:
                lines.append(f"  {label} = {render(value)}")
    return lines, EXIT_OK


# ---------------------------------------------------------------------------
# flatness / obstruction
# ---------------------------------------------------------------------------


def cmd_flatness(spec: JobSpec) -> Tuple[List[str], int]:
    if spec.model == "cpi":
        report = cpi_flatness(sign=spec.sign, time_dependent=spec.time_dependent)
        return list(report.lines()), EXIT_OK
    if spec.model == "qpi":
        qreport = qpi_obstruction(sign=spec.sign, pi6_form=spec.pi6_form)
        return list(qreport.lines()), EXIT_OK
    raise ParseError("flatness analysis needs --model cpi or qpi")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(spec: JobSpec) -> Tuple[List[str], int]:
    if spec.suite != "all" and spec.suite not in SUITES:
        raise ParseError(
            f"unknown suite {spec.suite!r}; expected one of {SUITES + ('all',)}"
        )
    report = verify_suite(spec.suite)
    return list(report.lines()), report.exit_code


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supertime",
        description="Exact super-Riemannian geometry over supertime "
        "(t, theta, thetabar): verify bundled reference tables, compute "
        "curvatures, analyse flatness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=("cpi", "qpi", "custom"), default=None,
                        help="vierbein family (default cpi)")
    common.add_argument("--input", metavar="FILE", default=None,
                        help="sectioned input document ([model]/[vierbein]/"
                             "[metric]/[bindings]/[options])")
    common.add_argument("--bind", metavar="SYM=RATIONAL", action="append",
                        default=None, help="bind a symbol to an exact rational"
                                           " (repeatable)")
    common.add_argument("--sign", choices=("+", "-"), default=None,
                        help="sign branch of the block entry (default +)")
    common.add_argument("--time-dependent", action="store_true", default=False,
                        help="keep time-derivative symbols (default static)")
    common.add_argument("--pi6-form", choices=("eq69", "eq72"), dest="pi6_form",
                        default=None, help="closed form used for pi6Q in the"
                                           " quantum analysis")
    common.add_argument("--format", choices=_FORMATS, default=None,
                        help="output format (default text)")

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="recompute the bundled reference tables and report the comparison",
    )
    p_verify.add_argument("--suite", default=None,
                          choices=SUITES + ("all",),
                          help="fixture suite to verify (default all)")

    sub.add_parser(
        "compute", parents=[common],
        help="compute metric, Christoffels, Ricci tensor and scalar",
    )
    sub.add_parser(
        "flatness", parents=[common],
        help="flatness analysis (cpi) or obstruction analysis (qpi)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.command == "verify":
            lines, code = cmd_verify(spec)
        elif args.command == "compute":
            lines, code = cmd_compute(spec)
        else:
            lines, code = cmd_flatness(spec)
    except SupertimeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
