"""Brute-force numeric arbitration of the symbolic results.

Everything here re-does the curvature computation in a concrete
4-component representation of the Grassmann algebra with exact
complex-rational coefficients.  The code deliberately shares no
simplification machinery with the symbolic modules: expressions enter
only through their raw term lists, and the pipeline below re-implements
the metric, inversion, Christoffel and curvature arithmetic on plain
numbers.  Agreement of the two routes on random bindings is what lets a
mismatch against a quoted formula be blamed on the formula.

Time dependence is handled with second-order jets: every symbol value
carries its first and second time derivatives as independent bindings
(defaulting to zero, which is exactly the static case).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .errors import Inconclusive, SingularNumeric, UnboundSymbol
from .geometry import DEFAULT_CONVENTIONS, LEFT, Conventions
from .grassmann import SuperFunction
from .scalars import ScalarExpr

__all__ = [
    "CRat",
    "Jet",
    "NumericSuperNumber",
    "Binding",
    "NumericCurvature",
    "numeric_eval",
    "numeric_super_inverse",
    "numeric_pipeline",
    "LedgerEntry",
    "discrepancy_ledger",
]


_ZERO_FRACTION = Fraction(0)


class CRat:
    """Exact complex rational: re + im*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Fraction = _ZERO_FRACTION, im: Fraction = _ZERO_FRACTION):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *_):
        raise AttributeError("CRat is immutable")

    CRatish = Union["CRat", int, Fraction, tuple]

    @staticmethod
    def of(value: "CRat.CRatish") -> "CRat":
        if isinstance(value, CRat):
            return value
        if isinstance(value, (int, Fraction)):
            return CRat(Fraction(value))
        if isinstance(value, tuple) and len(value) == 2:
            return CRat(Fraction(value[0]), Fraction(value[1]))
        raise TypeError(f"cannot use {value!r} as a complex rational")

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __add__(self, other: "CRat") -> "CRat":
        return CRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CRat") -> "CRat":
        return CRat(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __mul__(self, other: "CRat") -> "CRat":
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def reciprocal(self) -> "CRat":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise SingularNumeric("division by numeric zero")
        return CRat(self.re / norm, -self.im / norm)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CRat) and self.re == other.re and self.im == other.im
        )

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


CRAT_ZERO = CRat()
CRAT_ONE = CRat(Fraction(1))


def _crat_pow(base: CRat, exponent: int) -> CRat:
    out = CRAT_ONE
    for _ in range(exponent):
        out = out * base
    return out


def _term(a, b):
    """Product of two optional CRats: None means unknown, zero dominates."""
    if a is None:
        return CRAT_ZERO if (b is not None and b.is_zero) else None
    if b is None:
        return CRAT_ZERO if a.is_zero else None
    return a * b


def _acc(*parts):
    """Sum of optional CRats; unknown poisons the sum."""
    total = CRAT_ZERO
    for part in parts:
        if part is None:
            return None
        total = total + part
    return total


class Jet:
    """Value with first and second time derivatives; None = unknown slot.

    Unknown slots appear when a derivative beyond the tracked order is
    taken; they poison anything computed from them except products with
    exact zeros, so reading a known slot is always sound.
    """

    __slots__ = ("v0", "v1", "v2")

    def __init__(self, v0, v1=CRAT_ZERO, v2=CRAT_ZERO):
        object.__setattr__(self, "v0", v0)
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    def __setattr__(self, *_):
        raise AttributeError("Jet is immutable")

    @property
    def is_zero(self) -> bool:
        return all(v is not None and v.is_zero for v in (self.v0, self.v1, self.v2))

    def __add__(self, other: "Jet") -> "Jet":
        return Jet(
            _acc(self.v0, other.v0),
            _acc(self.v1, other.v1),
            _acc(self.v2, other.v2),
        )

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def __neg__(self) -> "Jet":
        return Jet(
            None if self.v0 is None else -self.v0,
            None if self.v1 is None else -self.v1,
            None if self.v2 is None else -self.v2,
        )

    def __mul__(self, other: "Jet") -> "Jet":
        u0, u1, u2 = self.v0, self.v1, self.v2
        w0, w1, w2 = other.v0, other.v1, other.v2
        return Jet(
            _term(u0, w0),
            _acc(_term(u1, w0), _term(u0, w1)),
            _acc(_term(u2, w0), _term(u1, w1), _term(u1, w1), _term(u0, w2)),
        )

    def shift(self) -> "Jet":
        """d/dt: derivatives move down one slot, the top becomes unknown."""
        return Jet(self.v1, self.v2, None)

    def reciprocal(self) -> "Jet":
        if self.v0 is None:
            raise SingularNumeric("reciprocal of unknown value")
        r0 = self.v0.reciprocal()
        r1 = None if self.v1 is None else -(r0 * r0) * self.v1
        if r1 is None or self.v2 is None or self.v1 is None:
            r2 = None
        else:
            r2 = -(r0 * r0) * self.v2 - (r1 + r1) * r0 * self.v1
        return Jet(r0, r1, r2)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Jet)
            and self.v0 == other.v0
            and self.v1 == other.v1
            and self.v2 == other.v2
        )

    def __hash__(self) -> int:
        return hash((self.v0, self.v1, self.v2))

    def __repr__(self) -> str:
        return f"Jet({self.v0!r}, {self.v1!r}, {self.v2!r})"


JET_ZERO = Jet(CRAT_ZERO)
JET_ONE = Jet(CRAT_ONE)


@dataclass(frozen=True)
class NumericSuperNumber:
    """Concrete element of the Grassmann algebra: c1 + ct 0 + ctb 0b + ctbt 0b0.

    Components are CRats (plain evaluation) or Jets (pipeline work); the
    arithmetic below is the normalization table of the algebra, written
    out once more on purpose.
    """

    c1: object
    ct: object
    ctb: object
    ctbt: object

    @property
    def is_zero(self) -> bool:
        return (
            self.c1.is_zero and self.ct.is_zero
            and self.ctb.is_zero and self.ctbt.is_zero
        )

    def __add__(self, other: "NumericSuperNumber") -> "NumericSuperNumber":
        return NumericSuperNumber(
            self.c1 + other.c1, self.ct + other.ct,
            self.ctb + other.ctb, self.ctbt + other.ctbt,
        )

    def __sub__(self, other: "NumericSuperNumber") -> "NumericSuperNumber":
        return NumericSuperNumber(
            self.c1 - other.c1, self.ct - other.ct,
            self.ctb - other.ctb, self.ctbt - other.ctbt,
        )

    def __neg__(self) -> "NumericSuperNumber":
        return NumericSuperNumber(-self.c1, -self.ct, -self.ctb, -self.ctbt)

    def __mul__(self, other: "NumericSuperNumber") -> "NumericSuperNumber":
        x1, xt, xtb, xs = self.c1, self.ct, self.ctb, self.ctbt
        y1, yt, ytb, ys = other.c1, other.ct, other.ctb, other.ctbt
        return NumericSuperNumber(
            x1 * y1,
            x1 * yt + xt * y1,
            x1 * ytb + xtb * y1,
            x1 * ys + xs * y1 - xt * ytb + xtb * yt,
        )


def _nsn_zero(zero) -> NumericSuperNumber:
    return NumericSuperNumber(zero, zero, zero, zero)


def numeric_super_inverse(z: NumericSuperNumber) -> NumericSuperNumber:
    """(body + n)^{-1} = 1/body - n/body^2; n is nilpotent, n^2 = 0."""
    inv_b = z.c1.reciprocal()
    inv_b2 = inv_b * inv_b
    return NumericSuperNumber(
        inv_b, -(inv_b2 * z.ct), -(inv_b2 * z.ctb), -(inv_b2 * z.ctbt)
    )


# ---------------------------------------------------------------------------
# evaluation of symbolic expressions
# ---------------------------------------------------------------------------


Binding = Mapping[str, "CRat.CRatish"]


def _eval_scalar_raw(expr: ScalarExpr, binding: Mapping[str, CRat]) -> CRat:
    num_terms, den_terms = expr.raw()

    def poly(terms) -> CRat:
        total = CRAT_ZERO
        for mono, (re_n, re_d, im_n, im_d) in terms:
            value = CRat(Fraction(re_n, re_d), Fraction(im_n, im_d))
            for label, exponent in mono:
                bound = binding.get(label)
                if bound is None:
                    raise UnboundSymbol(f"no binding for symbol {label}")
                value = value * _crat_pow(bound, exponent)
            total = total + value
        return total

    den = poly(den_terms)
    if den.is_zero:
        raise SingularNumeric("denominator evaluates to zero")
    return poly(num_terms) * den.reciprocal()


def numeric_eval(f, b: Binding):
    """Evaluate a symbolic expression at exact numeric bindings.

    SuperFunction -> NumericSuperNumber; ScalarExpr -> CRat.  Evaluation
    is componentwise on raw term lists, hence a ring homomorphism.
    """
    binding = {str(k): CRat.of(v) for k, v in b.items()}
    if isinstance(f, ScalarExpr):
        return _eval_scalar_raw(f, binding)
    if isinstance(f, SuperFunction):
        return NumericSuperNumber(
            _eval_scalar_raw(f.u1, binding),
            _eval_scalar_raw(f.ut, binding),
            _eval_scalar_raw(f.utb, binding),
            _eval_scalar_raw(f.utbt, binding),
        )
    raise TypeError(f"cannot evaluate {type(f).__name__}")


# ---------------------------------------------------------------------------
# independent numeric pipeline
# ---------------------------------------------------------------------------


_G = (0, 1, 1)  # grading of (t, theta, thetabar)


def _parity_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _nsn_t_derive(f: NumericSuperNumber) -> NumericSuperNumber:
    return NumericSuperNumber(
        f.c1.shift(), f.ct.shift(), f.ctb.shift(), f.ctbt.shift()
    )


def _nsn_odd_derive(
    f: NumericSuperNumber, direction: int, hand: str
) -> NumericSuperNumber:
    z = JET_ZERO
    if hand == LEFT:
        if direction == 1:  # theta
            return NumericSuperNumber(f.ct, z, -f.ctbt, z)
        return NumericSuperNumber(f.ctb, f.ctbt, z, z)
    if direction == 1:
        return NumericSuperNumber(f.ct, z, f.ctbt, z)
    return NumericSuperNumber(f.ctb, -f.ctbt, z, z)


def _nsn_derive(f: NumericSuperNumber, direction: int, hand: str) -> NumericSuperNumber:
    if direction == 0:
        return _nsn_t_derive(f)
    return _nsn_odd_derive(f, direction, hand)


def _jet_of(label: str, binding: Mapping[str, CRat]) -> Jet:
    value = binding.get(label)
    if value is None:
        raise UnboundSymbol(f"no binding for symbol {label}")
    return Jet(
        value,
        binding.get(label + "'", CRAT_ZERO),
        binding.get(label + "''", CRAT_ZERO),
    )


def _pi_form_upper_numeric(pi1, pi2, pi3, pi4, pi5, block, block_soul):
    """The shared upper-metric shape, assembled over jets."""
    z = JET_ZERO
    two = CRat(Fraction(2))
    minus_two_pi5 = -(Jet(two) * pi5)
    g00 = NumericSuperNumber(JET_ONE, z, z, minus_two_pi5)
    g01 = NumericSuperNumber(z, -pi3, -pi4, z)
    g02 = NumericSuperNumber(z, pi1, pi2, z)
    g12 = NumericSuperNumber(block, z, z, block_soul)
    zero = _nsn_zero(z)
    return (
        (g00, g01, g02),
        (g01, zero, g12),
        (g02, -g12, zero),
    )


def _numeric_inverse(matrix) -> tuple:
    """Right inverse by left-elimination; pivots need invertible bodies."""
    z = JET_ZERO
    size = 3
    work = [list(row) for row in matrix]
    result = [
        [_nsn_zero(z) if i != j else NumericSuperNumber(JET_ONE, z, z, z)
         for j in range(size)]
        for i in range(size)
    ]
    for col in range(size):
        pivot_row = None
        for r in range(col, size):
            body = work[r][col].c1
            if body.v0 is not None and not body.v0.is_zero:
                pivot_row = r
                break
        if pivot_row is None:
            raise SingularNumeric("metric has no invertible pivot; singular bindings")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            result[col], result[pivot_row] = result[pivot_row], result[col]
        inv_p = numeric_super_inverse(work[col][col])
        work[col] = [inv_p * x for x in work[col]]
        result[col] = [inv_p * x for x in result[col]]
        for r in range(size):
            if r == col:
                continue
            factor = work[r][col]
            if factor.is_zero:
                continue
            work[r] = [
                work[r][k] - factor * work[col][k] for k in range(size)
            ]
            result[r] = [
                result[r][k] - factor * result[col][k] for k in range(size)
            ]
    return tuple(tuple(row) for row in result)


def _numeric_christoffels(upper, lower, conv: Conventions):
    z = JET_ZERO
    half = Jet(CRat(Fraction(1, 2)))
    d_b = [
        [
            [_nsn_derive(lower[a][d], b, conv.christoffel_b) for d in range(3)]
            for a in range(3)
        ]
        for b in range(3)
    ]
    d_a = [
        [
            [_nsn_derive(lower[b][d], a, conv.christoffel_a) for d in range(3)]
            for b in range(3)
        ]
        for a in range(3)
    ]
    d_d = [
        [
            [_nsn_derive(lower[a][b], d, conv.christoffel_d) for b in range(3)]
            for a in range(3)
        ]
        for d in range(3)
    ]
    half_nsn = NumericSuperNumber(half, z, z, z)
    out = []
    for a in range(3):
        row = []
        for b in range(3):
            entries = []
            for c in range(3):
                acc = _nsn_zero(z)
                for d in range(3):
                    gdc = upper[d][c]
                    if gdc.is_zero:
                        continue
                    t1 = d_b[b][a][d]
                    if _parity_sign(_G[b] * _G[d]) < 0:
                        t1 = -t1
                    t2 = d_a[a][b][d]
                    if _parity_sign(_G[a] + _G[b] + _G[a] * _G[b] + _G[a] * _G[d]) < 0:
                        t2 = -t2
                    bracket = t1 + t2 - d_d[d][a][b]
                    acc = acc + (
                        bracket * gdc if conv.christoffel_metric_right else gdc * bracket
                    )
                if _parity_sign(_G[b] * _G[c]) < 0:
                    acc = -acc
                entries.append(half_nsn * acc)
            row.append(tuple(entries))
        out.append(tuple(row))
    return tuple(out)


def _numeric_riemann(gamma, conv: Conventions):
    d_b = [
        [
            [
                [_nsn_derive(gamma[a][c][dd], b, conv.riemann_b) for dd in range(3)]
                for c in range(3)
            ]
            for a in range(3)
        ]
        for b in range(3)
    ]
    d_c = [
        [
            [
                [_nsn_derive(gamma[a][b][dd], c, conv.riemann_c) for dd in range(3)]
                for b in range(3)
            ]
            for a in range(3)
        ]
        for c in range(3)
    ]
    out = []
    for a in range(3):
        plane_a = []
        for b in range(3):
            plane_b = []
            for c in range(3):
                entries = []
                for dd in range(3):
                    acc = -d_b[b][a][c][dd]
                    t2 = d_c[c][a][b][dd]
                    if _parity_sign(_G[b] * _G[c]) < 0:
                        t2 = -t2
                    acc = acc + t2
                    for e_idx in range(3):
                        p1 = gamma[a][c][e_idx] * gamma[e_idx][b][dd]
                        if _parity_sign(_G[c] * (_G[dd] + _G[e_idx])) < 0:
                            p1 = -p1
                        acc = acc - p1
                        p2 = gamma[a][b][e_idx] * gamma[e_idx][c][dd]
                        if _parity_sign(_G[b] * (_G[c] + _G[dd] + _G[e_idx])) < 0:
                            p2 = -p2
                        acc = acc + p2 if conv.riemann_last_term_plus else acc - p2
                    entries.append(acc)
                plane_b.append(tuple(entries))
            plane_a.append(tuple(plane_b))
        out.append(tuple(plane_a))
    return tuple(out)


def _numeric_ricci(riem):
    z = JET_ZERO
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            acc = _nsn_zero(z)
            for c in range(3):
                term = riem[a][b][c][c]
                if _parity_sign(_G[c]) < 0:
                    term = -term
                acc = acc + term
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def _numeric_scalar(upper, ricci, conv: Conventions):
    z = JET_ZERO
    acc = _nsn_zero(z)
    for b in range(3):
        for a in range(3):
            gba = upper[b][a]
            rab = ricci[a][b]
            if gba.is_zero or rab.is_zero:
                continue
            term = gba * rab if conv.scalar_metric_first else rab * gba
            if _parity_sign(_G[b]) < 0:
                term = -term
            acc = acc + term
    return acc


def _project(value):
    """Drop the jet structure: keep the evaluated (slot-0) components."""
    if isinstance(value, NumericSuperNumber):
        comps = []
        for comp in (value.c1, value.ct, value.ctb, value.ctbt):
            if comp.v0 is None:
                raise SingularNumeric("value slot unexpectedly unknown")
            comps.append(comp.v0)
        return NumericSuperNumber(*comps)
    return tuple(_project(item) for item in value)


@dataclass(frozen=True)
class NumericCurvature:
    """Numeric pipeline output; every entry has plain CRat components."""

    model: str
    metric_upper: tuple
    metric_lower: tuple
    christoffels: tuple
    riemann: tuple
    ricci: tuple
    scalar: NumericSuperNumber


def numeric_pipeline(
    metric_bindings: Binding,
    model: str = "cpi",
    time_dependent: bool = False,
    sign: int = 1,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> NumericCurvature:
    """Metric -> inverse -> Christoffels -> Riemann -> Ricci -> scalar, numerically.

    Bindings are exact rationals (or (re, im) pairs); primed labels are
    independent bindings and default to zero, which is the static case.
    The ``time_dependent`` flag is documentation of intent; supplying
    nonzero primed bindings is what actually turns time dependence on.
    """
    del time_dependent
    binding = {str(k): CRat.of(v) for k, v in metric_bindings.items()}
    if model == "cpi":
        a_val = binding.get("a", CRat(Fraction(sign)))
        pi = [_jet_of(lab, binding) for lab in ("pi1", "pi2", "pi3", "pi4")]
        if "pi5" in binding:
            pi5 = _jet_of("pi5", binding)
        else:
            pi5 = Jet(a_val.reciprocal()) * (pi[1] * pi[2] - pi[0] * pi[3])
        upper = _pi_form_upper_numeric(
            pi[0], pi[1], pi[2], pi[3], pi5, Jet(a_val), JET_ZERO
        )
    elif model == "qpi":
        piq = [
            _jet_of(lab, binding)
            for lab in ("pi1Q", "pi2Q", "pi3Q", "pi4Q", "pi5Q", "pi6Q", "pi7Q")
        ]
        if piq[6].v0.is_zero:
            raise SingularNumeric("pi7Q binding must be nonzero")
        upper = _pi_form_upper_numeric(
            piq[0], piq[1], piq[2], piq[3], piq[4], piq[6], piq[5]
        )
    else:
        raise ValueError(f"unknown model {model!r}")
    lower = _numeric_inverse(upper)
    gammas = _numeric_christoffels(upper, lower, conventions)
    riem = _numeric_riemann(gammas, conventions)
    ricci = _numeric_ricci(riem)
    scalar = _numeric_scalar(upper, ricci, conventions)
    return NumericCurvature(
        model=model,
        metric_upper=_project(upper),
        metric_lower=_project(lower),
        christoffels=_project(gammas),
        riemann=_project(riem),
        ricci=_project(ricci),
        scalar=_project(scalar),
    )


# ---------------------------------------------------------------------------
# discrepancy ledger
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """Verdict on a printed-vs-computed mismatch, decided numerically.

    verdict is "paper typo" only when the oracle sided with the computed
    form at every sample and with the printed form at none.
    """

    fixture: str
    verdict: str
    samples: tuple
    note: str = ""

    def lines(self) -> tuple[str, ...]:
        out = [f"fixture: {self.fixture}", f"verdict: {self.verdict}"]
        for n, (printed_ok, computed_ok) in enumerate(self.samples, start=1):
            out.append(
                f"sample {n}: printed {'agrees' if printed_ok else 'disagrees'},"
                f" computed {'agrees' if computed_ok else 'disagrees'}"
            )
        if self.note:
            out.append(f"note: {self.note}")
        return tuple(out)


def discrepancy_ledger(
    fixture: str,
    printed,
    computed,
    bindings: Sequence[Binding],
    oracle_fn: Callable[[Binding], object],
    note: str = "",
) -> LedgerEntry:
    """Let the numeric oracle arbitrate between two symbolic forms.

    ``oracle_fn`` produces the independent numeric value for one binding
    (typically a slot of numeric_pipeline); the printed and computed
    expressions are evaluated with numeric_eval and compared exactly.
    Raises Inconclusive when some sample matches neither side.
    """
    if printed == computed:
        raise ValueError("printed and computed forms agree; nothing to arbitrate")
    if not bindings:
        raise ValueError("at least one sample binding is required")
    samples = []
    for b in bindings:
        target = oracle_fn(b)
        printed_ok = numeric_eval(printed, b) == target
        computed_ok = numeric_eval(computed, b) == target
        if not printed_ok and not computed_ok:
            raise Inconclusive(
                f"{fixture}: oracle matches neither side at binding {dict(b)!r}"
            )
        samples.append((printed_ok, computed_ok))
    if all(c for _, c in samples) and not any(p for p, _ in samples):
        verdict = "paper typo"
    elif all(p for p, _ in samples) and not any(c for _, c in samples):
        verdict = "computed wrong"
    else:
        verdict = "inconclusive"
    return LedgerEntry(fixture=fixture, verdict=verdict, samples=tuple(samples), note=note)
