"""Curvature machinery on the supermanifold (t, theta, thetabar).

Index conventions: positions 0, 1, 2 are t, theta, thetabar with grading
(0, 1, 1).  The flat metric eta is

        [ 1  0  0 ]
        [ 0  0 -1 ]
        [ 0  1  0 ]

Derivatives along odd directions are handed; which hand appears in each
term of the Christoffel/curvature formulas, and on which side the metric
contracts, is a convention.  The shipped defaults in DEFAULT_CONVENTIONS
are pinned by tests/test_calibration.py, which sweeps every alternative
and shows exactly one reproduces the reference Christoffel table; see
docs/CONVENTIONS.md.

Index layout of results:

    christoffel(...)[a][b][c]   = Gamma^c_{ab}
    riemann(...)[a][b][c][d]    = R^d_{abc}
    ricci_tensor(...)[a][b]     = R_{ab}
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from .grassmann import THETA, THETABAR, SuperFunction
from .scalars import REGISTRY, ZERO, Scalarish, ScalarExpr
from .supermatrix import (
    INDEX_GRADING,
    SuperMatrix3,
    grading_check,
    smat_inverse,
)

LEFT = "left"
RIGHT = "right"


def eta() -> SuperMatrix3:
    """Flat lower metric eta_AB."""
    return SuperMatrix3.from_rows(((1, 0, 0), (0, 0, -1), (0, 1, 0)))


def eta_inv() -> SuperMatrix3:
    """Flat upper metric, the inverse of eta."""
    return SuperMatrix3.from_rows(((1, 0, 0), (0, 0, 1), (0, -1, 0)))


class FlatMetric:
    """The constant flat metric of supertime, ds^2 = dt^2 - d0 d0b + d0b d0."""

    @property
    def matrix(self) -> SuperMatrix3:
        return eta()

    @property
    def inverse(self) -> SuperMatrix3:
        return eta_inv()

    def as_metric(self) -> "Metric":
        m = Metric(eta_inv(), None)
        m._lower = eta()
        return m


@dataclass(frozen=True)
class Conventions:
    """Handedness and ordering choices the curvature formulas leave open.

    christoffel_b / christoffel_a / christoffel_d: hand of the odd
    derivative in each of the three metric-derivative terms.
    christoffel_metric_right: the inverse metric stands to the right of
    the bracket (False puts it to the left).
    riemann_b / riemann_c: hand of the two Christoffel derivatives.
    scalar_metric_first: contract g^{BA} R_AB with the metric on the left.
    """

    christoffel_b: str = LEFT
    christoffel_a: str = LEFT
    christoffel_d: str = LEFT
    christoffel_metric_right: bool = True
    riemann_b: str = LEFT
    riemann_c: str = LEFT
    riemann_last_term_plus: bool = False
    scalar_metric_first: bool = True


# Pinned by the calibration sweep; do not edit without rerunning it.
DEFAULT_CONVENTIONS = Conventions()


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def direction_derive(f: SuperFunction, direction: int, hand: str) -> SuperFunction:
    """d f / d x^direction with the requested hand on odd directions."""
    if direction == 0:
        return f.t_derive()
    v = THETA if direction == 1 else THETABAR
    return f.left_deriv(v) if hand == LEFT else f.right_deriv(v)


class Metric:
    """Upper/lower metric pair; either side may be given, the other is lazy."""

    def __init__(self, upper: SuperMatrix3 | None, lower: SuperMatrix3 | None):
        if upper is None and lower is None:
            raise ValueError("need at least one side of the metric")
        self._upper = upper
        self._lower = lower

    @staticmethod
    def from_upper(upper: SuperMatrix3) -> "Metric":
        grading_check(upper)
        return Metric(upper, None)

    @staticmethod
    def from_lower(lower: SuperMatrix3) -> "Metric":
        grading_check(lower)
        return Metric(None, lower)

    @property
    def upper(self) -> SuperMatrix3:
        if self._upper is None:
            self._upper = smat_inverse(self._lower)
        return self._upper

    @property
    def lower(self) -> SuperMatrix3:
        if self._lower is None:
            self._lower = smat_inverse(self._upper)
        return self._lower

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "Metric":
        return Metric(
            self._upper.substitute(bindings) if self._upper is not None else None,
            self._lower.substitute(bindings) if self._lower is not None else None,
        )


def metric_from_vierbein(e: SuperMatrix3) -> Metric:
    """Upper metric g^{LP} = sum (-1)^{g(B) g(P)} E_A^L E_B^P eta_AB.

    e[A][M] has flat row index A and curved column index M.
    """
    grading_check(e)
    eta_m = eta()
    rows = []
    for lam in range(3):
        row = []
        for pi in range(3):
            acc = SuperFunction.zero()
            for a in range(3):
                for b in range(3):
                    eta_ab = eta_m.rows[a][b]
                    if eta_ab.is_zero:
                        continue
                    sign = _sign(INDEX_GRADING[b] * INDEX_GRADING[pi])
                    term = e.rows[a][lam] * e.rows[b][pi] * eta_ab
                    acc = acc + (term if sign > 0 else -term)
            row.append(acc)
        rows.append(tuple(row))
    return Metric.from_upper(SuperMatrix3(tuple(rows)))


def metric_lower(upper: SuperMatrix3) -> SuperMatrix3:
    return smat_inverse(upper)


Christoffel = tuple  # [a][b][c] -> Gamma^c_{ab}


@dataclass(frozen=True)
class ChristoffelSet:
    """All 27 Christoffel symbols plus the conventions they were built with.

    components[a][b][c] holds Gamma^c_{ab}; the gamma mapping is keyed
    (upper, lower1, lower2) by index name.
    """

    components: tuple
    conventions: Conventions = DEFAULT_CONVENTIONS

    def __getitem__(self, key) -> SuperFunction:
        upper, lower1, lower2 = (_index(k) for k in key)
        return self.components[lower1][lower2][upper]

    @property
    def gamma(self) -> dict:
        from .supermatrix import INDEX_NAMES

        return {
            (INDEX_NAMES[c], INDEX_NAMES[a], INDEX_NAMES[b]): self.components[a][b][c]
            for c in range(3)
            for a in range(3)
            for b in range(3)
        }

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "ChristoffelSet":
        return ChristoffelSet(
            _substitute_tree(self.components, bindings), self.conventions
        )

    def parity_violations(self) -> tuple[tuple[str, str, str], ...]:
        """Slots whose value breaks the required parity g(c)+g(a)+g(b)."""
        from .grassmann import Parity
        from .supermatrix import INDEX_NAMES

        bad = []
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    parity_bit = (
                        INDEX_GRADING[c] + INDEX_GRADING[a] + INDEX_GRADING[b]
                    ) % 2
                    need = Parity.ODD if parity_bit else Parity.EVEN
                    if not self.components[a][b][c].parity_matches(need):
                        bad.append(
                            (INDEX_NAMES[c], INDEX_NAMES[a], INDEX_NAMES[b])
                        )
        return tuple(bad)


@dataclass(frozen=True)
class CurvatureSet:
    """Riemann components, the Ricci contraction, and the curvature scalar.

    riemann_components[a][b][c][d] holds R^d_{abc}; the riemann mapping is
    keyed (d, a, b, c).  ricci_matrix[a][b] holds R_{ab}.  Slots not yet
    computed are None.
    """

    riemann_components: tuple | None = None
    ricci_matrix: SuperMatrix3 | None = None
    scalar: SuperFunction | None = None
    conventions: Conventions = DEFAULT_CONVENTIONS

    @property
    def riemann(self) -> dict:
        from .supermatrix import INDEX_NAMES

        if self.riemann_components is None:
            return {}
        return {
            (
                INDEX_NAMES[d],
                INDEX_NAMES[a],
                INDEX_NAMES[b],
                INDEX_NAMES[c],
            ): self.riemann_components[a][b][c][d]
            for d in range(3)
            for a in range(3)
            for b in range(3)
            for c in range(3)
        }

    @property
    def ricci(self) -> dict:
        from .supermatrix import INDEX_NAMES

        if self.ricci_matrix is None:
            return {}
        return {
            (INDEX_NAMES[a], INDEX_NAMES[b]): self.ricci_matrix.rows[a][b]
            for a in range(3)
            for b in range(3)
        }

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "CurvatureSet":
        return CurvatureSet(
            _substitute_tree(self.riemann_components, bindings)
            if self.riemann_components is not None
            else None,
            self.ricci_matrix.substitute(bindings)
            if self.ricci_matrix is not None
            else None,
            self.scalar.substitute(bindings) if self.scalar is not None else None,
            self.conventions,
        )


def _index(key) -> int:
    from .supermatrix import _index as smat_index

    return smat_index(key)


def christoffel_components(
    metric: Metric, conv: Conventions = DEFAULT_CONVENTIONS
) -> Christoffel:
    """Gamma^c_{ab} from the graded Levi-Civita formula."""
    lower = metric.lower
    upper = metric.upper
    g = INDEX_GRADING
    # precompute the three derivative stacks of the lower metric
    d_b = [
        [
            [direction_derive(lower.rows[a][d], b, conv.christoffel_b) for d in range(3)]
            for a in range(3)
        ]
        for b in range(3)
    ]
    d_a = [
        [
            [direction_derive(lower.rows[b][d], a, conv.christoffel_a) for d in range(3)]
            for b in range(3)
        ]
        for a in range(3)
    ]
    d_d = [
        [
            [direction_derive(lower.rows[a][b], d, conv.christoffel_d) for d in range(3)]
            for b in range(3)
        ]
        for a in range(3)
    ]
    half = ScalarExpr.from_fraction((1, 2))
    out = []
    for a in range(3):
        row = []
        for b in range(3):
            entries = []
            for c in range(3):
                acc = SuperFunction.zero()
                for d in range(3):
                    gdc = upper.rows[d][c]
                    if gdc.is_zero:
                        continue
                    t1 = d_b[b][a][d]
                    if _sign(g[b] * g[d]) < 0:
                        t1 = -t1
                    t2 = d_a[a][b][d]
                    if _sign(g[a] + g[b] + g[a] * g[b] + g[a] * g[d]) < 0:
                        t2 = -t2
                    bracket = t1 + t2 - d_d[a][b][d]
                    if bracket.is_zero:
                        continue
                    acc = acc + (
                        bracket * gdc if conv.christoffel_metric_right else gdc * bracket
                    )
                if _sign(g[b] * g[c]) < 0:
                    acc = -acc
                entries.append(half * acc)
            row.append(tuple(entries))
        out.append(tuple(row))
    return tuple(out)


Riemann = tuple  # [a][b][c][d] -> R^d_{abc}


def riemann_components(
    gamma: Christoffel, conv: Conventions = DEFAULT_CONVENTIONS
) -> Riemann:
    """R^d_{abc} from the Christoffel symbols."""
    g = INDEX_GRADING
    d_b = [
        [
            [
                [direction_derive(gamma[a][c][dd], b, conv.riemann_b) for dd in range(3)]
                for c in range(3)
            ]
            for a in range(3)
        ]
        for b in range(3)
    ]
    d_c = [
        [
            [
                [direction_derive(gamma[a][b][dd], c, conv.riemann_c) for dd in range(3)]
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
                    if _sign(g[b] * g[c]) < 0:
                        t2 = -t2
                    acc = acc + t2
                    for e_idx in range(3):
                        p1 = gamma[a][c][e_idx] * gamma[e_idx][b][dd]
                        if not p1.is_zero:
                            if _sign(g[c] * (g[dd] + g[e_idx])) < 0:
                                p1 = -p1
                            acc = acc - p1
                        p2 = gamma[a][b][e_idx] * gamma[e_idx][c][dd]
                        if not p2.is_zero:
                            if _sign(g[b] * (g[c] + g[dd] + g[e_idx])) < 0:
                                p2 = -p2
                            acc = acc + p2 if conv.riemann_last_term_plus else acc - p2
                    entries.append(acc)
                plane_b.append(tuple(entries))
            plane_a.append(tuple(plane_b))
        out.append(tuple(plane_a))
    return tuple(out)


def ricci_from_riemann(riem: Riemann) -> SuperMatrix3:
    """R_ab = (-1)^{g(c)} R^c_{abc}."""
    g = INDEX_GRADING
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            acc = SuperFunction.zero()
            for c in range(3):
                term = riem[a][b][c][c]
                if _sign(g[c]) < 0:
                    term = -term
                acc = acc + term
            row.append(acc)
        rows.append(tuple(row))
    return SuperMatrix3(tuple(rows))


def christoffel(
    metric: Metric, conv: Conventions = DEFAULT_CONVENTIONS
) -> ChristoffelSet:
    """All 27 Christoffel symbols of the metric, as a ChristoffelSet."""
    return ChristoffelSet(christoffel_components(metric, conv), conv)


def riemann(cs: ChristoffelSet) -> CurvatureSet:
    """Riemann components of a Christoffel set, as a CurvatureSet."""
    return CurvatureSet(
        riemann_components(cs.components, cs.conventions),
        None,
        None,
        cs.conventions,
    )


def ricci_tensor(cs: CurvatureSet) -> CurvatureSet:
    """Fill the Ricci contraction of an already-computed Riemann tensor."""
    if cs.riemann_components is None:
        raise ValueError("riemann components not computed")
    return replace(cs, ricci_matrix=ricci_from_riemann(cs.riemann_components))


def ricci_expanded(
    gamma: Christoffel, conv: Conventions = DEFAULT_CONVENTIONS
) -> SuperMatrix3:
    """R_ab directly from Christoffel symbols (expanded contraction).

    Independent of riemann()/ricci_tensor(); agreement of the two routes
    is a shipped invariant check.
    """
    if isinstance(gamma, ChristoffelSet):
        conv = gamma.conventions
        gamma = gamma.components
    g = INDEX_GRADING
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            acc = SuperFunction.zero()
            for c in range(3):
                t1 = direction_derive(gamma[a][c][c], b, conv.riemann_b)
                if _sign(g[c] + 1) < 0:
                    t1 = -t1
                acc = acc + t1
                t2 = direction_derive(gamma[a][b][c], c, conv.riemann_c)
                if _sign(g[c] * (g[b] + 1)) < 0:
                    t2 = -t2
                acc = acc + t2
                for e_idx in range(3):
                    p1 = gamma[a][c][e_idx] * gamma[e_idx][b][c]
                    if not p1.is_zero:
                        if _sign(g[c] * (g[c] + g[e_idx] - 1)) < 0:
                            p1 = -p1
                        acc = acc - p1
                    p2 = gamma[a][b][e_idx] * gamma[e_idx][c][c]
                    if not p2.is_zero:
                        if _sign(g[b] * g[e_idx] + g[c]) < 0:
                            p2 = -p2
                        acc = acc + p2 if conv.riemann_last_term_plus else acc - p2
            row.append(acc)
        rows.append(tuple(row))
    return SuperMatrix3(tuple(rows))


def ricci_scalar(
    metric: Metric,
    ricci: SuperMatrix3 | CurvatureSet,
    conv: Conventions = DEFAULT_CONVENTIONS,
) -> SuperFunction:
    """R = (-1)^{g(B)} g^{BA} R_AB."""
    if isinstance(ricci, CurvatureSet):
        conv = ricci.conventions
        if ricci.ricci_matrix is None:
            raise ValueError("ricci contraction not computed")
        ricci = ricci.ricci_matrix
    g = INDEX_GRADING
    upper = metric.upper
    acc = SuperFunction.zero()
    for b in range(3):
        for a in range(3):
            gba = upper.rows[b][a]
            rab = ricci.rows[a][b]
            if gba.is_zero or rab.is_zero:
                continue
            term = gba * rab if conv.scalar_metric_first else rab * gba
            if _sign(g[b]) < 0:
                term = -term
            acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# time-independent evaluation
# ---------------------------------------------------------------------------


def primed_labels(value) -> tuple[str, ...]:
    """All derivative symbols occurring in an expression tree."""
    labels: set[str] = set()

    def collect(e: ScalarExpr) -> None:
        labels.update(lab for lab in e.symbols() if lab.endswith("'"))

    _walk(value, collect)
    return tuple(sorted(labels))


def _walk(value, fn) -> None:
    if value is None:
        return
    if isinstance(value, ScalarExpr):
        fn(value)
    elif isinstance(value, SuperFunction):
        for comp in (value.u1, value.ut, value.utb, value.utbt):
            fn(comp)
    elif isinstance(value, SuperMatrix3):
        for row in value.rows:
            for entry in row:
                _walk(entry, fn)
    elif isinstance(value, ChristoffelSet):
        _walk(value.components, fn)
    elif isinstance(value, CurvatureSet):
        _walk(value.riemann_components, fn)
        _walk(value.ricci_matrix, fn)
        _walk(value.scalar, fn)
    elif isinstance(value, tuple):
        for item in value:
            _walk(item, fn)
    else:
        raise TypeError(f"cannot walk {type(value).__name__}")


def kill_primes(value):
    """Evaluate at constant parameters: every derivative symbol goes to 0.

    Valid whenever no further time derivative is taken afterwards, since
    fixing primes to zero is ring evaluation of the dynamic result.
    """
    labels = primed_labels(value)
    if not labels:
        return value
    bindings = {lab: 0 for lab in labels}
    return _substitute_tree(value, bindings)


def _substitute_tree(value, bindings):
    if value is None:
        return None
    if isinstance(
        value, (ScalarExpr, SuperFunction, SuperMatrix3, ChristoffelSet, CurvatureSet)
    ):
        return value.substitute(bindings)
    if isinstance(value, tuple):
        return tuple(_substitute_tree(item, bindings) for item in value)
    raise TypeError(f"cannot substitute in {type(value).__name__}")
