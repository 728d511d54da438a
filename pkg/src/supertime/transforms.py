"""First-order superdiffeomorphisms of supertime.

The infinitesimal coordinate shift is

    dt       = A(t) + alpha~(t) theta + beta~(t) thetabar + beta(t) theta thetabar
    dtheta   = gamma~(t) + C(t) theta + D(t) thetabar + epsilon(t) theta thetabar
    dthetabar= delta~(t) + F(t) theta + G(t) thetabar + xi(t) theta thetabar

with twelve parameter functions of t.  The tilde parameters are odd
supernumbers, which the two-generator algebra of SuperFunction cannot
host directly, so transforms work in a first-order extension

    value = P + lam*R + kap*Q,        P, R, Q SuperFunctions,

where lam is an even infinitesimal and kap an odd one, with
lam^2 = kap^2 = lam*kap = 0.  Even diffeo parameters ride lam, odd ones
ride kap; products of two parameters then vanish automatically, which is
exactly the first-order truncation the transformation laws call for.

Parity bookkeeping: each coordinate shift must carry the parity of its
coordinate.  That forces the theta-thetabar coefficients of the odd
shifts (epsilon, xi) to be odd parameters like the tildes, while beta in
the even shift stays even; any other assignment breaks the slot grading
of the transformed metric, which is a shipped postcondition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .grassmann import THETA, THETABAR, Parity, SuperFunction
from .scalars import Scalarish, ScalarExpr, sym
from .supermatrix import INDEX_GRADING, SuperMatrix3, smat_mul
from .geometry import Metric, metric_from_vierbein

__all__ = [
    "ExtendedSuperFunction",
    "DiffeoParameters",
    "grade_involution",
    "xi_components",
    "metric_transform",
    "vierbein_transform",
    "transform_consistency_residual",
    "graded_symmetry_residual",
]


def grade_involution(f: SuperFunction) -> SuperFunction:
    """Flip the sign of the odd part; the automorphism that commutes kap past f."""
    return SuperFunction(f.u1, -f.ut, -f.utb, f.utbt)


_flip = {Parity.EVEN: Parity.ODD, Parity.ODD: Parity.EVEN}


@dataclass(frozen=True)
class ExtendedSuperFunction:
    """P + lam*R + kap*Q with nilpotent markers lam (even) and kap (odd)."""

    base: SuperFunction
    even_lin: SuperFunction
    odd_lin: SuperFunction

    # -- construction ---------------------------------------------------------

    @staticmethod
    def lift(value) -> "ExtendedSuperFunction":
        if isinstance(value, ExtendedSuperFunction):
            return value
        coerced = SuperFunction._coerce(value)
        if coerced is NotImplemented:
            return NotImplemented
        zero = SuperFunction.zero()
        return ExtendedSuperFunction(coerced, zero, zero)

    @staticmethod
    def zero() -> "ExtendedSuperFunction":
        z = SuperFunction.zero()
        return ExtendedSuperFunction(z, z, z)

    @staticmethod
    def even_marker(part: SuperFunction) -> "ExtendedSuperFunction":
        z = SuperFunction.zero()
        return ExtendedSuperFunction(z, part, z)

    @staticmethod
    def odd_marker(part: SuperFunction) -> "ExtendedSuperFunction":
        z = SuperFunction.zero()
        return ExtendedSuperFunction(z, z, part)

    # -- structure ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.base.is_zero and self.even_lin.is_zero and self.odd_lin.is_zero

    def first_order(self) -> tuple[SuperFunction, SuperFunction, SuperFunction]:
        return (self.base, self.even_lin, self.odd_lin)

    def parity_matches(self, required: Parity) -> bool:
        """kap flips the parity of what it multiplies."""
        return (
            self.base.parity_matches(required)
            and self.even_lin.parity_matches(required)
            and self.odd_lin.parity_matches(_flip[required])
        )

    # -- ring operations --------------------------------------------------------

    def __add__(self, other) -> "ExtendedSuperFunction":
        other = ExtendedSuperFunction.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtendedSuperFunction(
            self.base + other.base,
            self.even_lin + other.even_lin,
            self.odd_lin + other.odd_lin,
        )

    __radd__ = __add__

    def __neg__(self) -> "ExtendedSuperFunction":
        return ExtendedSuperFunction(-self.base, -self.even_lin, -self.odd_lin)

    def __sub__(self, other) -> "ExtendedSuperFunction":
        other = ExtendedSuperFunction.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExtendedSuperFunction":
        other = ExtendedSuperFunction.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "ExtendedSuperFunction":
        other = ExtendedSuperFunction.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtendedSuperFunction(
            self.base * other.base,
            self.base * other.even_lin + self.even_lin * other.base,
            grade_involution(self.base) * other.odd_lin
            + self.odd_lin * other.base,
        )

    def __rmul__(self, other) -> "ExtendedSuperFunction":
        other = ExtendedSuperFunction.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    # -- calculus ------------------------------------------------------------------

    def t_derive(self) -> "ExtendedSuperFunction":
        return ExtendedSuperFunction(
            self.base.t_derive(), self.even_lin.t_derive(), self.odd_lin.t_derive()
        )

    def left_deriv(self, v: str) -> "ExtendedSuperFunction":
        # the left derivative slides past kap, picking up a sign
        return ExtendedSuperFunction(
            self.base.left_deriv(v),
            self.even_lin.left_deriv(v),
            -self.odd_lin.left_deriv(v),
        )

    def right_deriv(self, v: str) -> "ExtendedSuperFunction":
        return ExtendedSuperFunction(
            self.base.right_deriv(v),
            self.even_lin.right_deriv(v),
            self.odd_lin.right_deriv(v),
        )

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "ExtendedSuperFunction":
        return ExtendedSuperFunction(
            self.base.substitute(bindings),
            self.even_lin.substitute(bindings),
            self.odd_lin.substitute(bindings),
        )


@dataclass(frozen=True)
class DiffeoParameters:
    """The twelve parameter functions of the infinitesimal diffeomorphism.

    a_shift..beta are even functions of t; the tilde parameters and the
    theta-thetabar coefficients of the odd shifts (epsilon_odd, xi_odd)
    are odd.
    """

    a_shift: ScalarExpr
    c_mix: ScalarExpr
    d_mix: ScalarExpr
    f_mix: ScalarExpr
    g_mix: ScalarExpr
    beta: ScalarExpr
    epsilon_odd: ScalarExpr
    xi_odd: ScalarExpr
    alpha_tilde: ScalarExpr
    beta_tilde: ScalarExpr
    gamma_tilde: ScalarExpr
    delta_tilde: ScalarExpr

    @staticmethod
    def zero() -> "DiffeoParameters":
        z = ScalarExpr.from_int(0)
        return DiffeoParameters(z, z, z, z, z, z, z, z, z, z, z, z)

    @staticmethod
    def generic() -> "DiffeoParameters":
        return DiffeoParameters(
            sym("xiA"),
            sym("xiC"),
            sym("xiD"),
            sym("xiF"),
            sym("xiG"),
            sym("xiBe"),
            sym("xiEp"),
            sym("xiXi"),
            sym("xiAlt"),
            sym("xiBlt"),
            sym("xiGlt"),
            sym("xiDlt"),
        )

    def replace_some(self, **kwargs) -> "DiffeoParameters":
        from dataclasses import replace

        return replace(self, **kwargs)


def xi_components(params: DiffeoParameters) -> tuple[ExtendedSuperFunction, ...]:
    """(xi^t, xi^theta, xi^thetabar) as extended super-functions.

    theta*thetabar coefficients land in the utbt slot with a minus sign
    because the canonical ordering is thetabar*theta.
    """
    zero = ScalarExpr.from_int(0)
    xi_t = ExtendedSuperFunction(
        SuperFunction.zero(),
        SuperFunction(params.a_shift, zero, zero, -params.beta),
        SuperFunction(zero, params.alpha_tilde, params.beta_tilde, zero),
    )
    xi_th = ExtendedSuperFunction(
        SuperFunction.zero(),
        SuperFunction(zero, params.c_mix, params.d_mix, zero),
        SuperFunction(params.gamma_tilde, zero, zero, -params.epsilon_odd),
    )
    xi_thb = ExtendedSuperFunction(
        SuperFunction.zero(),
        SuperFunction(zero, params.f_mix, params.g_mix, zero),
        SuperFunction(params.delta_tilde, zero, zero, -params.xi_odd),
    )
    return (xi_t, xi_th, xi_thb)


def _deriv_left(value, direction: int):
    if direction == 0:
        return value.t_derive()
    return value.left_deriv(THETA if direction == 1 else THETABAR)


def _deriv_right(value, direction: int):
    if direction == 0:
        return value.t_derive()
    return value.right_deriv(THETA if direction == 1 else THETABAR)


def _ext_rows(matrix: SuperMatrix3) -> list[list[ExtendedSuperFunction]]:
    return [
        [ExtendedSuperFunction.lift(entry) for entry in row] for row in matrix.rows
    ]


def metric_transform(
    g: Metric, params: DiffeoParameters
) -> Metric:
    """First-order transform of the lower metric,

        g'_AB = g_AB + (d-> xi^C / dz^A) g_CB + g_AC (xi^C d<- / dz^B)
                + g_AB,C xi^C.

    The returned Metric holds extended entries (base plus the two
    first-order marker parts); with all parameters zero it is the input.
    """
    xi = xi_components(params)
    lower = g.lower
    ext = _ext_rows(lower)
    # d-> xi^C / dz^A and xi^C d<- / dz^B
    dxi_left = [[_deriv_left(xi[c], a) for c in range(3)] for a in range(3)]
    dxi_right = [[_deriv_right(xi[c], b) for c in range(3)] for b in range(3)]
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            acc = ext[a][b]
            for c in range(3):
                acc = acc + dxi_left[a][c] * ext[c][b]
                acc = acc + ext[a][c] * dxi_right[b][c]
                acc = acc + _deriv_right(ext[a][b], c) * xi[c]
            row.append(acc)
        rows.append(tuple(row))
    return Metric.from_lower(SuperMatrix3(tuple(rows)))


def vierbein_transform(
    e: SuperMatrix3, params: DiffeoParameters
) -> SuperMatrix3:
    """First-order transform E'^M_A = (d-> z'_B / dz_A) E^M_B(z').

    The curved index of the vierbein is contravariant (it assembles the
    upper metric), so it transforms with the inverse Jacobian relative
    to the lower-metric law, with the derivative acting on the summed
    index:

        E'^M_A = E^M_A - (xi^A d<- / dz^B) E^M_B + (E^M_A d<- / dz^C) xi^C.

    This is the unique contraction (over derivative hand, index
    placement, factor order and grading sign) for which the two routes
    to the transformed metric agree at first order for every parameter
    of the shift; see docs/CONVENTIONS.md.  The equivalent left-hand
    form is -(-1)^{g(A)g(B)+g(B)} (d-> xi^A / dz^B) E^M_B.
    """
    xi = xi_components(params)
    ext = _ext_rows(e)
    # xi^a d<- / dz^b
    dxi_right = [[_deriv_right(xi[a], b) for b in range(3)] for a in range(3)]
    rows = []
    for m in range(3):
        row = []
        for a in range(3):
            acc = ext[m][a]
            for b in range(3):
                acc = acc - dxi_right[a][b] * ext[m][b]
            for c in range(3):
                acc = acc + _deriv_right(ext[m][a], c) * xi[c]
            row.append(acc)
        rows.append(tuple(row))
    return SuperMatrix3(tuple(rows))


def transform_consistency_residual(
    e: SuperMatrix3, params: DiffeoParameters
) -> SuperMatrix3:
    """Residual of: metric-from-transformed-vierbein == transformed metric.

    Both routes produce first-order objects; rather than inverting an
    extended matrix, the identity is checked as

        g'^ (from E')  *  g'_ (transform law)  ==  identity

    whose base part is exact and whose marker parts collect the first
    order difference.  A zero matrix means the two routes agree.
    """
    g = metric_from_vierbein(e)
    g.lower  # force both sides before extension
    upper_t = metric_from_vierbein(vierbein_transform(e, params)).upper
    lower_t = metric_transform(g, params).lower
    product = smat_mul(upper_t, lower_t)
    return product - SuperMatrix3.identity()


def graded_symmetry_residual(matrix: SuperMatrix3, upper: bool) -> list:
    """Entries of g_AB - (-1)^s g_BA, zero when the metric is graded-symmetric.

    Upper metrics satisfy s = g(A)g(B); lower metrics pick up an extra
    g(A)+g(B) from the index lowering.
    """
    out = []
    for a in range(3):
        for b in range(3):
            s = INDEX_GRADING[a] * INDEX_GRADING[b]
            if not upper:
                s += INDEX_GRADING[a] + INDEX_GRADING[b]
            mirror = matrix.rows[b][a]
            if s % 2:
                mirror = -mirror
            out.append(matrix.rows[a][b] - mirror)
    return out
