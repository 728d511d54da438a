"""Grassmann algebra over the generators {theta, thetabar}.

A SuperFunction is an element

    f = u1 + ut*theta + utb*thetabar + utbt*thetabar*theta

with ScalarExpr components.  The canonical even product is thetabar*theta;
any theta*thetabar arising in products is rewritten as -thetabar*theta.
Coefficients commute — oddness of objects like gamma = gammath*theta +
gammathb*thetabar lives entirely in their generator content.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Union

from .errors import NoBody
from .scalars import ONE, ZERO, Scalarish, ScalarExpr

THETA = "theta"
THETABAR = "thetabar"
_GENERATORS = (THETA, THETABAR)


class Parity(Enum):
    EVEN = 0
    ODD = 1
    MIXED = 2

    def __mul__(self, other: "Parity") -> "Parity":
        if self is Parity.MIXED or other is Parity.MIXED:
            return Parity.MIXED
        return Parity((self.value + other.value) % 2)


Superish = Union["SuperFunction", ScalarExpr, int, Fraction]


@dataclass(frozen=True)
class SuperFunction:
    """Element of the Grassmann algebra Lambda_2 with scalar coefficients."""

    u1: ScalarExpr
    ut: ScalarExpr
    utb: ScalarExpr
    utbt: ScalarExpr

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def scalar(value: Scalarish) -> "SuperFunction":
        return SuperFunction(ScalarExpr._coerce(value), ZERO, ZERO, ZERO)

    @staticmethod
    def theta() -> "SuperFunction":
        return SuperFunction(ZERO, ONE, ZERO, ZERO)

    @staticmethod
    def thetabar() -> "SuperFunction":
        return SuperFunction(ZERO, ZERO, ONE, ZERO)

    @staticmethod
    def tbt() -> "SuperFunction":
        """The canonical even product thetabar*theta."""
        return SuperFunction(ZERO, ZERO, ZERO, ONE)

    @staticmethod
    def odd(coef_theta: Scalarish, coef_thetabar: Scalarish) -> "SuperFunction":
        return SuperFunction(
            ZERO,
            ScalarExpr._coerce(coef_theta),
            ScalarExpr._coerce(coef_thetabar),
            ZERO,
        )

    @staticmethod
    def even(body: Scalarish, soul: Scalarish = 0) -> "SuperFunction":
        return SuperFunction(
            ScalarExpr._coerce(body), ZERO, ZERO, ScalarExpr._coerce(soul)
        )

    @staticmethod
    def zero() -> "SuperFunction":
        return _ZERO_SF

    @staticmethod
    def one() -> "SuperFunction":
        return _ONE_SF

    @staticmethod
    def _coerce(value: Superish) -> "SuperFunction":
        if isinstance(value, SuperFunction):
            return value
        coerced = ScalarExpr._coerce(value)
        if coerced is NotImplemented:
            return NotImplemented
        return SuperFunction.scalar(coerced)

    # -- structure ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return (
            self.u1.is_zero
            and self.ut.is_zero
            and self.utb.is_zero
            and self.utbt.is_zero
        )

    def parity(self) -> Parity:
        even = self.ut.is_zero and self.utb.is_zero
        odd = self.u1.is_zero and self.utbt.is_zero
        if even:
            return Parity.EVEN
        if odd:
            return Parity.ODD
        return Parity.MIXED

    def parity_matches(self, required: Parity) -> bool:
        """Zero matches any parity slot; otherwise parity must agree."""
        if self.is_zero:
            return True
        return self.parity() is required

    def body(self) -> ScalarExpr:
        return self.u1

    def soul(self) -> "SuperFunction":
        return SuperFunction(ZERO, self.ut, self.utb, self.utbt)

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return SuperFunction(
            self.u1 + other.u1,
            self.ut + other.ut,
            self.utb + other.utb,
            self.utbt + other.utbt,
        )

    __radd__ = __add__

    def __neg__(self) -> "SuperFunction":
        return SuperFunction(-self.u1, -self.ut, -self.utb, -self.utbt)

    def __sub__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        x1, xt, xtb, xs = self.u1, self.ut, self.utb, self.utbt
        y1, yt, ytb, ys = other.u1, other.ut, other.utb, other.utbt
        # theta*thetabar = -thetabar*theta gives the two cross signs below
        return SuperFunction(
            x1 * y1,
            x1 * yt + xt * y1,
            x1 * ytb + xtb * y1,
            x1 * ys + xs * y1 - xt * ytb + xtb * yt,
        )

    def __rmul__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other: Superish) -> "SuperFunction":
        other = SuperFunction._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * super_inverse(other)

    def __pow__(self, exponent: int) -> "SuperFunction":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return super_inverse(self) ** (-exponent)
        acc = _ONE_SF
        for _ in range(exponent):
            acc = acc * self
        return acc

    # -- calculus ------------------------------------------------------------------

    def t_derive(self) -> "SuperFunction":
        return SuperFunction(
            self.u1.derive(),
            self.ut.derive(),
            self.utb.derive(),
            self.utbt.derive(),
        )

    def left_deriv(self, v: str) -> "SuperFunction":
        if v == THETA:
            return SuperFunction(self.ut, ZERO, -self.utbt, ZERO)
        if v == THETABAR:
            return SuperFunction(self.utb, self.utbt, ZERO, ZERO)
        raise ValueError(f"unknown generator {v!r}")

    def right_deriv(self, v: str) -> "SuperFunction":
        if v == THETA:
            return SuperFunction(self.ut, ZERO, self.utbt, ZERO)
        if v == THETABAR:
            return SuperFunction(self.utb, -self.utbt, ZERO, ZERO)
        raise ValueError(f"unknown generator {v!r}")

    def berezin_integrate(self) -> ScalarExpr:
        return self.utbt

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "SuperFunction":
        return SuperFunction(
            self.u1.substitute(bindings),
            self.ut.substitute(bindings),
            self.utb.substitute(bindings),
            self.utbt.substitute(bindings),
        )

    # -- rendering -------------------------------------------------------------------

    def __str__(self) -> str:
        from .parsing import super_to_text

        return super_to_text(self)

    def __repr__(self) -> str:
        return f"SuperFunction({self})"


_ZERO_SF = SuperFunction(ZERO, ZERO, ZERO, ZERO)
_ONE_SF = SuperFunction(ONE, ZERO, ZERO, ZERO)


def super_mul(x: Superish, y: Superish) -> SuperFunction:
    return SuperFunction._coerce(x) * SuperFunction._coerce(y)


def super_inverse(z: Superish) -> SuperFunction:
    """Multiplicative inverse: 1/body - soul/body^2 (soul^2 = 0 here)."""
    z = SuperFunction._coerce(z)
    if z.u1.is_zero:
        raise NoBody("supernumber has zero body, no inverse exists")
    b = z.u1
    b2 = b * b
    return SuperFunction(ONE / b, -z.ut / b2, -z.utb / b2, -z.utbt / b2)


def left_deriv(f: Superish, v: str) -> SuperFunction:
    return SuperFunction._coerce(f).left_deriv(v)


def right_deriv(f: Superish, v: str) -> SuperFunction:
    return SuperFunction._coerce(f).right_deriv(v)


def berezin_integrate(f: Superish) -> ScalarExpr:
    return SuperFunction._coerce(f).berezin_integrate()


def t_derive(f: Superish) -> SuperFunction:
    return SuperFunction._coerce(f).t_derive()
