"""The two vierbein families over supertime and their curvature analyses.

The classical family (CPI) carries a unit-modulus time-time entry and a
constrained even 2x2 block; the quantum family (QPI) relaxes the block
determinant to a regulator eps and adds odd entries in the time row.
Both reduce to five (respectively seven) pi parameters in which the
metric, the Christoffel symbols and the curvatures take closed forms.

The flatness analysis substitutes the zero-curvature chain into the
classical curvature and reports the residuals and the dimension of the
solution surface.  The obstruction analysis does the same for the
quantum curvature and then demonstrates, four independent ways, that
the true quantum limit cannot reach the flat surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (
    ConstraintViolated,
    DivisionByZeroExpr,
    EpsilonZero,
    GradingViolation,
    SingularBlockB,
)
from .geometry import (
    DEFAULT_CONVENTIONS,
    ChristoffelSet,
    Conventions,
    CurvatureSet,
    Metric,
    christoffel,
    kill_primes,
    metric_from_vierbein,
    ricci_scalar,
    ricci_tensor,
    riemann,
)
from .grassmann import Parity, SuperFunction, super_inverse
from .scalars import I_UNIT, ONE, ScalarExpr, Scalarish, sym
from .supermatrix import SuperMatrix3

__all__ = [
    "CPIRawParams",
    "CPIPiParams",
    "QPIRawParams",
    "QPIPiParams",
    "SubstitutionChain",
    "PipelineResult",
    "FlatnessReport",
    "ObstructionReport",
    "cpi_family1",
    "cpi_family2",
    "cpi_vierbein",
    "cpi_pis",
    "cpi_metric",
    "cpi_metric_general",
    "cpi_general_pipeline",
    "cpi_pipeline",
    "cpi_flatness",
    "qpi_family1",
    "qpi_family2",
    "qpi_vierbein",
    "qpi_pqr",
    "qpi_pis",
    "qpi_metric",
    "qpi_pipeline",
    "qpi_obstruction",
    "pi6_closed_form",
    "interpolating_determinant",
]


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return sign


def _scalar(value: Scalarish) -> ScalarExpr:
    coerced = ScalarExpr._coerce(value)
    if coerced is NotImplemented:
        raise TypeError(f"cannot use {value!r} as a scalar")
    return coerced


def _even_entry(value, name: str) -> SuperFunction:
    if not isinstance(value, SuperFunction):
        value = SuperFunction.even(_scalar(value))
    if not value.parity_matches(Parity.EVEN):
        raise GradingViolation(f"block entry {name} must be even")
    return value


# ---------------------------------------------------------------------------
# classical family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CPIRawParams:
    """Entries of the classical vierbein [[a,0,0],[gamma,b,c],[delta,d,e]].

    ``sign`` is the time-time entry a = +-1.  The four odd entries are
    held componentwise (gamma = gamma_theta theta + gamma_thetabar
    thetabar, same for delta); b, c, d, e are even SuperFunctions whose
    bodies and souls are reachable as bB, bS, ....

    Valid parameters satisfy the unit-Berezinian pair
        body: b_B e_B - c_B d_B = a
        soul: b_S e_B + b_B e_S - c_S d_B - c_B d_S = 0;
    ``check`` raises ConstraintViolated otherwise.
    """

    sign: int = 1
    gamma_theta: ScalarExpr = field(default_factory=lambda: sym("gammath"))
    gamma_thetabar: ScalarExpr = field(default_factory=lambda: sym("gammathb"))
    delta_theta: ScalarExpr = field(default_factory=lambda: sym("deltath"))
    delta_thetabar: ScalarExpr = field(default_factory=lambda: sym("deltathb"))
    b: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("bB"), sym("bS"))
    )
    c: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("cB"), sym("cS"))
    )
    d: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("dB"), sym("dS"))
    )
    e: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("eB"), sym("eS"))
    )

    def __post_init__(self) -> None:
        _check_sign(self.sign)
        for name in ("gamma_theta", "gamma_thetabar", "delta_theta", "delta_thetabar"):
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        for name in ("b", "c", "d", "e"):
            object.__setattr__(self, name, _even_entry(getattr(self, name), name))

    @classmethod
    def flat(cls, sign: int = 1) -> "CPIRawParams":
        return cls(
            sign=sign,
            gamma_theta=0, gamma_thetabar=0, delta_theta=0, delta_thetabar=0,
            b=SuperFunction.even(1), c=SuperFunction.even(0),
            d=SuperFunction.even(0), e=SuperFunction.even(sign),
        )

    def constraint_residuals(self) -> tuple[ScalarExpr, ScalarExpr]:
        det = self.b * self.e - self.c * self.d
        return det.u1 - self.sign, det.utbt

    def check(self) -> None:
        body, soul = self.constraint_residuals()
        if not body.is_zero:
            raise ConstraintViolated(
                "b_B e_B - c_B d_B = a", residual=body
            )
        if not soul.is_zero:
            raise ConstraintViolated(
                "b_S e_B + b_B e_S - c_S d_B - c_B d_S = 0", residual=soul
            )

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "CPIRawParams":
        return CPIRawParams(
            self.sign,
            self.gamma_theta.substitute(bindings),
            self.gamma_thetabar.substitute(bindings),
            self.delta_theta.substitute(bindings),
            self.delta_thetabar.substitute(bindings),
            self.b.substitute(bindings),
            self.c.substitute(bindings),
            self.d.substitute(bindings),
            self.e.substitute(bindings),
        )


_CPI_FAMILY1_FREE = (
    "gammath", "gammathb", "deltath", "deltathb", "bB", "bS", "dB", "dS", "eS",
)
_CPI_FAMILY2_FREE = (
    "gammath", "gammathb", "deltath", "deltathb", "cB", "cS", "dB", "dS", "eB", "eS",
)


def _free_table(names: tuple[str, ...], overrides: Mapping[str, Scalarish]) -> dict:
    unknown = set(overrides) - set(names)
    if unknown:
        raise TypeError(f"unknown parameters: {sorted(unknown)}")
    return {n: _scalar(overrides.get(n, sym(n))) for n in names}


def cpi_family1(sign: int = 1, **overrides: Scalarish) -> CPIRawParams:
    """First solution family of the classical constraints: e_B = 0.

    With e_B = 0 the pair forces c_B = -a/d_B and
    c_S = (a d_S + d_B b_B e_S)/d_B**2; everything else stays free.
    """
    _check_sign(sign)
    v = _free_table(_CPI_FAMILY1_FREE, overrides)
    a = ScalarExpr.from_int(sign)
    c_body = -a / v["dB"]
    c_soul = (a * v["dS"] + v["dB"] * v["bB"] * v["eS"]) / (v["dB"] * v["dB"])
    return CPIRawParams(
        sign=sign,
        gamma_theta=v["gammath"], gamma_thetabar=v["gammathb"],
        delta_theta=v["deltath"], delta_thetabar=v["deltathb"],
        b=SuperFunction.even(v["bB"], v["bS"]),
        c=SuperFunction.even(c_body, c_soul),
        d=SuperFunction.even(v["dB"], v["dS"]),
        e=SuperFunction.even(0, v["eS"]),
    )


def cpi_family2(sign: int = 1, **overrides: Scalarish) -> CPIRawParams:
    """Second solution family of the classical constraints: e_B != 0.

    Solves the pair for b: b_B = (a + c_B d_B)/e_B and
    b_S = (-a e_S - c_B d_B e_S + c_S d_B e_B + c_B d_S e_B)/e_B**2.
    """
    _check_sign(sign)
    v = _free_table(_CPI_FAMILY2_FREE, overrides)
    a = ScalarExpr.from_int(sign)
    b_body = (a + v["cB"] * v["dB"]) / v["eB"]
    b_soul = (
        -a * v["eS"]
        - v["cB"] * v["dB"] * v["eS"]
        + v["cS"] * v["dB"] * v["eB"]
        + v["cB"] * v["dS"] * v["eB"]
    ) / (v["eB"] * v["eB"])
    return CPIRawParams(
        sign=sign,
        gamma_theta=v["gammath"], gamma_thetabar=v["gammathb"],
        delta_theta=v["deltath"], delta_thetabar=v["deltathb"],
        b=SuperFunction.even(b_body, b_soul),
        c=SuperFunction.even(v["cB"], v["cS"]),
        d=SuperFunction.even(v["dB"], v["dS"]),
        e=SuperFunction.even(v["eB"], v["eS"]),
    )


def cpi_vierbein(raw: CPIRawParams) -> SuperMatrix3:
    """The classical vierbein; raises ConstraintViolated on invalid input."""
    raw.check()
    gamma = SuperFunction.odd(raw.gamma_theta, raw.gamma_thetabar)
    delta = SuperFunction.odd(raw.delta_theta, raw.delta_thetabar)
    return SuperMatrix3.from_rows(
        (
            (SuperFunction.scalar(raw.sign), SuperFunction.zero(), SuperFunction.zero()),
            (gamma, raw.b, raw.c),
            (delta, raw.d, raw.e),
        )
    )


@dataclass(frozen=True)
class CPIPiParams:
    """The five classical pi parameters (pi5 is derived when not given).

    pi1 = gamma_theta e_B - delta_theta c_B        (and thetabar twins)
    pi3 = delta_theta b_B - gamma_theta d_B
    pi5 = gamma_thetabar delta_theta - gamma_theta delta_thetabar,
    which on the constraint surface equals a (pi2 pi3 - pi1 pi4).
    """

    sign: int = 1
    pi1: ScalarExpr = field(default_factory=lambda: sym("pi1"))
    pi2: ScalarExpr = field(default_factory=lambda: sym("pi2"))
    pi3: ScalarExpr = field(default_factory=lambda: sym("pi3"))
    pi4: ScalarExpr = field(default_factory=lambda: sym("pi4"))
    pi5_explicit: ScalarExpr | None = None
    time_dependent: bool = False

    def __post_init__(self) -> None:
        _check_sign(self.sign)
        for name in ("pi1", "pi2", "pi3", "pi4"):
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        if self.pi5_explicit is not None:
            object.__setattr__(self, "pi5_explicit", _scalar(self.pi5_explicit))

    @classmethod
    def symbolic(cls, sign: int = 1, time_dependent: bool = False) -> "CPIPiParams":
        return cls(sign=sign, time_dependent=time_dependent)

    @property
    def phi(self) -> ScalarExpr:
        return self.pi2 * self.pi3 - self.pi1 * self.pi4

    @property
    def pi5(self) -> ScalarExpr:
        if self.pi5_explicit is not None:
            return self.pi5_explicit
        return self.sign * self.phi

    def pi5_identity_residual(self) -> ScalarExpr:
        """pi5 - a (pi2 pi3 - pi1 pi4); zero on the constraint surface."""
        return self.pi5 - self.sign * self.phi

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "CPIPiParams":
        return CPIPiParams(
            self.sign,
            self.pi1.substitute(bindings),
            self.pi2.substitute(bindings),
            self.pi3.substitute(bindings),
            self.pi4.substitute(bindings),
            None
            if self.pi5_explicit is None
            else self.pi5_explicit.substitute(bindings),
            self.time_dependent,
        )


def cpi_pis(raw: CPIRawParams) -> CPIPiParams:
    """Reduce valid raw parameters to the five pi parameters."""
    raw.check()
    pi1, pi2, pi3, pi4, pi5 = _base_pis(
        raw.gamma_theta, raw.gamma_thetabar,
        raw.delta_theta, raw.delta_thetabar,
        raw.b.u1, raw.c.u1, raw.d.u1, raw.e.u1,
    )
    return CPIPiParams(raw.sign, pi1, pi2, pi3, pi4, pi5_explicit=pi5)


def _base_pis(g_t, g_tb, d_t, d_tb, bB, cB, dB, eB):
    pi1 = g_t * eB - d_t * cB
    pi2 = g_tb * eB - d_tb * cB
    pi3 = d_t * bB - g_t * dB
    pi4 = d_tb * bB - g_tb * dB
    pi5 = g_tb * d_t - g_t * d_tb
    return pi1, pi2, pi3, pi4, pi5


def _qpi_soul_rhs(sign, a_s, eps, hbar, a_t, a_tb, b_t, b_tb, pi1, pi2, pi3, pi4):
    """Right side of the quantum soul constraint, eps a_S - i a_B/hbar - eps p.

    The closed form of p makes eps p polynomial:
    eps p = -a_B (alpha_t pi2 - alpha_tb pi1 + beta_t pi4 - beta_tb pi3).
    """
    aB = ScalarExpr.from_int(sign)
    extras = aB * (a_t * pi2 - a_tb * pi1 + b_t * pi4 - b_tb * pi3)
    return eps * a_s - I_UNIT * aB / hbar + extras


def _pi_form_upper(pi1, pi2, pi3, pi4, pi5, block, block_soul) -> SuperMatrix3:
    """Upper metric common to both families.

        [[1 - 2 pi5 tbt,  -pi3 t - pi4 tb,   pi1 t + pi2 tb ],
         [ (same),         0,                block + soul tbt],
         [ (same),        -block - soul tbt, 0               ]]
    """
    g00 = SuperFunction(ONE, ScalarExpr.from_int(0), ScalarExpr.from_int(0), -2 * pi5)
    g01 = SuperFunction.odd(-pi3, -pi4)
    g02 = SuperFunction.odd(pi1, pi2)
    g12 = SuperFunction.even(block, block_soul)
    zero = SuperFunction.zero()
    return SuperMatrix3(
        (
            (g00, g01, g02),
            (g01, zero, g12),
            (g02, -g12, zero),
        )
    )


def cpi_metric(p: CPIPiParams) -> Metric:
    """Upper metric of the classical family in pi form (a = +-1)."""
    upper = _pi_form_upper(
        p.pi1, p.pi2, p.pi3, p.pi4, p.pi5,
        ScalarExpr.from_int(p.sign), ScalarExpr.from_int(0),
    )
    return Metric.from_upper(upper)


def cpi_metric_general(
    pi1: Scalarish, pi2: Scalarish, pi3: Scalarish, pi4: Scalarish, a: Scalarish
) -> Metric:
    """Classical pi-form metric for a general (symbolic) block determinant a.

    pi5 is expanded as (pi2 pi3 - pi1 pi4)/a, the identity that defines it
    on the constraint surface.
    """
    pi1, pi2, pi3, pi4, a = (_scalar(v) for v in (pi1, pi2, pi3, pi4, a))
    pi5 = (pi2 * pi3 - pi1 * pi4) / a
    upper = _pi_form_upper(pi1, pi2, pi3, pi4, pi5, a, ScalarExpr.from_int(0))
    return Metric.from_upper(upper)


# ---------------------------------------------------------------------------
# quantum family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QPIRawParams:
    """Entries of the quantum vierbein [[aB + aS tbt, alpha, beta], ...].

    ``sign`` is the body a_B = +-1 of the time-time entry, ``a_s`` its
    soul; alpha and beta are the odd time-row entries, held componentwise.
    Valid parameters satisfy the regulated pair
        body: b_B e_B - c_B d_B = a_B eps
        soul: b_S e_B + b_B e_S - c_S d_B - c_B d_S = eps a_S - i a_B/hbar - eps p,
    where eps p = -a_B (alpha_t pi2 - alpha_tb pi1 + beta_t pi4 - beta_tb pi3)
    collects the odd time-row entries against the base pi combinations.
    The widely quoted form without the eps p term is its alpha = beta = 0
    specialization.
    """

    sign: int = 1
    a_s: ScalarExpr = field(default_factory=lambda: sym("aS"))
    eps: ScalarExpr = field(default_factory=lambda: sym("eps"))
    hbar: ScalarExpr = field(default_factory=lambda: sym("hbar"))
    alpha_theta: ScalarExpr = field(default_factory=lambda: sym("alphath"))
    alpha_thetabar: ScalarExpr = field(default_factory=lambda: sym("alphathb"))
    beta_theta: ScalarExpr = field(default_factory=lambda: sym("betath"))
    beta_thetabar: ScalarExpr = field(default_factory=lambda: sym("betathb"))
    gamma_theta: ScalarExpr = field(default_factory=lambda: sym("gammath"))
    gamma_thetabar: ScalarExpr = field(default_factory=lambda: sym("gammathb"))
    delta_theta: ScalarExpr = field(default_factory=lambda: sym("deltath"))
    delta_thetabar: ScalarExpr = field(default_factory=lambda: sym("deltathb"))
    b: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("bB"), sym("bS"))
    )
    c: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("cB"), sym("cS"))
    )
    d: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("dB"), sym("dS"))
    )
    e: SuperFunction = field(
        default_factory=lambda: SuperFunction.even(sym("eB"), sym("eS"))
    )

    def __post_init__(self) -> None:
        _check_sign(self.sign)
        scalar_fields = (
            "a_s", "eps", "hbar",
            "alpha_theta", "alpha_thetabar", "beta_theta", "beta_thetabar",
            "gamma_theta", "gamma_thetabar", "delta_theta", "delta_thetabar",
        )
        for name in scalar_fields:
            object.__setattr__(self, name, _scalar(getattr(self, name)))
        for name in ("b", "c", "d", "e"):
            object.__setattr__(self, name, _even_entry(getattr(self, name), name))

    def constraint_residuals(self) -> tuple[ScalarExpr, ScalarExpr]:
        det = self.b * self.e - self.c * self.d
        pi1, pi2, pi3, pi4, _ = _base_pis(
            self.gamma_theta, self.gamma_thetabar,
            self.delta_theta, self.delta_thetabar,
            self.b.u1, self.c.u1, self.d.u1, self.e.u1,
        )
        rhs = _qpi_soul_rhs(
            self.sign, self.a_s, self.eps, self.hbar,
            self.alpha_theta, self.alpha_thetabar,
            self.beta_theta, self.beta_thetabar,
            pi1, pi2, pi3, pi4,
        )
        return det.u1 - self.sign * self.eps, det.utbt - rhs

    def check(self) -> None:
        body, soul = self.constraint_residuals()
        if not body.is_zero:
            raise ConstraintViolated(
                "b_B e_B - c_B d_B = a_B eps", residual=body
            )
        if not soul.is_zero:
            raise ConstraintViolated(
                "b_S e_B + b_B e_S - c_S d_B - c_B d_S"
                " = eps a_S - i a_B/hbar - eps p",
                residual=soul,
            )

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "QPIRawParams":
        values = {
            name: getattr(self, name).substitute(bindings)
            for name in (
                "a_s", "eps", "hbar",
                "alpha_theta", "alpha_thetabar", "beta_theta", "beta_thetabar",
                "gamma_theta", "gamma_thetabar", "delta_theta", "delta_thetabar",
                "b", "c", "d", "e",
            )
        }
        return QPIRawParams(self.sign, **values)


_QPI_COMMON_FREE = (
    "alphath", "alphathb", "betath", "betathb",
    "gammath", "gammathb", "deltath", "deltathb",
)
_QPI_FAMILY1_FREE = _QPI_COMMON_FREE + ("bB", "bS", "dB", "dS", "eS")
_QPI_FAMILY2_FREE = _QPI_COMMON_FREE + ("cB", "cS", "dB", "dS", "eB", "eS")


def _qpi_consts(overrides: dict) -> tuple[ScalarExpr, ScalarExpr, ScalarExpr]:
    a_s = _scalar(overrides.pop("aS", sym("aS")))
    eps = _scalar(overrides.pop("eps", sym("eps")))
    hbar = _scalar(overrides.pop("hbar", sym("hbar")))
    return a_s, eps, hbar


def qpi_family1(sign: int = 1, **overrides: Scalarish) -> QPIRawParams:
    """First solution family of the quantum constraints: e_B = 0.

    c_B = -a_B eps/d_B, and c_S solves the soul constraint:
    c_S = (a_B eps d_S + b_B e_S d_B - rhs d_B)/d_B**2 with
    rhs = eps a_S - i a_B/hbar - eps p.
    """
    _check_sign(sign)
    overrides = dict(overrides)
    a_s, eps, hbar = _qpi_consts(overrides)
    v = _free_table(_QPI_FAMILY1_FREE, overrides)
    aB = ScalarExpr.from_int(sign)
    c_body = -aB * eps / v["dB"]
    pi1, pi2, pi3, pi4, _ = _base_pis(
        v["gammath"], v["gammathb"], v["deltath"], v["deltathb"],
        v["bB"], c_body, v["dB"], ScalarExpr.from_int(0),
    )
    rhs = _qpi_soul_rhs(
        sign, a_s, eps, hbar,
        v["alphath"], v["alphathb"], v["betath"], v["betathb"],
        pi1, pi2, pi3, pi4,
    )
    c_soul = (
        aB * eps * v["dS"] + v["bB"] * v["eS"] * v["dB"] - rhs * v["dB"]
    ) / (v["dB"] * v["dB"])
    return QPIRawParams(
        sign=sign, a_s=a_s, eps=eps, hbar=hbar,
        alpha_theta=v["alphath"], alpha_thetabar=v["alphathb"],
        beta_theta=v["betath"], beta_thetabar=v["betathb"],
        gamma_theta=v["gammath"], gamma_thetabar=v["gammathb"],
        delta_theta=v["deltath"], delta_thetabar=v["deltathb"],
        b=SuperFunction.even(v["bB"], v["bS"]),
        c=SuperFunction.even(c_body, c_soul),
        d=SuperFunction.even(v["dB"], v["dS"]),
        e=SuperFunction.even(0, v["eS"]),
    )


def qpi_family2(sign: int = 1, **overrides: Scalarish) -> QPIRawParams:
    """Second solution family of the quantum constraints: e_B != 0.

    b_B = (a_B eps + c_B d_B)/e_B, and b_S solves the soul constraint:
    b_S = (rhs - b_B e_S + c_S d_B + c_B d_S)/e_B with
    rhs = eps a_S - i a_B/hbar - eps p.
    """
    _check_sign(sign)
    overrides = dict(overrides)
    a_s, eps, hbar = _qpi_consts(overrides)
    v = _free_table(_QPI_FAMILY2_FREE, overrides)
    aB = ScalarExpr.from_int(sign)
    b_body = (aB * eps + v["cB"] * v["dB"]) / v["eB"]
    pi1, pi2, pi3, pi4, _ = _base_pis(
        v["gammath"], v["gammathb"], v["deltath"], v["deltathb"],
        b_body, v["cB"], v["dB"], v["eB"],
    )
    rhs = _qpi_soul_rhs(
        sign, a_s, eps, hbar,
        v["alphath"], v["alphathb"], v["betath"], v["betathb"],
        pi1, pi2, pi3, pi4,
    )
    b_soul = (
        rhs - b_body * v["eS"] + v["cS"] * v["dB"] + v["cB"] * v["dS"]
    ) / v["eB"]
    return QPIRawParams(
        sign=sign, a_s=a_s, eps=eps, hbar=hbar,
        alpha_theta=v["alphath"], alpha_thetabar=v["alphathb"],
        beta_theta=v["betath"], beta_thetabar=v["betathb"],
        gamma_theta=v["gammath"], gamma_thetabar=v["gammathb"],
        delta_theta=v["deltath"], delta_thetabar=v["deltathb"],
        b=SuperFunction.even(b_body, b_soul),
        c=SuperFunction.even(v["cB"], v["cS"]),
        d=SuperFunction.even(v["dB"], v["dS"]),
        e=SuperFunction.even(v["eB"], v["eS"]),
    )


def qpi_vierbein(raw: QPIRawParams) -> SuperMatrix3:
    """The quantum vierbein; raises ConstraintViolated on invalid input."""
    raw.check()
    alpha = SuperFunction.odd(raw.alpha_theta, raw.alpha_thetabar)
    beta = SuperFunction.odd(raw.beta_theta, raw.beta_thetabar)
    gamma = SuperFunction.odd(raw.gamma_theta, raw.gamma_thetabar)
    delta = SuperFunction.odd(raw.delta_theta, raw.delta_thetabar)
    corner = SuperFunction.even(ScalarExpr.from_int(raw.sign), raw.a_s)
    return SuperMatrix3.from_rows(
        (
            (corner, alpha, beta),
            (gamma, raw.b, raw.c),
            (delta, raw.d, raw.e),
        )
    )


def qpi_pqr(raw: QPIRawParams) -> tuple[ScalarExpr, ScalarExpr, ScalarExpr]:
    """The three block-inverse coefficients (p, q, r).

    q + r tbt is the inverse determinant of the even block D = [[b,c],[d,e]]
    and p tbt = (alpha beta) D^{-1} (gamma; delta).  The block determinant
    has body a_B eps, so eps = 0 leaves no inverse (EpsilonZero).
    """
    raw.check()
    det = raw.b * raw.e - raw.c * raw.d
    if det.u1.is_zero:
        raise EpsilonZero("block determinant has zero body (eps = 0)")
    det_inv = super_inverse(det)
    q = det_inv.u1
    r = det_inv.utbt
    alpha = SuperFunction.odd(raw.alpha_theta, raw.alpha_thetabar)
    beta = SuperFunction.odd(raw.beta_theta, raw.beta_thetabar)
    gamma = SuperFunction.odd(raw.gamma_theta, raw.gamma_thetabar)
    delta = SuperFunction.odd(raw.delta_theta, raw.delta_thetabar)
    # D^{-1} = det^{-1} [[e, -c], [-d, b]]
    row = (
        alpha * (det_inv * (raw.e * gamma - raw.c * delta))
        + beta * (det_inv * (-raw.d * gamma + raw.b * delta))
    )
    p = row.utbt
    return p, q, r


@dataclass(frozen=True)
class QPIPiParams:
    """The seven quantum pi parameters plus the derived sigma1 and phi.

    sigma1 = pi2 pi3 - pi1 pi4 - pi5 pi7 and phi = pi2 pi3 - pi1 pi4;
    ``pi6_form`` records which closed form produced pi6 (the default
    "eq69" quantum form, or the "eq72" interpolating variant that
    vanishes in the classical limit).
    """

    sign: int = 1
    pi1: ScalarExpr = field(default_factory=lambda: sym("pi1Q"))
    pi2: ScalarExpr = field(default_factory=lambda: sym("pi2Q"))
    pi3: ScalarExpr = field(default_factory=lambda: sym("pi3Q"))
    pi4: ScalarExpr = field(default_factory=lambda: sym("pi4Q"))
    pi5: ScalarExpr = field(default_factory=lambda: sym("pi5Q"))
    pi6: ScalarExpr = field(default_factory=lambda: sym("pi6Q"))
    pi7: ScalarExpr = field(default_factory=lambda: sym("pi7Q"))
    pi6_form: str = "eq69"
    time_dependent: bool = False

    def __post_init__(self) -> None:
        _check_sign(self.sign)
        if self.pi6_form not in ("eq69", "eq72"):
            raise ValueError(f"unknown pi6 form {self.pi6_form!r}")
        for name in ("pi1", "pi2", "pi3", "pi4", "pi5", "pi6", "pi7"):
            object.__setattr__(self, name, _scalar(getattr(self, name)))

    @classmethod
    def symbolic(
        cls, sign: int = 1, pi6_form: str = "eq69", time_dependent: bool = False
    ) -> "QPIPiParams":
        return cls(sign=sign, pi6_form=pi6_form, time_dependent=time_dependent)

    @property
    def sigma1(self) -> ScalarExpr:
        return self.pi2 * self.pi3 - self.pi1 * self.pi4 - self.pi5 * self.pi7

    @property
    def phi(self) -> ScalarExpr:
        return self.pi2 * self.pi3 - self.pi1 * self.pi4

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "QPIPiParams":
        return QPIPiParams(
            self.sign,
            *(
                getattr(self, name).substitute(bindings)
                for name in ("pi1", "pi2", "pi3", "pi4", "pi5", "pi6", "pi7")
            ),
            pi6_form=self.pi6_form,
            time_dependent=self.time_dependent,
        )


def pi6_closed_form(sign: int = 1, form: str = "eq69") -> ScalarExpr:
    """pi6 in raw symbols, for either closed form.

    eq69 (quantum):       eps aS - i a_B/hbar + extras
    eq72 (interpolating): eps aS - (i/hbar) a_B (1 - eps) + extras
    where extras = a_B(alpha_t pi2 - alpha_tb pi1 + beta_t pi4 - beta_tb pi3)
    + alpha_tb beta_t - alpha_t beta_tb.  The two c-number parts agree for
    |a_B| = 1 at eps = 0; only eq72 vanishes at the classical point.
    """
    _check_sign(sign)
    aB = ScalarExpr.from_int(sign)
    eps, hbar, a_s = sym("eps"), sym("hbar"), sym("aS")
    extras = aB * (
        sym("alphath") * sym("pi2")
        - sym("alphathb") * sym("pi1")
        + sym("betath") * sym("pi4")
        - sym("betathb") * sym("pi3")
    ) + sym("alphathb") * sym("betath") - sym("alphath") * sym("betathb")
    if form == "eq69":
        c_number = eps * a_s - I_UNIT * aB / hbar
    elif form == "eq72":
        c_number = eps * a_s - (I_UNIT / hbar) * aB * (1 - eps)
    else:
        raise ValueError(f"unknown pi6 form {form!r}")
    return c_number + extras


def qpi_pis(raw: QPIRawParams, pi6_form: str = "eq69") -> QPIPiParams:
    """Reduce valid raw parameters to the seven quantum pi parameters."""
    raw.check()
    aB = ScalarExpr.from_int(raw.sign)
    pi1, pi2, pi3, pi4, pi5 = _base_pis(
        raw.gamma_theta, raw.gamma_thetabar,
        raw.delta_theta, raw.delta_thetabar,
        raw.b.u1, raw.c.u1, raw.d.u1, raw.e.u1,
    )
    extras = aB * (
        raw.alpha_theta * pi2
        - raw.alpha_thetabar * pi1
        + raw.beta_theta * pi4
        - raw.beta_thetabar * pi3
    ) + raw.alpha_thetabar * raw.beta_theta - raw.alpha_theta * raw.beta_thetabar
    if pi6_form == "eq69":
        c_number = raw.eps * raw.a_s - I_UNIT * aB / raw.hbar
    elif pi6_form == "eq72":
        c_number = raw.eps * raw.a_s - (I_UNIT / raw.hbar) * aB * (1 - raw.eps)
    else:
        raise ValueError(f"unknown pi6 form {pi6_form!r}")
    return QPIPiParams(
        sign=raw.sign,
        pi1=pi1 + raw.beta_theta * aB,
        pi2=pi2 + raw.beta_thetabar * aB,
        pi3=pi3 - raw.alpha_theta * aB,
        pi4=pi4 - raw.alpha_thetabar * aB,
        pi5=pi5 - aB * raw.a_s,
        pi6=c_number + extras,
        pi7=aB * raw.eps,
        pi6_form=pi6_form,
    )


def qpi_metric(p: QPIPiParams) -> Metric:
    """Upper metric of the quantum family in pi form.

    The theta block carries pi7 + pi6 tbt; pi7 = 0 (the unregulated
    quantum point) leaves the block without a body and the metric without
    a lower side, hence SingularBlockB.
    """
    if p.pi7.is_zero:
        raise SingularBlockB("pi7 = 0: the theta block has no inverse")
    upper = _pi_form_upper(p.pi1, p.pi2, p.pi3, p.pi4, p.pi5, p.pi7, p.pi6)
    return Metric.from_upper(upper)


def interpolating_determinant(eps_val: Scalarish | None = None) -> SuperFunction:
    """The family eps - i (1 - eps) tbt/hbar bridging the two models.

    At eps = 1 it is exactly 1 (classical); at eps = 0 it is the pure
    soul -i tbt/hbar (quantum), which has no super inverse.
    """
    eps = sym("eps") if eps_val is None else _scalar(eps_val)
    soul = -I_UNIT * (1 - eps) / sym("hbar")
    return SuperFunction.even(eps, soul)


# ---------------------------------------------------------------------------
# substitution chains and curvature pipelines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionChain:
    """An ordered list of simultaneous substitution steps.

    Each step is applied at once (images never feed the same step's other
    bindings); later steps see the previous step's output.  With
    ``primes`` the chain follows each binding with its first and second
    time derivatives, so t-dependent expressions stay consistent.
    """

    steps: tuple[tuple[tuple[str, ScalarExpr], ...], ...]

    @classmethod
    def of(cls, *steps: Mapping[str, Scalarish]) -> "SubstitutionChain":
        packed = []
        for step in steps:
            packed.append(
                tuple((str(label), _scalar(image)) for label, image in step.items())
            )
        return cls(tuple(packed))

    def step_maps(self, primes: bool = False) -> tuple[dict, ...]:
        out = []
        for step in self.steps:
            table = {label: image for label, image in step}
            if primes:
                for label, image in step:
                    d1 = image.derive()
                    table[label + "'"] = d1
                    table[label + "''"] = d1.derive()
            out.append(table)
        return tuple(out)

    def apply(self, value, primes: bool = False):
        for table in self.step_maps(primes):
            value = value.substitute(table)
        return value


@dataclass(frozen=True)
class PipelineResult:
    """Metric, Christoffel symbols and curvatures of one model branch."""

    model: str
    sign: int
    time_dependent: bool
    metric: Metric
    christoffels: ChristoffelSet
    curvature: CurvatureSet


def _run_pipeline(
    model: str,
    sign: int,
    metric: Metric,
    *,
    time_dependent: bool,
    prime_bindings: Mapping[str, Scalarish] | None = None,
    conventions: Conventions = DEFAULT_CONVENTIONS,
) -> PipelineResult:
    """Compute Christoffels and curvature; reduce primes afterwards.

    The computation always runs with time-dependent symbols; the static
    variant sets every derivative symbol to zero at the very end, which
    is evaluation of the dynamic result at constant parameters.
    """
    cs = christoffel(metric, conventions)
    curv = ricci_tensor(riemann(cs))
    curv = replace(curv, scalar=ricci_scalar(metric, curv, conventions))
    if time_dependent:
        if prime_bindings:
            cs = cs.substitute(prime_bindings)
            curv = curv.substitute(prime_bindings)
    else:
        cs = kill_primes(cs)
        curv = kill_primes(curv)
    return PipelineResult(model, sign, time_dependent, metric, cs, curv)


_QPI_CONSTANT_PRIMES = {"pi7Q'": 0, "pi7Q''": 0}


def cpi_pipeline(
    p: CPIPiParams | None = None, *, sign: int = 1, time_dependent: bool = False
) -> PipelineResult:
    """Full classical curvature pipeline (cached for the symbolic family)."""
    if p is None:
        return _std_cpi_pipeline(_check_sign(sign), time_dependent)
    return _run_pipeline(
        "cpi", p.sign, cpi_metric(p),
        time_dependent=time_dependent or p.time_dependent,
    )


def qpi_pipeline(
    p: QPIPiParams | None = None, *, sign: int = 1, time_dependent: bool = False
) -> PipelineResult:
    """Full quantum curvature pipeline (cached for the symbolic family).

    pi7 is a constant of the model (a_B eps), so its derivative symbols
    are bound to zero in the time-dependent variant.
    """
    if p is None:
        return _std_qpi_pipeline(_check_sign(sign), time_dependent)
    return _run_pipeline(
        "qpi", p.sign, qpi_metric(p),
        time_dependent=time_dependent or p.time_dependent,
        prime_bindings=_QPI_CONSTANT_PRIMES,
    )


@lru_cache(maxsize=None)
def _std_cpi_pipeline(sign: int, time_dependent: bool) -> PipelineResult:
    p = CPIPiParams.symbolic(sign, time_dependent)
    return _run_pipeline(
        "cpi", sign, cpi_metric(p), time_dependent=time_dependent
    )


@lru_cache(maxsize=None)
def _std_qpi_pipeline(sign: int, time_dependent: bool) -> PipelineResult:
    p = QPIPiParams.symbolic(sign, time_dependent=time_dependent)
    return _run_pipeline(
        "qpi", sign, qpi_metric(p),
        time_dependent=time_dependent,
        prime_bindings=_QPI_CONSTANT_PRIMES,
    )


@lru_cache(maxsize=None)
def cpi_general_pipeline(time_dependent: bool = False) -> PipelineResult:
    """Classical pipeline with the block determinant a kept symbolic.

    This is the form the reference tables are stated in; the standard
    sign=+-1 pipelines are its a -> +-1 specializations.
    """
    metric = cpi_metric_general(
        sym("pi1"), sym("pi2"), sym("pi3"), sym("pi4"), sym("a")
    )
    return _run_pipeline(
        "cpi-general", 1, metric, time_dependent=time_dependent
    )


@lru_cache(maxsize=None)
def _general_cpi_scalar_at_quantum_pis() -> SuperFunction:
    """The classical curvature scalar evaluated at the quantum pi symbols.

    Uses the general block determinant a -> pi7; this is the classical
    functional form that appears inside the quantum curvature.
    """
    metric = cpi_metric_general(
        sym("pi1Q"), sym("pi2Q"), sym("pi3Q"), sym("pi4Q"), sym("pi7Q")
    )
    result = _run_pipeline("cpi-general", 1, metric, time_dependent=False)
    return result.curvature.scalar


# ---------------------------------------------------------------------------
# flatness analysis (classical)
# ---------------------------------------------------------------------------


_PI_LABELS = ("pi1", "pi2", "pi3", "pi4")


@dataclass(frozen=True)
class FlatnessReport:
    """Outcome of driving the classical curvature to zero.

    ``steps`` is the substitution chain that was applied; ``implied``
    lists relations that follow from it without further choice.  The
    residuals are the scalar curvature and Ricci tensor after the chain;
    ``flat`` states that every one of them is exactly zero.
    """

    sign: int
    time_dependent: bool
    steps: tuple[tuple[tuple[str, ScalarExpr], ...], ...]
    implied: tuple[str, ...]
    scalar_before: SuperFunction
    scalar_after: SuperFunction
    ricci_after: SuperMatrix3
    flat: bool
    free_symbols: tuple[str, ...]
    surface_dimension: int

    def lines(self) -> tuple[str, ...]:
        from .parsing import super_to_text

        out = [
            "flatness analysis (classical family)",
            f"sign branch: {'+1' if self.sign > 0 else '-1'}",
            f"time dependent: {'yes' if self.time_dependent else 'no'}",
        ]
        for n, step in enumerate(self.steps, start=1):
            for label, image in step:
                out.append(f"chain step {n}: {label} -> {image}")
        for rel in self.implied:
            out.append(f"implied: {rel}")
        out.append(f"scalar curvature before: {super_to_text(self.scalar_before)}")
        out.append(f"scalar curvature after: {super_to_text(self.scalar_after)}")
        nonzero = _nonzero_entries(self.ricci_after)
        if nonzero:
            for key, value in nonzero:
                out.append(f"ricci residual {key}: {value}")
        else:
            out.append("ricci tensor after: all components zero")
        out.append(
            "free parameters on the surface: " + ", ".join(self.free_symbols)
        )
        out.append(f"surface dimension: {self.surface_dimension}")
        out.append(f"verdict: {'flat' if self.flat else 'not flat'}")
        return tuple(out)


def _nonzero_entries(matrix: SuperMatrix3) -> tuple:
    from .parsing import super_to_text
    from .supermatrix import INDEX_NAMES

    out = []
    for a in range(3):
        for b in range(3):
            entry = matrix.rows[a][b]
            if not entry.is_zero:
                out.append(
                    (f"({INDEX_NAMES[a]},{INDEX_NAMES[b]})", super_to_text(entry))
                )
    return tuple(out)


def _surface_free_symbols(value, labels: tuple[str, ...]) -> tuple[str, ...]:
    """Which of the given base labels survive in an expression tree."""
    from .geometry import _walk

    seen: set[str] = set()

    def collect(e: ScalarExpr) -> None:
        for lab in e.symbols():
            seen.add(lab.rstrip("'"))

    _walk(value, collect)
    return tuple(lab for lab in labels if lab in seen)


def cpi_flatness(
    p: CPIPiParams | None = None,
    time_dependent: bool | None = None,
    *,
    sign: int = 1,
) -> FlatnessReport:
    """Drive the classical curvature to zero along the known chain.

    The chain first trades pi1 for pi2 pi3/pi4 (whence the pi4 != 0
    precondition), then identifies pi2 with pi3.  On the resulting
    surface pi5 = a (pi2 pi3 - pi1 pi4) collapses to zero by itself.
    In the time-dependent variant each substitution is extended to the
    derivative symbols.
    """
    if p is None:
        p = CPIPiParams.symbolic(sign)
    if time_dependent is None:
        time_dependent = p.time_dependent
    if p.pi4.is_zero:
        raise DivisionByZeroExpr("flatness chain divides by pi4, which is zero")
    chain = SubstitutionChain.of(
        {"pi1": p.pi2 * p.pi3 / p.pi4},
        {"pi2": p.pi3},
    )
    result = cpi_pipeline(p, time_dependent=time_dependent)
    scalar_before = result.curvature.scalar
    scalar_after = chain.apply(scalar_before, primes=time_dependent)
    ricci_after = chain.apply(result.curvature.ricci_matrix, primes=time_dependent)
    flat = scalar_after.is_zero and all(
        ricci_after.rows[a][b].is_zero for a in range(3) for b in range(3)
    )
    metric_after = chain.apply(result.metric.upper, primes=time_dependent)
    free = _surface_free_symbols(metric_after, _PI_LABELS)
    implied = ["pi5 -> 0 (pi5 = a (pi2 pi3 - pi1 pi4) vanishes on the chain)"]
    if time_dependent:
        implied.append("pi5' -> 0 and pi5'' -> 0 (derivatives of the above)")
    return FlatnessReport(
        sign=p.sign,
        time_dependent=time_dependent,
        steps=chain.steps,
        implied=tuple(implied),
        scalar_before=scalar_before,
        scalar_after=scalar_after,
        ricci_after=ricci_after,
        flat=flat,
        free_symbols=free,
        surface_dimension=len(free),
    )


# ---------------------------------------------------------------------------
# obstruction analysis (quantum)
# ---------------------------------------------------------------------------


_PIQ_LABELS = ("pi1Q", "pi2Q", "pi3Q", "pi4Q", "pi5Q")


@dataclass(frozen=True)
class ObstructionReport:
    """Four-part record of why the quantum curvature cannot vanish.

    (i)   the zero-curvature chain does annihilate the symbolic curvature;
    (ii)  yet the true quantum limit pins pi6 to -i a_B/hbar != 0 on both
          sign branches, contradicting the chain's pi6 = 0;
    (iii) keeping pi6 = 0 by tuning the soul a_S instead forces
          a_S = (i/hbar) a_B (1-eps)/eps, unbounded as eps -> 0;
    (iv)  and no cancellation can rescue pi6: the curvature-side of the
          would-be identity has no constant term (every monomial carries
          a pi), while pi6 does.
    """

    sign: int
    pi6_form: str
    chain_steps: tuple
    redundancy: str
    scalar_after: SuperFunction
    ricci_after: SuperMatrix3
    tensor_vanishes: bool
    partial_chain_steps: tuple
    partial_residue: SuperFunction
    pi6_true_quantum: tuple[tuple[int, ScalarExpr], ...]
    pi6_nonzero_both_branches: bool
    a_s_solution: ScalarExpr
    a_s_samples: tuple[tuple[Fraction, ScalarExpr], ...]
    growth_ratios: tuple[Fraction, ...]
    rhs_body_zero: bool
    rhs_min_degree: int
    pi6_body: ScalarExpr
    obstructed: bool

    def lines(self) -> tuple[str, ...]:
        from .parsing import super_to_text

        out = [
            "obstruction analysis (quantum family)",
            f"sign branch: {'+1' if self.sign > 0 else '-1'}",
            f"pi6 closed form: {self.pi6_form}",
        ]
        for n, step in enumerate(self.chain_steps, start=1):
            for label, image in step:
                out.append(f"chain step {n}: {label} -> {image}")
        out.append(f"redundancy: {self.redundancy}")
        out.append(
            "curvature after chain: "
            + ("all components zero" if self.tensor_vanishes else "NONZERO")
        )
        out.append(
            "partial chain (body-only constraints) leaves residue: "
            + super_to_text(self.partial_residue)
        )
        for branch, value in self.pi6_true_quantum:
            out.append(
                f"true quantum limit, a_B={'+1' if branch > 0 else '-1'}: pi6 = {value}"
            )
        out.append(
            "pi6 nonzero on both branches: "
            + ("yes" if self.pi6_nonzero_both_branches else "no")
        )
        out.append(f"forcing pi6 = 0 instead requires a_S = {self.a_s_solution}")
        for eps_val, a_s in self.a_s_samples:
            out.append(f"  at eps = {eps_val}: a_S = {a_s}")
        out.append(
            "growth of (1-eps)/eps along the samples: "
            + ", ".join(str(r) for r in self.growth_ratios)
        )
        out.append(
            "constant term on the curvature side: "
            + ("none (every monomial carries a pi)" if self.rhs_body_zero else "present")
        )
        out.append(f"constant term of pi6: {self.pi6_body}")
        out.append(
            "verdict: "
            + (
                "curvature cannot vanish in the true quantum limit"
                if self.obstructed
                else "no obstruction found"
            )
        )
        return tuple(out)


def qpi_obstruction(
    p: QPIPiParams | None = None, *, sign: int = 1, pi6_form: str = "eq69"
) -> ObstructionReport:
    """Run the four-part obstruction analysis of the quantum curvature."""
    if p is None:
        p = QPIPiParams.symbolic(_check_sign(sign), pi6_form)
    sign = p.sign
    pi6_form = p.pi6_form

    # (i) the zero-curvature chain annihilates the symbolic curvature
    chain = SubstitutionChain.of(
        {"pi2Q": p.pi3, "pi1Q": p.pi3 * p.pi3 / p.pi4},
        {"pi6Q": 0, "pi5Q": 0},
    )
    redundancy = (
        "the published constraint lists sigma1 = (3/2) pi6 alongside pi6 = 0; "
        "since sigma1 = pi2 pi3 - pi1 pi4 - pi5 pi7 and the first two bindings "
        "already cancel pi2 pi3 - pi1 pi4, that row is the statement pi5 = 0 "
        "(pi7 != 0), which the chain applies directly"
    )
    result = qpi_pipeline(p)
    scalar_after = chain.apply(result.curvature.scalar)
    ricci_after = chain.apply(result.curvature.ricci_matrix)
    tensor_vanishes = scalar_after.is_zero and all(
        ricci_after.rows[a][b].is_zero for a in range(3) for b in range(3)
    )

    # the body-only constraints leave a pure-soul residue proportional to
    # pi6**2; it dies exactly when pi6 does
    partial_chain = SubstitutionChain.of(
        {"pi2Q": p.pi3, "pi1Q": p.pi3 * p.pi3 / p.pi4},
        {"pi5Q": -Fraction(3, 2) * p.pi6 / p.pi7},
    )
    partial_residue = partial_chain.apply(result.curvature.scalar)

    # (ii) the true quantum limit pins pi6 away from zero on both branches
    odd_off = {"alphath": 0, "alphathb": 0, "betath": 0, "betathb": 0}
    branches = []
    for branch in (1, -1):
        value = (
            pi6_closed_form(branch, pi6_form)
            .substitute(odd_off)
            .substitute({"eps": 0})
        )
        branches.append((branch, value))
    pi6_nonzero = all(not value.is_zero for _, value in branches)

    # (iii) tuning a_S to keep pi6 = 0 blows up as eps -> 0
    aB = ScalarExpr.from_int(sign)
    eps_sym, hbar = sym("eps"), sym("hbar")
    a_s_solution = (I_UNIT / hbar) * aB * (1 - eps_sym) / eps_sym
    samples = []
    ratios = []
    for eps_val in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
        samples.append((eps_val, a_s_solution.substitute({"eps": eps_val})))
        ratios.append((1 - eps_val) / eps_val)

    # (iv) the would-be identity pi6 = (classical curvature + 2 sigma1)/3
    # equates a quantity with a constant term to one without
    sigma1 = (
        sym("pi2Q") * sym("pi3Q")
        - sym("pi1Q") * sym("pi4Q")
        - sym("pi5Q") * sym("pi7Q")
    )
    rhs_body = _general_cpi_scalar_at_quantum_pis().u1 + 2 * sigma1
    rhs_body_zero = rhs_body.substitute({lab: 0 for lab in _PIQ_LABELS}).is_zero
    rhs_min_degree = _min_degree(rhs_body, _PIQ_LABELS)
    pi6_body = pi6_closed_form(sign, pi6_form).substitute(odd_off)

    obstructed = tensor_vanishes and pi6_nonzero and rhs_body_zero

    return ObstructionReport(
        sign=sign,
        pi6_form=pi6_form,
        chain_steps=chain.steps,
        redundancy=redundancy,
        scalar_after=scalar_after,
        ricci_after=ricci_after,
        tensor_vanishes=tensor_vanishes,
        partial_chain_steps=partial_chain.steps,
        partial_residue=partial_residue,
        pi6_true_quantum=tuple(branches),
        pi6_nonzero_both_branches=pi6_nonzero,
        a_s_solution=a_s_solution,
        a_s_samples=tuple(samples),
        growth_ratios=tuple(ratios),
        rhs_body_zero=rhs_body_zero,
        rhs_min_degree=rhs_min_degree,
        pi6_body=pi6_body,
        obstructed=obstructed,
    )


def _min_degree(expr: ScalarExpr, labels: tuple[str, ...]) -> int:
    """Minimum total degree in the given labels over numerator monomials."""
    num_terms, _ = expr.raw()
    degrees = []
    for mono, _coeff in num_terms:
        degrees.append(sum(e for lab, e in mono if lab in labels))
    return min(degrees) if degrees else 0
