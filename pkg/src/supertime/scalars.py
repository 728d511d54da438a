"""Exact scalar coefficient field.

Multivariate rational functions over the Gaussian rationals (a + b*i with
a, b rational) in registered commuting symbols.  Every value is kept in a
canonical form:

* numerator and denominator are coprime polynomials,
* the denominator is monic under graded-lexicographic order,
* both live in the smallest polynomial ring containing their symbols,
  with generator priority fixed by the global registration order.

Two ScalarExpr are mathematically equal iff their canonical forms are
identical, which makes equality, hashing and zero-testing trivial.

The polynomial plumbing is sympy's sparse ring machinery; none of it leaks
through the public surface, and the numeric oracle never touches it (it
consumes ``raw()`` data only).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from sympy import Symbol as _SympySym
from sympy.polys.domains import QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring as _sympy_ring

from .errors import (
    CyclicBinding,
    DerivativeOrderExceeded,
    DivisionByZeroExpr,
)

_PRIME = "'"
_MAX_ORDER = 2
_ONE_COEFF = QQ_I.one


@dataclass(frozen=True)
class Symbol:
    """A registered scalar symbol.

    ``derivative_order`` counts time derivatives: 0 for pi1, 1 for pi1',
    2 for pi1''.  ``constant`` symbols (a, aB, aS, eps, hbar, ...) map to
    zero under the time derivation.
    """

    name: str
    derivative_order: int = 0
    constant: bool = False

    @property
    def label(self) -> str:
        return self.name + _PRIME * self.derivative_order


def _valid_ident(name: str) -> bool:
    return bool(name) and name[0].isalpha() and name.isascii() and all(
        c.isalnum() for c in name
    )


class Registry:
    """Append-only global symbol table.

    Registration order fixes generator priority for the monomial order, so
    canonical forms are deterministic across runs; appending new symbols
    never disturbs existing canonical forms.  Registration is synchronized;
    lookups are lock-free reads of append-only dicts.
    """

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self._by_label: dict[str, Symbol] = {}
        self._priority: dict[str, int] = {}

    def register(self, name: str, *, constant: bool = False) -> Symbol:
        """Register ``name`` (and, for dynamic symbols, its primes)."""
        if not _valid_ident(name):
            raise ValueError(f"invalid symbol name {name!r}")
        if name == "i":
            raise ValueError("'i' is the imaginary unit, not a symbol")
        with self._lock:
            existing = self._by_label.get(name)
            if existing is not None:
                if existing.constant != constant or existing.derivative_order != 0:
                    raise ValueError(f"symbol {name!r} already registered differently")
                return existing
            orders = (0,) if constant else tuple(range(_MAX_ORDER + 1))
            base = None
            for order in orders:
                sym = Symbol(name, order, constant)
                self._by_label[sym.label] = sym
                self._priority[sym.label] = len(self._priority)
                if order == 0:
                    base = sym
            return base

    def lookup(self, label: str) -> Symbol | None:
        return self._by_label.get(label)

    def require(self, label: str) -> Symbol:
        sym = self._by_label.get(label)
        if sym is None:
            raise KeyError(f"unregistered symbol {label!r}")
        return sym

    def priority(self, label: str) -> int:
        return self._priority[label]

    def labels(self) -> tuple[str, ...]:
        return tuple(self._priority)

    def sort_labels(self, labels: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(set(labels), key=self._priority.__getitem__))


REGISTRY = Registry()


def register_symbol(name: str, *, constant: bool = False) -> Symbol:
    """Add a symbol to the global registry (idempotent)."""
    return REGISTRY.register(name, constant=constant)


# ---------------------------------------------------------------------------
# ring cache
# ---------------------------------------------------------------------------

_ring_cache: dict[tuple[str, ...], object] = {}
_qq_ring_cache: dict[tuple[str, ...], object] = {}
_sympy_syms: dict[str, _SympySym] = {}
_ring_lock = threading.Lock()


def _ring_syms(labels: tuple[str, ...]) -> list[_SympySym]:
    syms = []
    for lab in labels:
        s = _sympy_syms.get(lab)
        if s is None:
            s = _sympy_syms.setdefault(lab, _SympySym(lab))
        syms.append(s)
    return syms


def _get_ring(labels: tuple[str, ...]):
    R = _ring_cache.get(labels)
    if R is None:
        with _ring_lock:
            R = _ring_cache.get(labels)
            if R is None:
                R = _sympy_ring(_ring_syms(labels), QQ_I, grlex)[0]
                _ring_cache[labels] = R
    return R


def _get_qq_ring(labels: tuple[str, ...]):
    """Parallel real ring: gcd over QQ is an order of magnitude faster."""
    from sympy import QQ

    R = _qq_ring_cache.get(labels)
    if R is None:
        with _ring_lock:
            R = _qq_ring_cache.get(labels)
            if R is None:
                R = _sympy_ring(_ring_syms(labels), QQ, grlex)[0]
                _qq_ring_cache[labels] = R
    return R


def _is_real_poly(poly) -> bool:
    return all(not c.y for c in poly.itercoeffs())


def _cancel_pair(num, den, labels):
    """num.cancel(den), rerouted through QQ when both sides are real."""
    if _is_real_poly(num) and _is_real_poly(den):
        from sympy import QQ

        RQ = _get_qq_ring(labels)
        rnum = RQ.from_dict({m: c.x for m, c in num.terms()})
        rden = RQ.from_dict({m: c.x for m, c in den.terms()})
        rnum, rden = rnum.cancel(rden)
        RI = num.ring
        zero = QQ.zero
        num = RI.from_dict({m: QQ_I.new(c, zero) for m, c in rnum.terms()})
        den = RI.from_dict({m: QQ_I.new(c, zero) for m, c in rden.terms()})
        return num, den
    return num.cancel(den)


def _coeff_parts(coeff) -> tuple[Fraction, Fraction]:
    """Gaussian-rational coefficient as (real, imaginary) stdlib Fractions."""
    re, im = coeff.x, coeff.y
    return (
        Fraction(int(re.numerator), int(re.denominator)),
        Fraction(int(im.numerator), int(im.denominator)),
    )


def _coeff_key(coeff) -> tuple[int, int, int, int]:
    re, im = coeff.x, coeff.y
    return (
        int(re.numerator),
        int(re.denominator),
        int(im.numerator),
        int(im.denominator),
    )


def _fraction_to_coeff(re: Fraction, im: Fraction = Fraction(0)):
    from sympy import QQ

    return QQ_I.new(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


Scalarish = Union["ScalarExpr", int, Fraction]


class ScalarExpr:
    """Immutable canonical rational function over the Gaussian rationals."""

    __slots__ = ("_labels", "_num", "_den", "_key", "_hash")

    def __init__(self, labels, num, den, key):
        # internal: use the factory helpers / arithmetic, not this
        object.__setattr__(self, "_labels", labels)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, *_):
        raise AttributeError("ScalarExpr is immutable")

    # -- construction -------------------------------------------------------

    @staticmethod
    def _build(num, den, labels: tuple[str, ...]) -> "ScalarExpr":
        """Normalize a raw numerator/denominator pair living over ``labels``."""
        if not den:
            raise DivisionByZeroExpr("denominator is zero")
        if not num:
            R0 = _get_ring(())
            return ScalarExpr((), R0.zero, R0.one, ((), ((), ())))
        if den != den.ring.one:
            num, den = _cancel_pair(num, den, labels)
            lc = den.LC
            if lc != _ONE_COEFF:
                num = num.quo_ground(lc)
                den = den.quo_ground(lc)
        used = set()
        for poly in (num, den):
            for mono in poly.itermonoms():
                for i, e in enumerate(mono):
                    if e:
                        used.add(labels[i])
        minimal = REGISTRY.sort_labels(used)
        if minimal != labels:
            R = _get_ring(minimal)
            num = num.set_ring(R)
            den = den.set_ring(R)
        key = (
            minimal,
            (
                tuple((m, _coeff_key(c)) for m, c in num.terms()),
                tuple((m, _coeff_key(c)) for m, c in den.terms()),
            ),
        )
        return ScalarExpr(minimal, num, den, key)

    @staticmethod
    def from_int(n: int) -> "ScalarExpr":
        R0 = _get_ring(())
        return ScalarExpr._build(R0.ground_new(QQ_I(n)), R0.one, ())

    @staticmethod
    def from_fraction(value: Union[Fraction, int, tuple[int, int]]) -> "ScalarExpr":
        if isinstance(value, tuple):
            value = Fraction(*value)
        else:
            value = Fraction(value)
        R0 = _get_ring(())
        return ScalarExpr._build(
            R0.ground_new(_fraction_to_coeff(value)), R0.one, ()
        )

    @staticmethod
    def from_complex(re: Fraction, im: Fraction) -> "ScalarExpr":
        R0 = _get_ring(())
        return ScalarExpr._build(
            R0.ground_new(_fraction_to_coeff(Fraction(re), Fraction(im))), R0.one, ()
        )

    @staticmethod
    def imag_unit() -> "ScalarExpr":
        return ScalarExpr.from_complex(Fraction(0), Fraction(1))

    @staticmethod
    def symbol(label: str) -> "ScalarExpr":
        REGISTRY.require(label)
        labels = (label,)
        R = _get_ring(labels)
        return ScalarExpr._build(R.gens[0], R.one, labels)

    # -- basic predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_one(self) -> bool:
        return self._key == _ONE_KEY

    def symbols(self) -> tuple[str, ...]:
        return self._labels

    def is_constant(self) -> bool:
        return not self._labels

    # -- coercion / upcasting -------------------------------------------------

    @staticmethod
    def _coerce(value: Scalarish) -> "ScalarExpr":
        if isinstance(value, ScalarExpr):
            return value
        if isinstance(value, int):
            return ScalarExpr.from_int(value)
        if isinstance(value, Fraction):
            return ScalarExpr.from_fraction(value)
        return NotImplemented

    def _join(self, other: "ScalarExpr"):
        """Lift both operands into the ring over the union of their symbols."""
        if self._labels == other._labels:
            return self._num, self._den, other._num, other._den, self._labels
        labels = REGISTRY.sort_labels(self._labels + other._labels)
        R = _get_ring(labels)
        a_n = self._num if self._labels == labels else self._num.set_ring(R)
        a_d = self._den if self._labels == labels else self._den.set_ring(R)
        b_n = other._num if other._labels == labels else other._num.set_ring(R)
        b_d = other._den if other._labels == labels else other._den.set_ring(R)
        return a_n, a_d, b_n, b_d, labels

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a_n, a_d, b_n, b_d, labels = self._join(other)
        return ScalarExpr._build(a_n * b_d + b_n * a_d, a_d * b_d, labels)

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr._build(-self._num, self._den, self._labels)

    def __sub__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a_n, a_d, b_n, b_d, labels = self._join(other)
        return ScalarExpr._build(a_n * b_d - b_n * a_d, a_d * b_d, labels)

    def __rsub__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a_n, a_d, b_n, b_d, labels = self._join(other)
        return ScalarExpr._build(a_n * b_n, a_d * b_d, labels)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroExpr("division by zero expression")
        a_n, a_d, b_n, b_d, labels = self._join(other)
        return ScalarExpr._build(a_n * b_d, a_d * b_n, labels)

    def __rtruediv__(self, other):
        other = ScalarExpr._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent == 0:
            return ONE
        if exponent < 0:
            if self.is_zero:
                raise DivisionByZeroExpr("zero to a negative power")
            return ScalarExpr._build(
                self._den ** (-exponent), self._num ** (-exponent), self._labels
            )
        return ScalarExpr._build(
            self._num ** exponent, self._den ** exponent, self._labels
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScalarExpr._coerce(other)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return not self.is_zero

    # -- calculus ----------------------------------------------------------------

    def derive(self) -> "ScalarExpr":
        """Time derivation: Leibniz + quotient rule, pi -> pi', pi' -> pi''.

        Constant symbols map to zero; creating a third-order derivative
        raises DerivativeOrderExceeded.
        """
        dnum = self._poly_derive(self._num)
        if self._den == self._den.ring.one:
            return dnum
        den_expr = ScalarExpr._build(self._den, self._den.ring.one, self._labels)
        num_expr = ScalarExpr._build(self._num, self._num.ring.one, self._labels)
        dden = self._poly_derive(self._den)
        return (dnum * den_expr - num_expr * dden) / (den_expr * den_expr)

    def _poly_derive(self, poly) -> "ScalarExpr":
        labels = self._labels
        acc = ZERO
        for i, label in enumerate(labels):
            partial = poly.diff(poly.ring.gens[i])
            if not partial:
                continue
            sym = REGISTRY.require(label)
            if sym.constant:
                continue
            if sym.derivative_order >= _MAX_ORDER:
                raise DerivativeOrderExceeded(
                    f"cannot differentiate {label} past order {_MAX_ORDER}"
                )
            primed = ScalarExpr.symbol(label + _PRIME)
            acc = acc + ScalarExpr._build(partial, poly.ring.one, labels) * primed
        return acc

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "ScalarExpr":
        """Simultaneous substitution followed by canonical normalization.

        Keys may be labels or Symbol instances; values anything coercible
        to ScalarExpr.  Images are used exactly as given (never re-reduced
        through other bindings), so swaps are legal; a binding whose image
        contains its own key is rejected.
        """
        table: dict[str, ScalarExpr] = {}
        for key, value in bindings.items():
            label = key.label if isinstance(key, Symbol) else str(key)
            REGISTRY.require(label)
            expr = ScalarExpr._coerce(value)
            if expr is NotImplemented:
                raise TypeError(f"cannot bind {label} to {value!r}")
            table[label] = expr
        table = {
            lab: expr
            for lab, expr in table.items()
            if expr._key != ScalarExpr.symbol(lab)._key
        }
        for lab, expr in table.items():
            if lab in expr.symbols():
                raise CyclicBinding(f"binding image of {lab} contains {lab}")
        if not table or not (set(self._labels) & table.keys()):
            return self
        num_val = _poly_substitute(self._num, self._labels, table)
        den_val = _poly_substitute(self._den, self._labels, table)
        if den_val.is_zero:
            raise DivisionByZeroExpr("substitution sends denominator to zero")
        return num_val / den_val

    # -- raw data for the numeric oracle -----------------------------------------

    def raw(self):
        """Plain-data canonical fraction: (num_terms, den_terms).

        Each side is a tuple of (monomial, coefficient) where monomial is a
        tuple of (label, exponent) pairs and coefficient is
        (re_numerator, re_denominator, im_numerator, im_denominator).
        No sympy objects escape.
        """

        def side(poly):
            out = []
            for mono, coeff in poly.terms():
                out.append(
                    (
                        tuple(
                            (self._labels[i], e) for i, e in enumerate(mono) if e
                        ),
                        _coeff_key(coeff),
                    )
                )
            return tuple(out)

        return side(self._num), side(self._den)

    def constant_value(self) -> tuple[Fraction, Fraction]:
        """(re, im) of a symbol-free expression."""
        if self._labels:
            raise ValueError("expression is not constant")
        num = _coeff_parts(self._num.LC) if self._num else (Fraction(0), Fraction(0))
        den = _coeff_parts(self._den.LC)
        # den is monic and constant, hence exactly 1
        assert den == (Fraction(1), Fraction(0))
        return num

    # -- rendering ----------------------------------------------------------------

    def __str__(self) -> str:
        from .parsing import scalar_to_text

        return scalar_to_text(self)

    def __repr__(self) -> str:
        return f"ScalarExpr({self})"

    def fraction_views(self):
        """(num_view, den_view): monomial/coefficient streams for printers.

        Monomials arrive in descending graded-lexicographic order as
        ((label, exp), ...) with (re, im) Fraction coefficients.
        """

        def side(poly):
            for mono, coeff in poly.terms():
                yield (
                    tuple((self._labels[i], e) for i, e in enumerate(mono) if e),
                    _coeff_parts(coeff),
                )

        return tuple(side(self._num)), tuple(side(self._den))


def _poly_substitute(poly, labels, table: Mapping[str, ScalarExpr]) -> ScalarExpr:
    R0 = _get_ring(())
    acc = ZERO
    images = [table.get(lab) for lab in labels]
    for mono, coeff in poly.terms():
        term = ScalarExpr._build(R0.ground_new(coeff), R0.one, ())
        for i, e in enumerate(mono):
            if not e:
                continue
            image = images[i]
            if image is None:
                image = ScalarExpr.symbol(labels[i])
            term = term * image ** e
        acc = acc + term
    return acc


def scalar_arith(lhs: ScalarExpr, op: str, rhs: ScalarExpr) -> ScalarExpr:
    """Named-operation wrapper over the arithmetic dunders."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def scalar_derive(e: ScalarExpr) -> ScalarExpr:
    return e.derive()


def scalar_substitute(e: ScalarExpr, bindings: Mapping[object, Scalarish]) -> ScalarExpr:
    return e.substitute(bindings)


ZERO = None  # assigned below once the machinery exists
ONE = None
_ONE_KEY = None


def _bootstrap_constants():
    global ZERO, ONE, _ONE_KEY
    R0 = _get_ring(())
    ZERO = ScalarExpr((), R0.zero, R0.one, ((), ((), ())))
    one_key = (
        (),
        ((((), (1, 1, 0, 1)),), (((), (1, 1, 0, 1)),)),
    )
    ONE = ScalarExpr((), R0.one, R0.one, one_key)
    _ONE_KEY = one_key


_bootstrap_constants()


def const(value: Union[int, Fraction, tuple[int, int]]) -> ScalarExpr:
    """Convenience constructor for rational constants."""
    return ScalarExpr.from_fraction(value)


def sym(label: str) -> ScalarExpr:
    """Convenience constructor for a registered symbol."""
    return ScalarExpr.symbol(label)


I_UNIT = None


# ---------------------------------------------------------------------------
# standard catalog: registration order fixes canonical generator priority
# ---------------------------------------------------------------------------

_CONSTANT_CATALOG = ("a", "aB", "aS", "eps", "hbar", "p", "q", "r")
_DYNAMIC_CATALOG = (
    "pi1", "pi2", "pi3", "pi4", "pi5",
    "pi1Q", "pi2Q", "pi3Q", "pi4Q", "pi5Q", "pi6Q", "pi7Q",
    "sigma1", "phiQ",
    "gammath", "gammathb", "deltath", "deltathb",
    "alphath", "alphathb", "betath", "betathb",
    "bB", "bS", "cB", "cS", "dB", "dS", "eB", "eS",
    "xiA", "xiC", "xiD", "xiF", "xiG", "xiBe", "xiEp", "xiXi",
    "xiAlt", "xiBlt", "xiGlt", "xiDlt",
)

for _name in _CONSTANT_CATALOG:
    REGISTRY.register(_name, constant=True)
for _name in _DYNAMIC_CATALOG:
    REGISTRY.register(_name)

I_UNIT = ScalarExpr.imag_unit()
