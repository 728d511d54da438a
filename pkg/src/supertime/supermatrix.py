"""3x3 supermatrices over the even/odd/odd index set (t, theta, thetabar).

Index grading is (0, 1, 1); slot (A, B) must hold an entry of parity
g(A)+g(B) mod 2 (zero passes any slot).  Because coefficients commute and
all sign bookkeeping lives in the Grassmann generators, multiplication is
plain matrix multiplication of SuperFunction entries.

Block language: with

    M = [[ A  C0 C1 ]
         [ D0 .  .  ]
         [ D1 .  B  ]]

A is the even 1x1 block, B the even 2x2 block, C/D the odd row/column.
The odd-odd products C B^-1 D are pure soul, so the Schur complement
A - C B^-1 D is invertible exactly when A has a body.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import GradingViolation, SingularBlockA, SingularBlockB
from .grassmann import Parity, SuperFunction, Superish, super_inverse
from .scalars import Scalarish

INDEX_NAMES = ("t", "theta", "thetabar")
INDEX_GRADING = (0, 1, 1)

Matrix2 = tuple[tuple[SuperFunction, SuperFunction], tuple[SuperFunction, SuperFunction]]


def required_parity(a: int, b: int) -> Parity:
    return Parity((INDEX_GRADING[a] + INDEX_GRADING[b]) % 2)


@dataclass(frozen=True)
class SuperMatrix3:
    rows: tuple[
        tuple[SuperFunction, SuperFunction, SuperFunction],
        tuple[SuperFunction, SuperFunction, SuperFunction],
        tuple[SuperFunction, SuperFunction, SuperFunction],
    ]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[Superish]]) -> "SuperMatrix3":
        coerced = tuple(
            tuple(SuperFunction._coerce(entry) for entry in row) for row in rows
        )
        if len(coerced) != 3 or any(len(r) != 3 for r in coerced):
            raise ValueError("SuperMatrix3 needs exactly 3x3 entries")
        return SuperMatrix3(coerced)

    @staticmethod
    def zero() -> "SuperMatrix3":
        z = SuperFunction.zero()
        return SuperMatrix3(((z, z, z), (z, z, z), (z, z, z)))

    @staticmethod
    def identity() -> "SuperMatrix3":
        z, o = SuperFunction.zero(), SuperFunction.one()
        return SuperMatrix3(((o, z, z), (z, o, z), (z, z, o)))

    @staticmethod
    def diagonal(d0: Superish, d1: Superish, d2: Superish) -> "SuperMatrix3":
        z = SuperFunction.zero()
        return SuperMatrix3.from_rows(((d0, z, z), (z, d1, z), (z, z, d2)))

    def __getitem__(self, key) -> SuperFunction:
        a, b = key
        return self.rows[_index(a)][_index(b)]

    # -- elementwise ----------------------------------------------------------

    def map_entries(
        self, fn: Callable[[SuperFunction], SuperFunction]
    ) -> "SuperMatrix3":
        return SuperMatrix3(tuple(tuple(fn(e) for e in row) for row in self.rows))

    def substitute(self, bindings: Mapping[object, Scalarish]) -> "SuperMatrix3":
        return self.map_entries(lambda e: e.substitute(bindings))

    def t_derive(self) -> "SuperMatrix3":
        return self.map_entries(lambda e: e.t_derive())

    def __neg__(self) -> "SuperMatrix3":
        return self.map_entries(lambda e: -e)

    def __add__(self, other: "SuperMatrix3") -> "SuperMatrix3":
        if not isinstance(other, SuperMatrix3):
            return NotImplemented
        return SuperMatrix3(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "SuperMatrix3") -> "SuperMatrix3":
        if not isinstance(other, SuperMatrix3):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Superish) -> "SuperMatrix3":
        factor = SuperFunction._coerce(factor)
        return self.map_entries(lambda e: factor * e)

    def __mul__(self, other: "SuperMatrix3") -> "SuperMatrix3":
        if not isinstance(other, SuperMatrix3):
            return NotImplemented
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = SuperFunction.zero()
                for k in range(3):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return SuperMatrix3(tuple(rows))

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.rows for e in row)

    # -- grading ------------------------------------------------------------------

    def grading_violations(self) -> tuple[tuple[int, int], ...]:
        bad = []
        for a in range(3):
            for b in range(3):
                if not self.rows[a][b].parity_matches(required_parity(a, b)):
                    bad.append((a, b))
        return tuple(bad)

    @property
    def is_graded(self) -> bool:
        return not self.grading_violations()

    # -- blocks ----------------------------------------------------------------------

    def block_A(self) -> SuperFunction:
        return self.rows[0][0]

    def block_B(self) -> Matrix2:
        r = self.rows
        return ((r[1][1], r[1][2]), (r[2][1], r[2][2]))

    def block_C(self) -> tuple[SuperFunction, SuperFunction]:
        return (self.rows[0][1], self.rows[0][2])

    def block_D(self) -> tuple[SuperFunction, SuperFunction]:
        return (self.rows[1][0], self.rows[2][0])

    def __str__(self) -> str:
        cells = [[str(e) for e in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(
            "[ " + " | ".join(c.ljust(width) for c in row) + " ]" for row in cells
        )


def _index(key) -> int:
    if isinstance(key, int):
        return key
    return INDEX_NAMES.index(key)


def grading_check(m: SuperMatrix3) -> None:
    bad = m.grading_violations()
    if bad:
        slots = ", ".join(
            f"({INDEX_NAMES[a]},{INDEX_NAMES[b]})" for a, b in bad
        )
        raise GradingViolation(f"wrong-parity entries at {slots}")


def smat_mul(x: SuperMatrix3, y: SuperMatrix3) -> SuperMatrix3:
    return x * y


def supertrace(m: SuperMatrix3) -> SuperFunction:
    r = m.rows
    return r[0][0] - r[1][1] - r[2][2]


def det2x2(b: Matrix2) -> SuperFunction:
    return b[0][0] * b[1][1] - b[0][1] * b[1][0]


def inv2x2(b: Matrix2) -> Matrix2:
    det = det2x2(b)
    if det.body().is_zero:
        raise SingularBlockB("even 2x2 block has no invertible determinant")
    inv_det = super_inverse(det)
    return (
        (b[1][1] * inv_det, -b[0][1] * inv_det),
        (-b[1][0] * inv_det, b[0][0] * inv_det),
    )


def _schur(m: SuperMatrix3, b_inv: Matrix2) -> SuperFunction:
    """A - C B^-1 D (even; its body is the body of A)."""
    c, d = m.block_C(), m.block_D()
    acc = m.block_A()
    for i in range(2):
        for j in range(2):
            acc = acc - c[i] * b_inv[i][j] * d[j]
    return acc


def sdet(m: SuperMatrix3) -> SuperFunction:
    """Superdeterminant (Berezinian): (A - C B^-1 D) / det B."""
    b = m.block_B()
    det_b = det2x2(b)
    if det_b.body().is_zero:
        raise SingularBlockB("even 2x2 block has no invertible determinant")
    b_inv = inv2x2(b)
    return _schur(m, b_inv) * super_inverse(det_b)


def smat_inverse(m: SuperMatrix3) -> SuperMatrix3:
    """Blockwise inverse; fails on a body-singular even block."""
    b = m.block_B()
    b_inv = inv2x2(b)
    schur = _schur(m, b_inv)
    if schur.body().is_zero:
        raise SingularBlockA("even 1x1 block has zero body")
    a_t = super_inverse(schur)
    c, d = m.block_C(), m.block_D()
    # row vector C B^-1 and column vector B^-1 D
    cbi = tuple(
        c[0] * b_inv[0][j] + c[1] * b_inv[1][j] for j in range(2)
    )
    bid = tuple(
        b_inv[i][0] * d[0] + b_inv[i][1] * d[1] for i in range(2)
    )
    c_t = tuple(-(a_t * cbi[j]) for j in range(2))
    d_t = tuple(-(bid[i] * a_t) for i in range(2))
    b_t = tuple(
        tuple(b_inv[i][j] + bid[i] * a_t * cbi[j] for j in range(2)) for i in range(2)
    )
    return SuperMatrix3(
        (
            (a_t, c_t[0], c_t[1]),
            (d_t[0], b_t[0][0], b_t[0][1]),
            (d_t[1], b_t[1][0], b_t[1][1]),
        )
    )
