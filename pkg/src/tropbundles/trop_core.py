"""Max-plus scalars and matrices, and the group G(r) of monomial matrices.

Everything is exact: finite scalars are :class:`fractions.Fraction` and the
tropical zero is represented by :data:`NEG_INF`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Iterable, Sequence

Rational = Fraction


def as_rational(x: Any) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction.

    Floats are refused on purpose: they would silently break exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class TropValue:
    """An element of the tropical semiring (R u {-inf}, max, +)."""

    __slots__ = ("_value",)

    def __init__(self, value: Any = None):
        self._value = None if value is None else as_rational(value)

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("-inf has no finite value")
        return self._value

    def oplus(self, other: TropValue) -> TropValue:
        if self._value is None:
            return other
        if other._value is None:
            return self
        return self if self._value >= other._value else other

    def odot(self, other: TropValue) -> TropValue:
        if self._value is None or other._value is None:
            return NEG_INF
        return TropValue(self._value + other._value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TropValue):
            return NotImplemented
        return self._value == other._value

    def __hash__(self) -> int:
        return hash(("TropValue", self._value))

    def __repr__(self) -> str:
        return "-inf" if self._value is None else f"TropValue({self._value})"

    def __str__(self) -> str:
        return "-inf" if self._value is None else str(self._value)


NEG_INF = TropValue()
ZERO = TropValue(0)


def tv(x: Any) -> TropValue:
    """Shorthand constructor; ``None``, ``"-inf"`` and TropValues pass through."""
    if isinstance(x, TropValue):
        return x
    if x is None or (isinstance(x, str) and x.strip() in ("-inf", "-oo")):
        return NEG_INF
    return TropValue(x)


@dataclass(frozen=True)
class TropMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[TropValue, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry grid does not have shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> TropMatrix:
        grid = tuple(tuple(tv(x) for x in row) for row in rows)
        ncols = len(grid[0]) if grid else 0
        return cls(len(grid), ncols, grid)

    def __getitem__(self, ij: tuple[int, int]) -> TropValue:
        i, j = ij
        return self.entries[i][j]

    def finite_positions(self, i: int) -> list[int]:
        return [j for j, x in enumerate(self.entries[i]) if x.is_finite]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"


def tmat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Tropical product: ``c_ij = max_k (a_ik + b_kj)``."""
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = NEG_INF
            for k in range(a.cols):
                acc = acc.oplus(a.entries[i][k].odot(b.entries[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return TropMatrix(a.rows, b.cols, tuple(out))


def identity_matrix(r: int) -> TropMatrix:
    return TropMatrix.from_rows([[0 if i == j else None for j in range(r)] for i in range(r)])


def diagonal_matrix(values: Sequence[Any]) -> TropMatrix:
    """D(a_1, ..., a_r)."""
    r = len(values)
    return TropMatrix.from_rows([[values[i] if i == j else None for j in range(r)] for i in range(r)])


def permutation_matrix(perm: Sequence[int]) -> TropMatrix:
    """A_sigma: zero at (i, sigma(i)), -inf elsewhere; ``perm`` is 1-indexed."""
    r = len(perm)
    return TropMatrix.from_rows([[0 if perm[i] == j + 1 else None for j in range(r)] for i in range(r)])


def tmat_is_invertible(a: TropMatrix) -> bool:
    """True iff ``a`` lies in G(r): exactly one finite entry per row and column."""
    if a.rows != a.cols:
        raise ValueError("invertibility is only defined for square matrices")
    cols_seen = set()
    for i in range(a.rows):
        pos = a.finite_positions(i)
        if len(pos) != 1 or pos[0] in cols_seen:
            return False
        cols_seen.add(pos[0])
    return True


def apply_f_A(a: TropMatrix, x: Sequence[Any]) -> tuple[Fraction, ...]:
    """The map f_A: R^s -> R^r, i.e. ``A (.) x`` with -inf coordinates replaced by 0."""
    if len(x) != a.cols:
        raise ValueError(f"vector of length {len(x)} does not match {a.cols} columns")
    xs = [as_rational(v) for v in x]
    out = []
    for i in range(a.rows):
        pos = a.finite_positions(i)
        if len(pos) > 1:
            raise ValueError(f"row {i + 1} has {len(pos)} finite entries; A is not in G(r x s)")
        out.append(a.entries[i][pos[0]].value + xs[pos[0]] if pos else Fraction(0))
    return tuple(out)


# -- permutations (1-indexed tuples of images) --------------------------------

def is_permutation(perm: Sequence[int]) -> bool:
    return sorted(perm) == list(range(1, len(perm) + 1))


def perm_compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """``i -> outer(inner(i))``."""
    return tuple(outer[inner[i] - 1] for i in range(len(inner)))


def perm_inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm, start=1):
        inv[p - 1] = i
    return tuple(inv)


def perm_identity(r: int) -> tuple[int, ...]:
    return tuple(range(1, r + 1))


def perm_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of ``perm``, each starting at its smallest element, ordered by that element.

    Inside a cycle the successor of ``i`` is ``perm(i)``.
    """
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        nxt = perm[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt - 1]
        cycles.append(tuple(cyc))
    return cycles


def all_permutations(r: int) -> Iterable[tuple[int, ...]]:
    return permutations(range(1, r + 1))


# -- G(r) ---------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialMatrix:
    """An element of G(r) stored as a permutation plus one value per row.

    Row ``i`` has its unique finite entry ``values[i-1]`` in column ``perm[i-1]``,
    so the dense matrix is ``D(values) (.) A_perm``, equivalently
    ``A_perm (.) D(a)`` with ``a_j = values[perm^-1(j)]``.

    ``values`` only need ``+`` and unary ``-``; the bundle code reuses this
    class with affine functions as entries.
    """

    perm: tuple[int, ...]
    values: tuple[Any, ...]

    def __post_init__(self):
        if len(self.perm) != len(self.values):
            raise ValueError("perm and values must have the same length")

    @property
    def size(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, r: int, zero: Any = Fraction(0)) -> MonomialMatrix:
        return cls(perm_identity(r), (zero,) * r)

    @classmethod
    def diagonal(cls, values: Sequence[Any]) -> MonomialMatrix:
        return cls(perm_identity(len(values)), tuple(as_rational(v) for v in values))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> MonomialMatrix:
        return cls(tuple(perm), (Fraction(0),) * len(perm))

    @classmethod
    def from_dense(cls, a: TropMatrix) -> MonomialMatrix:
        """Factor a G(r) matrix; raises ValueError if ``a`` is not in G(r)."""
        if not tmat_is_invertible(a):
            raise ValueError(f"matrix {a} is not in G(r)")
        perm, values = [], []
        for i in range(a.rows):
            (j,) = a.finite_positions(i)
            perm.append(j + 1)
            values.append(a.entries[i][j].value)
        return cls(tuple(perm), tuple(values))

    def diagonal_values(self) -> tuple[Any, ...]:
        """The ``a`` of the factorisation ``A_perm (.) D(a)``."""
        inv = perm_inverse(self.perm)
        return tuple(self.values[inv[j] - 1] for j in range(self.size))

    def to_dense(self) -> TropMatrix:
        rows = [[None] * self.size for _ in range(self.size)]
        for i, (j, v) in enumerate(zip(self.perm, self.values)):
            rows[i][j - 1] = v
        return TropMatrix.from_rows(rows)

    def is_valid(self) -> bool:
        return is_permutation(self.perm)

    def map(self, fn) -> MonomialMatrix:
        return MonomialMatrix(self.perm, tuple(fn(v) for v in self.values))

    def act(self, vector: Sequence[Any]) -> tuple[Any, ...]:
        """``M (.) a`` for a finite vector ``a``: coordinate i is ``v_i + a_perm(i)``."""
        return tuple(v + vector[j - 1] for v, j in zip(self.values, self.perm))


def gmat_mul(m2: MonomialMatrix, m1: MonomialMatrix) -> MonomialMatrix:
    """``m2 (.) m1`` inside G(r)."""
    if m2.size != m1.size:
        raise ValueError(f"size mismatch: {m2.size} vs {m1.size}")
    perm = tuple(m1.perm[m2.perm[i] - 1] for i in range(m2.size))
    values = tuple(m2.values[i] + m1.values[m2.perm[i] - 1] for i in range(m2.size))
    return MonomialMatrix(perm, values)


def gmat_inverse(m: MonomialMatrix) -> MonomialMatrix:
    inv = perm_inverse(m.perm)
    return MonomialMatrix(inv, tuple(-m.values[inv[j] - 1] for j in range(m.size)))
