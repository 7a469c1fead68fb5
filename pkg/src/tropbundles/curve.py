"""The tropical elliptic curve as a metric circle of lattice length L.

Points are described by a *lifted* real coordinate; the curve is R / L Z.
Chart ``k`` (1-indexed) is the arc ``((k-2) L/s, k L/s)`` in its own lifted
coordinate, so consecutive charts overlap in ``O_k = ((k-1) L/s, k L/s)`` and
the chain of overlaps ``O_1, ..., O_s`` tiles ``[0, L)``.  The last overlap
``O_s`` is written in chart ``s`` coordinates; the same points have chart 1
coordinate ``y - L``.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .trop_core import as_rational


@dataclass(frozen=True)
class Curve:
    length: Fraction
    charts: int

    def __post_init__(self):
        object.__setattr__(self, "length", as_rational(self.length))
        if self.length <= 0:
            raise ValueError(f"curve length must be positive, got {self.length}")
        if isinstance(self.charts, bool) or not isinstance(self.charts, int):
            raise TypeError("chart count must be an integer")
        if self.charts < 3:
            raise ValueError(
                f"need at least 3 charts for a covering without triple overlaps, got {self.charts}"
            )

    @property
    def step(self) -> Fraction:
        return self.length / self.charts

    def arc(self, k: int) -> tuple[Fraction, Fraction]:
        """Open arc of chart ``k`` in its lifted coordinate."""
        self._check_index(k)
        return ((k - 2) * self.step, k * self.step)

    def overlap(self, k: int) -> tuple[Fraction, Fraction]:
        """Open overlap of charts ``k`` and ``k+1`` (cyclically) in chart ``k`` coordinates."""
        self._check_index(k)
        return ((k - 1) * self.step, k * self.step)

    def overlap_ref(self, k: int) -> Fraction:
        """Reference point of overlap ``k``: its left endpoint."""
        return self.overlap(k)[0]

    def arcs(self) -> list[tuple[Fraction, Fraction]]:
        return [self.arc(k) for k in range(1, self.charts + 1)]

    def reduce(self, x: Any) -> Fraction:
        """Representative of ``x`` in ``[0, L)``."""
        x = as_rational(x)
        return x - (x // self.length) * self.length

    def chart_containing(self, x: Any) -> tuple[int, Fraction]:
        """A chart whose open arc contains the point ``x``, with the lifted coordinate there."""
        p = self.reduce(x)
        k = int(p // self.step) + 1
        # p lies in [(k-1) L/s, k L/s), inside chart k's arc ((k-2) L/s, k L/s)
        return k, p

    def _check_index(self, k: int) -> None:
        if not 1 <= k <= self.charts:
            raise IndexError(f"chart index {k} outside 1..{self.charts}")


def make_curve(length: Any, charts: int) -> Curve:
    return Curve(as_rational(length), charts)


@dataclass(frozen=True)
class AffineFn:
    """``x -> slope * x + value_at_0`` in a lifted coordinate."""

    slope: Fraction = Fraction(0)
    value_at_0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", as_rational(self.slope))
        object.__setattr__(self, "value_at_0", as_rational(self.value_at_0))

    @classmethod
    def through(cls, slope: Any, point: Any, value: Any) -> AffineFn:
        """The affine function of the given slope taking ``value`` at ``point``."""
        slope, point, value = as_rational(slope), as_rational(point), as_rational(value)
        return cls(slope, value - slope * point)

    @property
    def is_integral(self) -> bool:
        return self.slope.denominator == 1

    def __call__(self, x: Any) -> Fraction:
        return self.slope * as_rational(x) + self.value_at_0

    def __add__(self, other: AffineFn) -> AffineFn:
        if not isinstance(other, AffineFn):
            return NotImplemented
        return AffineFn(self.slope + other.slope, self.value_at_0 + other.value_at_0)

    def __neg__(self) -> AffineFn:
        return AffineFn(-self.slope, -self.value_at_0)

    def __sub__(self, other: AffineFn) -> AffineFn:
        return self + (-other)

    def shifted(self, dx: Any) -> AffineFn:
        """``x -> self(x + dx)``."""
        return AffineFn(self.slope, self(dx))

    def __repr__(self) -> str:
        return f"AffineFn({self.slope}, {self.value_at_0})"


ZERO_FN = AffineFn()


def continue_affine(f: AffineFn, steps: int, length: Any) -> AffineFn:
    """Continuation of ``f`` after winding ``steps`` times around a circle of length ``length``.

    This is ``x -> f(x + steps * length)``; the slope is unchanged.
    """
    return AffineFn(f.slope, f.value_at_0 + steps * f.slope * as_rational(length))


@dataclass(frozen=True)
class PLFn:
    """A continuous piecewise-affine function given by its values at knots.

    With ``period`` unset this is a function on the closed interval
    ``[knots[0], knots[-1]]``.  With ``period = L`` the knots span one fundamental
    window of the circle and the function extends to the line by
    ``u(y + L) = u(y) + jump(y)``; ``jump`` is zero for global functions on the
    curve and affine for sums of section components.
    """

    knots: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    period: Fraction | None = None
    jump: AffineFn = field(default=ZERO_FN)

    def __post_init__(self):
        knots = tuple(as_rational(k) for k in self.knots)
        values = tuple(as_rational(v) for v in self.values)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)
        if len(knots) < 2 or len(knots) != len(values):
            raise ValueError("need at least two knots and one value per knot")
        if any(b <= a for a, b in zip(knots, knots[1:])):
            raise ValueError("knots must be strictly increasing")
        if self.period is not None:
            period = as_rational(self.period)
            object.__setattr__(self, "period", period)
            if knots[-1] - knots[0] != period:
                raise ValueError("periodic knots must span exactly one period")
            if values[-1] != values[0] + self.jump(knots[0]):
                raise ValueError("values at the window ends disagree with the declared jump")

    @classmethod
    def from_slopes(cls, start: Any, value: Any, pieces: Sequence[tuple[Any, Any]], **kw) -> PLFn:
        """Build from a start point/value and ``(length, slope)`` pieces."""
        x, y = as_rational(start), as_rational(value)
        knots, values = [x], [y]
        for length, slope in pieces:
            x += as_rational(length)
            y += as_rational(length) * as_rational(slope)
            knots.append(x)
            values.append(y)
        return cls(tuple(knots), tuple(values), **kw)

    @classmethod
    def affine(cls, f: AffineFn, start: Any, end: Any) -> PLFn:
        start, end = as_rational(start), as_rational(end)
        return cls((start, end), (f(start), f(end)))

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.knots[0], self.knots[-1]

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (v1 - v0) / (k1 - k0)
            for k0, k1, v0, v1 in zip(self.knots, self.knots[1:], self.values, self.values[1:])
        )

    @property
    def is_integral(self) -> bool:
        return all(s.denominator == 1 for s in self.slopes) and self.jump.is_integral

    @property
    def is_global(self) -> bool:
        return self.period is not None and self.jump == ZERO_FN

    def __call__(self, x: Any) -> Fraction:
        x = as_rational(x)
        lo, hi = self.domain
        if self.period is not None and not lo <= x <= hi:
            k = (x - lo) // self.period
            base = x - k * self.period
            # u(base + k L) = u(base) + sum_{i<k} jump(base + i L); mirrored for k < 0
            acc = self._eval_window(base)
            if k > 0:
                acc += sum(self.jump(base + i * self.period) for i in range(k))
            else:
                acc -= sum(self.jump(base + i * self.period) for i in range(k, 0))
            return acc
        if not lo <= x <= hi:
            raise ValueError(f"{x} outside the domain [{lo}, {hi}]")
        return self._eval_window(x)

    def _eval_window(self, x: Fraction) -> Fraction:
        i = bisect.bisect_right(self.knots, x) - 1
        i = min(max(i, 0), len(self.knots) - 2)
        k0, k1 = self.knots[i], self.knots[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * (x - k0) / (k1 - k0)

    def kink(self, x: Any) -> Fraction:
        """Right slope minus left slope at an interior point of the domain."""
        x = as_rational(x)
        lo, hi = self.domain
        if not lo < x < hi:
            raise ValueError(f"{x} is not interior to [{lo}, {hi}]")
        i = bisect.bisect_left(self.knots, x)
        if self.knots[i] != x:
            return Fraction(0)
        slopes = self.slopes
        return slopes[i] - slopes[i - 1]

    def resample(self, knots: Iterable[Any]) -> PLFn:
        """Same function on the same domain, with extra knots inserted."""
        lo, hi = self.domain
        pts = sorted(set(self.knots) | {as_rational(k) for k in knots if lo <= as_rational(k) <= hi})
        return PLFn(tuple(pts), tuple(self._eval_window(p) for p in pts), self.period, self.jump)

    def simplified(self) -> PLFn:
        """Drop knots where the slope does not change."""
        slopes = self.slopes
        keep = [0] + [i for i in range(1, len(self.knots) - 1) if slopes[i] != slopes[i - 1]]
        keep.append(len(self.knots) - 1)
        return PLFn(
            tuple(self.knots[i] for i in keep), tuple(self.values[i] for i in keep), self.period, self.jump
        )

    def __add__(self, other: PLFn) -> PLFn:
        if not isinstance(other, PLFn):
            return NotImplemented
        if self.domain != other.domain or self.period != other.period:
            raise ValueError("can only add functions on the same domain")
        a, b = self.resample(other.knots), other.resample(self.knots)
        return PLFn(
            a.knots, tuple(x + y for x, y in zip(a.values, b.values)), self.period, self.jump + other.jump
        )

    def __neg__(self) -> PLFn:
        return PLFn(self.knots, tuple(-v for v in self.values), self.period, -self.jump)

    def __sub__(self, other: PLFn) -> PLFn:
        return self + (-other)

    def plus_affine(self, f: AffineFn) -> PLFn:
        if self.period is not None:
            raise ValueError("adding an affine function to a periodic PLFn changes its jump; not supported")
        return PLFn(self.knots, tuple(v + f(k) for k, v in zip(self.knots, self.values)))

    def on_interval(self, start: Any, end: Any) -> PLFn:
        """Restrict a global (jump 0) function on the circle to an interval of the line."""
        if not self.is_global:
            raise ValueError("only global functions on the circle can be unrolled")
        start, end = as_rational(start), as_rational(end)
        lo = self.knots[0]
        pts = {start, end}
        k = (start - lo) // self.period
        while lo + k * self.period <= end:
            pts.update(x + k * self.period for x in self.knots if start <= x + k * self.period <= end)
            k += 1
        pts = sorted(pts)
        return PLFn(tuple(pts), tuple(self(p) for p in pts))


@dataclass(frozen=True)
class Divisor:
    """A zero-cycle on the circle: distinct positions in ``[0, L)`` with nonzero weights."""

    length: Fraction
    points: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def from_points(cls, length: Any, pairs: Iterable[tuple[Any, Any]]) -> Divisor:
        length = as_rational(length)
        acc: dict[Fraction, Fraction] = {}
        for pos, w in pairs:
            pos = as_rational(pos)
            pos -= (pos // length) * length
            acc[pos] = acc.get(pos, Fraction(0)) + as_rational(w)
        pts = tuple(
            (p, int(w) if w.denominator == 1 else w) for p, w in sorted(acc.items()) if w != 0
        )
        return cls(length, pts)

    @property
    def degree(self) -> int:
        return sum(w for _, w in self.points)

    def __add__(self, other: Divisor) -> Divisor:
        if self.length != other.length:
            raise ValueError("divisors live on curves of different length")
        return Divisor.from_points(self.length, self.points + other.points)

    def __neg__(self) -> Divisor:
        return Divisor(self.length, tuple((p, -w) for p, w in self.points))

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def scaled(self, k: int) -> Divisor:
        return Divisor.from_points(self.length, ((p, k * w) for p, w in self.points))


def pl_divisor(f: PLFn) -> Divisor:
    """Divisor of a function on the circle: weight = right slope - left slope.

    At the wrap point the right slope includes the slope of the declared jump.
    """
    if f.period is None:
        raise ValueError("pl_divisor needs a function on the circle (period set)")
    slopes = f.slopes
    pairs = [(f.knots[i], slopes[i] - slopes[i - 1]) for i in range(1, len(slopes))]
    pairs.append((f.knots[0], slopes[0] + f.jump.slope - slopes[-1]))
    return Divisor.from_points(f.period, pairs)


def divisor_degree(d: Divisor) -> int:
    return d.degree
