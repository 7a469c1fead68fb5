"""Tropical vector bundles on the circle, given by cyclic gluing data.

A bundle of rank r on a curve with s charts is a list of transition maps
``M_1, ..., M_s``; ``M_k`` lives on the overlap ``O_k`` and sends chart ``k``
fibre coordinates to chart ``k+1`` coordinates (chart ``s+1`` is chart 1).
Every transition is a :class:`MonomialMatrix` whose entries are
:class:`AffineFn` in the lifted coordinate of chart ``k``.

Since all entries are globally affine, the whole bundle is captured by its
monodromy ``T(y) = M_s(y) (.) ... (.) M_1(y)``: a section is a map ``a`` on
the line with ``a(y - L) = T(y) (.) a(y)``, and a gauge ``g`` acts by
``T -> g(y - L) (.) T (.) g(y)^-1``.  Normalisation, decomposition and the
normal form below all work on this monodromy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .curve import ZERO_FN, AffineFn, Curve, continue_affine
from .trop_core import (
    MonomialMatrix,
    gmat_inverse,
    gmat_mul,
    is_permutation,
    perm_cycles,
    perm_identity,
)

TransitionMap = MonomialMatrix
# A transition given entry by entry; None is -inf.  Only validate_bundle reads these.
DenseTransition = tuple[tuple[Union[AffineFn, None], ...], ...]


class InvalidBundleError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def transition(perm: Sequence[int], entries: Sequence[AffineFn]) -> TransitionMap:
    return MonomialMatrix(tuple(perm), tuple(entries))


def identity_transition(r: int) -> TransitionMap:
    return MonomialMatrix.identity(r, ZERO_FN)


@dataclass(frozen=True)
class Bundle:
    curve: Curve
    rank: int
    transitions: tuple[Union[TransitionMap, DenseTransition], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"bundle rank must be at least 1, got {self.rank}")
        object.__setattr__(self, "transitions", tuple(self.transitions))

    @classmethod
    def trivial(cls, curve: Curve, rank: int) -> Bundle:
        return cls(curve, rank, (identity_transition(rank),) * curve.charts)

    @classmethod
    def from_transitions(cls, curve: Curve, rank: int, nontrivial: Mapping[int, TransitionMap]) -> Bundle:
        """Bundle with the given transitions (keyed by overlap index); the rest are identity."""
        bad = [k for k in nontrivial if not 1 <= k <= curve.charts]
        if bad:
            raise ValueError(f"overlap indices {bad} outside 1..{curve.charts}")
        return cls(
            curve,
            rank,
            tuple(nontrivial.get(k, identity_transition(rank)) for k in range(1, curve.charts + 1)),
        )

    @classmethod
    def single(cls, curve: Curve, m: TransitionMap) -> Bundle:
        """Bundle whose only non-trivial transition sits on ``O_1``."""
        return cls.from_transitions(curve, m.size, {1: m})

    @classmethod
    def line(cls, curve: Curve, slope, value_at_0=0) -> Bundle:
        return cls.single(curve, transition((1,), (AffineFn(slope, value_at_0),)))

    def is_single_transition(self) -> bool:
        ident = identity_transition(self.rank)
        return all(m == ident for m in self.transitions[1:])


def _dense_violations(k: int, grid: DenseTransition, r: int) -> list[str]:
    out = []
    if len(grid) != r or any(len(row) != r for row in grid):
        return [f"overlap {k}: transition is not {r}x{r}"]
    for i, row in enumerate(grid, start=1):
        n = sum(x is not None for x in row)
        if n != 1:
            out.append(f"overlap {k}: not in G(r): row {i} has {n} finite entries")
    for j in range(r):
        n = sum(row[j] is not None for row in grid)
        if n != 1:
            out.append(f"overlap {k}: not in G(r): column {j + 1} has {n} finite entries")
    for i, row in enumerate(grid, start=1):
        for j, x in enumerate(row, start=1):
            if x is not None and not x.is_integral:
                out.append(f"overlap {k}: entry ({i},{j}) not integer affine (slope {x.slope})")
    return out


def validate_bundle(bundle: Bundle) -> list[str]:
    """All violations of the bundle conditions; an empty list means valid.

    Checks that there is one transition per overlap, that each is a size-r
    element of G(r) at every point, and that every finite entry is integer
    affine.  The cocycle condition is vacuous because the chart layout has no
    triple overlaps, and fibre weights are 1 by construction.
    """
    r = bundle.rank
    violations = []
    if len(bundle.transitions) != bundle.curve.charts:
        violations.append(
            f"expected {bundle.curve.charts} transitions (one per overlap), got {len(bundle.transitions)}"
        )
    for k, m in enumerate(bundle.transitions, start=1):
        if not isinstance(m, MonomialMatrix):
            violations.extend(_dense_violations(k, m, r))
            continue
        if m.size != r:
            violations.append(f"overlap {k}: transition has size {m.size}, bundle rank is {r}")
            continue
        if not is_permutation(m.perm):
            violations.append(f"overlap {k}: not in G(r): column pattern {list(m.perm)} is not a permutation")
        for i, f in enumerate(m.values, start=1):
            if not f.is_integral:
                violations.append(f"overlap {k}: row {i} entry not integer affine (slope {f.slope})")
    return violations


def check_bundle(bundle: Bundle) -> Bundle:
    violations = validate_bundle(bundle)
    if violations:
        raise InvalidBundleError(violations)
    return bundle


def monodromy(bundle: Bundle) -> TransitionMap:
    """``M_s (.) ... (.) M_1`` as a G(r)-valued affine function of the lifted coordinate."""
    check_bundle(bundle)
    t = identity_transition(bundle.rank)
    for m in bundle.transitions:
        t = gmat_mul(m, t)
    return t


def degree(bundle: Bundle) -> int:
    """Minus the total slope of all transition entries."""
    check_bundle(bundle)
    total = sum(f.slope for m in bundle.transitions for f in m.values)
    return int(-total)


def direct_sum(f: Bundle, g: Bundle) -> Bundle:
    if f.curve != g.curve:
        raise ValueError("direct sum needs bundles on the same curve")
    check_bundle(f)
    check_bundle(g)
    shift = f.rank
    blocks = tuple(
        MonomialMatrix(m1.perm + tuple(p + shift for p in m2.perm), m1.values + m2.values)
        for m1, m2 in zip(f.transitions, g.transitions)
    )
    return Bundle(f.curve, f.rank + g.rank, blocks)


def direct_sum_all(bundles: Sequence[Bundle]) -> Bundle:
    out = bundles[0]
    for b in bundles[1:]:
        out = direct_sum(out, b)
    return out


@dataclass(frozen=True)
class Gauge:
    """A change of trivialisation: one G(r)-valued affine map per chart.

    ``maps[k-1]`` is written in the lifted coordinate of chart ``k``.
    """

    curve: Curve
    maps: tuple[MonomialMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != self.curve.charts:
            raise ValueError(f"gauge needs {self.curve.charts} chart maps, got {len(self.maps)}")
        sizes = {m.size for m in self.maps}
        if len(sizes) != 1:
            raise ValueError("all gauge maps must have the same size")
        for m in self.maps:
            if not is_permutation(m.perm) or not all(f.is_integral for f in m.values):
                raise ValueError("gauge maps must be G(r)-valued with integer slopes")

    @property
    def rank(self) -> int:
        return self.maps[0].size

    @classmethod
    def identity(cls, curve: Curve, r: int) -> Gauge:
        return cls(curve, (identity_transition(r),) * curve.charts)

    @classmethod
    def constant(cls, curve: Curve, m: MonomialMatrix) -> Gauge:
        """The same map on every chart (must be constant, or it would not glue at the cut)."""
        return cls(curve, (m,) * curve.charts)

    @classmethod
    def permutation(cls, curve: Curve, perm: Sequence[int]) -> Gauge:
        """The constant gauge ``A_perm`` on every chart."""
        return cls.constant(curve, MonomialMatrix(tuple(perm), (ZERO_FN,) * len(perm)))


def apply_gauge(bundle: Bundle, gauge: Gauge) -> Bundle:
    """Transitions ``E_{k+1} (.) M_k (.) E_k^-1``; the result is isomorphic to ``bundle``."""
    check_bundle(bundle)
    if gauge.curve != bundle.curve:
        raise ValueError("gauge and bundle live on different curves")
    if gauge.rank != bundle.rank:
        raise ValueError(f"gauge size {gauge.rank} does not match rank {bundle.rank}")
    s, length = bundle.curve.charts, bundle.curve.length
    out = []
    for k in range(1, s + 1):
        e_k = gauge.maps[k - 1]
        if k < s:
            e_next = gauge.maps[k]
        else:
            # chart 1 seen from O_s: its coordinate is y - L
            e_next = gauge.maps[0].map(lambda f: continue_affine(f, -1, length))
        out.append(gmat_mul(gmat_mul(e_next, bundle.transitions[k - 1]), gmat_inverse(e_k)))
    return Bundle(bundle.curve, bundle.rank, tuple(out))


def normalizing_gauge(bundle: Bundle) -> Gauge:
    """Gauge moving all gluing data onto ``O_1``: ``E_1 = E``, ``E_k = M_s (.) ... (.) M_k``."""
    check_bundle(bundle)
    maps = [identity_transition(bundle.rank)]
    acc = identity_transition(bundle.rank)
    tail = []
    for m in reversed(bundle.transitions[1:]):
        acc = gmat_mul(acc, m)
        tail.append(acc)
    maps.extend(reversed(tail))
    return Gauge(bundle.curve, tuple(maps))


def normalize(bundle: Bundle) -> Bundle:
    """Isomorphic bundle whose transitions are trivial except on ``O_1``."""
    return apply_gauge(bundle, normalizing_gauge(bundle))


def decompose(bundle: Bundle) -> list[Bundle]:
    """Split along the cycles of the monodromy permutation.

    Summands are ordered by the smallest coordinate of their cycle; each one
    keeps the coordinates of its cycle in increasing order.
    """
    t = normalize(bundle).transitions[0]
    out = []
    for cyc in perm_cycles(t.perm):
        coords = sorted(cyc)
        relabel = {c: n for n, c in enumerate(coords, start=1)}
        sub = transition([relabel[t.perm[c - 1]] for c in coords], [t.values[c - 1] for c in coords])
        out.append(Bundle.single(bundle.curve, sub))
    return out


def is_indecomposable(bundle: Bundle) -> bool:
    return len(decompose(bundle)) == 1


@dataclass(frozen=True, order=True)
class IndecClass:
    """Isomorphism class of an indecomposable bundle: rank, degree and offset.

    ``offset`` lies in ``[0, modulus)`` with ``modulus = gcd(rank, degree) * L``.
    """

    rank: int
    degree: int
    offset: Fraction
    modulus: Fraction

    def __str__(self) -> str:
        return f"r={self.rank} d={self.degree} t={self.offset} mod {self.modulus}"


def class_modulus(rank: int, deg: int, length) -> Fraction:
    return math.gcd(rank, deg) * Fraction(length)


def _normal_form_data(bundle: Bundle) -> tuple[Gauge, Bundle]:
    t = normalize(bundle).transitions[0]
    r = t.size
    cycles = perm_cycles(t.perm)
    if len(cycles) != 1:
        raise ValueError(f"decomposable: monodromy permutation has {len(cycles)} cycles")
    (order,) = cycles  # order[m] is the coordinate sent to position m+1
    curve, length = bundle.curve, bundle.curve.length
    # Gauge entries by cycle position i (1-based), pinned to 0 at position 2.
    # Rows 2..r of g(y-L) (.) T (.) g^-1 vanish iff
    #   psi_{i+1}(y) = psi_i(y - L) + T_{order(i)}(y),
    # and position r+1 wraps to position 1, which then carries everything.
    slopes = [Fraction(0)] * (r + 2)
    consts = [Fraction(0)] * (r + 2)
    for i in range(2, r + 1):
        f = t.values[order[i - 1] - 1]
        slopes[i + 1] = slopes[i] + f.slope
        consts[i + 1] = consts[i] - slopes[i] * length + f.value_at_0
    psi = (AffineFn(slopes[r + 1], consts[r + 1]),) + tuple(
        AffineFn(slopes[i], consts[i]) for i in range(2, r + 1)
    )
    g = MonomialMatrix(tuple(order), psi)
    g_shifted = g.map(lambda f: continue_affine(f, -1, length))
    gauge = Gauge(curve, (g,) + (g_shifted,) * (curve.charts - 1))
    gauge_from_original = _compose_gauges(normalizing_gauge(bundle), gauge)
    return gauge_from_original, apply_gauge(bundle, gauge_from_original)


def _compose_gauges(first: Gauge, second: Gauge) -> Gauge:
    return Gauge(first.curve, tuple(gmat_mul(b, a) for a, b in zip(first.maps, second.maps)))


def normal_form_bundle(bundle: Bundle) -> tuple[Gauge, Bundle]:
    """A gauge and the bundle it produces, with single transition ``D(phi, 0, ..., 0) (.) A_(12...r)``.

    Only defined for indecomposable bundles.
    """
    return _normal_form_data(bundle)


def normal_form(bundle: Bundle) -> IndecClass:
    """Classify an indecomposable bundle by ``(rank, degree, offset mod gcd(r, d) L)``.

    The offset is the value of the collapsed diagonal entry ``phi`` at the left
    endpoint of ``O_1`` (lifted coordinate 0).
    """
    _, nf = _normal_form_data(bundle)
    phi = nf.transitions[0].values[0]
    r = bundle.rank
    deg = int(-phi.slope)
    modulus = class_modulus(r, deg, bundle.curve.length)
    offset = phi.value_at_0 % modulus
    return IndecClass(r, deg, offset, modulus)


def canonical_bundle(curve: Curve, rank: int, deg: int, offset) -> Bundle:
    """The bundle with transition ``D(phi, 0, ..., 0) (.) A_(12...r)`` on ``O_1``, ``phi(0) = offset``."""
    perm = tuple(i % rank + 1 for i in range(1, rank + 1))
    values = (AffineFn(-deg, offset),) + (ZERO_FN,) * (rank - 1)
    return Bundle.single(curve, transition(perm, values))


def classify(bundle: Bundle) -> tuple[IndecClass, ...]:
    """Sorted multiset of the classes of the indecomposable summands."""
    return tuple(sorted(normal_form(b) for b in decompose(bundle)))


def is_isomorphic(f: Bundle, g: Bundle) -> bool:
    if f.curve != g.curve:
        raise ValueError("bundles live on different curves")
    if f.rank != g.rank:
        return False
    return classify(f) == classify(g)


def pull_back_cover(bundle: Bundle, m: int) -> Bundle:
    """Pull back along the m-fold cover of the curve by the circle of length m L.

    Sheet ``q`` of the cover carries charts ``q s + 1, ..., q s + s``; their
    transitions are the original ones re-based to the lifted coordinate ``y + q L``.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValueError(f"cover degree must be a positive integer, got {m!r}")
    check_bundle(bundle)
    curve = bundle.curve
    new_curve = Curve(curve.length * m, curve.charts * m)
    out = []
    for q in range(m):
        for t in bundle.transitions:
            out.append(t.map(lambda f, q=q: continue_affine(f, -q, curve.length)))
    return Bundle(new_curve, bundle.rank, tuple(out))


__all__ = [
    "Bundle",
    "DenseTransition",
    "Gauge",
    "IndecClass",
    "InvalidBundleError",
    "TransitionMap",
    "apply_gauge",
    "canonical_bundle",
    "check_bundle",
    "class_modulus",
    "classify",
    "decompose",
    "degree",
    "direct_sum",
    "direct_sum_all",
    "identity_transition",
    "is_indecomposable",
    "is_isomorphic",
    "monodromy",
    "normal_form",
    "normal_form_bundle",
    "normalize",
    "normalizing_gauge",
    "pull_back_cover",
    "transition",
    "validate_bundle",
]
