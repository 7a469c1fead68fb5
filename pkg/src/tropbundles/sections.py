"""Rational sections, their divisors, and Chern classes on the curve."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import Bundle, check_bundle, degree, monodromy
from .curve import AffineFn, Divisor, PLFn
from .trop_core import MonomialMatrix, gmat_inverse, gmat_mul


@dataclass(frozen=True)
class Section:
    """Chart-wise components: ``components[k-1][j-1]`` is coordinate j on chart k.

    Each component is a :class:`PLFn` on the closed arc of its chart, in that
    chart's lifted coordinate.  All components here are finite on bounded
    arcs, so every section of this type is bounded.
    """

    components: tuple[tuple[PLFn, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.components[0])

    def sum_on_chart(self, k: int) -> PLFn:
        comps = self.components[k - 1]
        total = comps[0]
        for c in comps[1:]:
            total = total + c
        return total


def _act(m: MonomialMatrix, comps: tuple[PLFn, ...]) -> tuple[PLFn, ...]:
    """``M (.) a`` for a vector of PL functions on a common interval."""
    return tuple(comps[j - 1].plus_affine(f) for f, j in zip(m.values, m.perm))


def section_violations(bundle: Bundle, section: Section) -> list[str]:
    """Reasons ``section`` is not a section of ``bundle``; empty if it is."""
    curve, r = bundle.curve, bundle.rank
    if len(section.components) != curve.charts:
        return [f"section has {len(section.components)} charts, curve has {curve.charts}"]
    out = []
    for k, comps in enumerate(section.components, start=1):
        if len(comps) != r:
            out.append(f"chart {k}: {len(comps)} components, rank is {r}")
            continue
        lo, hi = curve.arc(k)
        for j, c in enumerate(comps, start=1):
            if c.domain != (lo, hi):
                out.append(f"chart {k} component {j}: domain {c.domain} is not the arc [{lo}, {hi}]")
            elif not c.is_integral:
                out.append(f"chart {k} component {j}: slopes are not integers")
    if out:
        return out
    length = curve.length
    for k in range(1, curve.charts + 1):
        m = bundle.transitions[k - 1]
        lo, hi = curve.overlap(k)
        here = section.components[k - 1]
        there = section.components[k % curve.charts]
        shift = -length if k == curve.charts else Fraction(0)
        pts = {lo, hi}
        for c in here:
            pts.update(x for x in c.knots if lo <= x <= hi)
        for c in there:
            pts.update(x - shift for x in c.knots if lo <= x - shift <= hi)
        for x in sorted(pts):
            lhs = tuple(c(x + shift) for c in there)
            rhs = m.map(lambda f: f(x)).act(tuple(c(x) for c in here))
            if lhs != rhs:
                out.append(f"overlap {k}: incompatible at {x}")
                break
    return out


def is_section_of(bundle: Bundle, section: Section) -> bool:
    return not section_violations(bundle, section)


def _ramp(start: Fraction, end: Fraction, target: Fraction) -> PLFn:
    """PL function from 0 at ``start`` to ``target`` at ``end`` with integer slopes.

    Uses one integer slope up to a breakpoint, then stays flat; no breakpoint
    is added when the target is 0 or reachable with a single slope.
    """
    width = end - start
    if target == 0:
        return PLFn((start, end), (Fraction(0), Fraction(0)))
    steep = -(-abs(target) // width)  # ceil(|target| / width), at least 1
    bp = start + abs(target) / steep
    if bp == end:
        return PLFn((start, end), (Fraction(0), target))
    return PLFn((start, bp, end), (Fraction(0), target, target))


def canonical_section(bundle: Bundle) -> Section:
    """A deterministic bounded rational section.

    Built in the frame of chart 1 continued along the chain of charts: the
    vector ``a`` vanishes on ``[-L/s, 0]`` (the part of chart 1 over ``O_s``),
    is forced on ``O_s`` by ``a(y - L) = T(y) (.) a(y)``, and is joined by a
    ramp with one breakpoint per coordinate in between.
    """
    check_bundle(bundle)
    curve, r = bundle.curve, bundle.rank
    length, step, s = curve.length, curve.step, curve.charts
    t_inv = gmat_inverse(monodromy(bundle))
    # on O_s: a_j(y) = (T(y)^-1 (.) 0)_j = t_inv.values[j]
    p = (s - 1) * step
    frame = []
    for j in range(r):
        tail = t_inv.values[j]
        ramp = _ramp(Fraction(0), p, tail(p))
        knots = (-step,) + ramp.knots + (length,)
        values = (Fraction(0),) + ramp.values + (tail(length),)
        frame.append(PLFn(knots, values).simplified())
    frame = tuple(frame)
    # chart k coordinates are P_k (.) a with P_k = M_{k-1} (.) ... (.) M_1
    comps = []
    p_k = MonomialMatrix.identity(r, AffineFn())
    for k in range(1, s + 1):
        lo, hi = curve.arc(k)
        local = tuple(_restrict(c, lo, hi) for c in frame)
        comps.append(_act(p_k, local))
        p_k = gmat_mul(bundle.transitions[k - 1], p_k)
    return Section(tuple(comps))


def _restrict(f: PLFn, lo: Fraction, hi: Fraction) -> PLFn:
    inner = [x for x in f.knots if lo < x < hi]
    pts = (lo, *inner, hi)
    return PLFn(pts, tuple(f(x) for x in pts))


def perturb_section(section: Section, h: PLFn, bundle: Bundle) -> Section:
    """Add the global function ``h`` on the circle to every component.

    Transitions commute with adding the same function to all coordinates, so
    the result is again a section of the same bundle.
    """
    if not h.is_global or h.period != bundle.curve.length:
        raise ValueError("perturbation must be a global function on this curve")
    comps = []
    for k, chart in enumerate(section.components, start=1):
        lo, hi = bundle.curve.arc(k)
        hk = h.on_interval(lo, hi)
        comps.append(tuple(c + hk for c in chart))
    return Section(tuple(comps))


def chern1(bundle: Bundle, section: Section) -> Divisor:
    """Divisor of the sum of the section's coordinates.

    Kinks are read off in whichever chart contains the point in its interior;
    sums on overlapping charts differ by an affine function, so the choice
    does not matter.
    """
    check_bundle(bundle)
    violations = section_violations(bundle, section)
    if violations:
        raise ValueError("incompatible section: " + "; ".join(violations))
    curve = bundle.curve
    sums = [section.sum_on_chart(k) for k in range(1, curve.charts + 1)]
    candidates = {curve.reduce(x) for f in sums for x in f.knots}
    pairs = []
    for pos in sorted(candidates):
        k, x = curve.chart_containing(pos)
        pairs.append((pos, sums[k - 1].kink(x)))
    return Divisor.from_points(curve.length, pairs)


def chern_k_degree(bundle: Bundle, k: int) -> int | None:
    """Degree of ``c_k(F) . X``.

    ``k = 1`` gives the degree.  ``c_0`` is the identity, so ``c_0 . X`` is the
    curve itself rather than a zero-cycle and ``None`` is returned.  Every
    other ``k`` gives 0: for ``k`` outside ``0..rank`` the class vanishes, and
    for ``2 <= k <= rank`` the cycle has negative dimension on a curve.
    """
    if k == 1:
        return degree(bundle)
    if k == 0:
        return None
    return 0
