"""Independent oracles and random generators shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from tropbundles.bundles import Bundle, Gauge, monodromy, transition
from tropbundles.curve import AffineFn, Curve, PLFn
from tropbundles.trop_core import (
    NEG_INF,
    MonomialMatrix,
    TropMatrix,
    all_permutations,
    identity_matrix,
    perm_compose,
    perm_cycles,
    perm_inverse,
    tmat_mul,
)

LENGTHS = (Fraction(1), Fraction(3), Fraction(5, 2), Fraction(2, 3), Fraction(4))


# -- oracles -------------------------------------------------------------------

def has_monomial_inverse(a: TropMatrix) -> bool:
    """Search every monomial candidate A' whose values are forced by A (A' at (k, pi(k)) is -A at (pi(k), k))."""
    r = a.rows
    e = identity_matrix(r)
    for pi in all_permutations(r):
        rows = [[NEG_INF] * r for _ in range(r)]
        ok = True
        for k in range(r):
            x = a.entries[pi[k] - 1][k]
            if not x.is_finite:
                ok = False
                break
            rows[k][pi[k] - 1] = -x.value
        if not ok:
            continue
        cand = TropMatrix.from_rows(rows)
        if tmat_mul(a, cand) == e and tmat_mul(cand, a) == e:
            return True
    return False


def twisted_conjugate_search(f: Bundle, g: Bundle, bound: int = 6) -> bool:
    """Brute-force search for an affine gauge relating the two monodromies.

    Looks for ``h = (tau, psi)`` with integer slopes in ``[-bound, bound]`` and
    ``T_g(y) = h(y - L) (.) T_f(y) (.) h(y)^-1``.  Offsets of ``psi`` are solved
    exactly: the constant parts give ``b_i - b_{sigma'(i)} = c_i``, solvable iff
    every cycle of ``sigma'`` has ``sum c_i = 0``.
    """
    if f.rank != g.rank or f.curve != g.curve:
        return False
    t, u = monodromy(f), monodromy(g)
    r, length = f.rank, f.curve.length
    cycles = perm_cycles(u.perm)
    for tau in all_permutations(r):
        # conjugated permutation i -> tau^-1(sigma(tau(i))) must equal u.perm
        if perm_compose(perm_inverse(tau), perm_compose(t.perm, tau)) != u.perm:
            continue
        for a in product(range(-bound, bound + 1), repeat=r):
            if any(
                a[i] + t.values[tau[i] - 1].slope - a[u.perm[i] - 1] != u.values[i].slope for i in range(r)
            ):
                continue
            c = [u.values[i].value_at_0 - t.values[tau[i] - 1].value_at_0 + a[i] * length for i in range(r)]
            if all(sum(c[i - 1] for i in cyc) == 0 for cyc in cycles):
                return True
    return False


def diophantine_iso(c: Fraction, c2: Fraction, r: int, d: int, bound: int = 10) -> bool:
    """Is ``-(c2 - c) = r * alpha - k * d`` solvable with ``alpha, k`` in ``[-bound, bound]``?"""
    diff = c2 - c
    return any(-diff == r * al - k * d for al in range(-bound, bound + 1) for k in range(-bound, bound + 1))


# -- random generators ---------------------------------------------------------

def rand_rational(rng: random.Random, span: int = 8, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def rand_perm(rng: random.Random, r: int) -> tuple[int, ...]:
    p = list(range(1, r + 1))
    rng.shuffle(p)
    return tuple(p)


def rand_affine(rng: random.Random, slope_bound: int = 5) -> AffineFn:
    return AffineFn(rng.randint(-slope_bound, slope_bound), rand_rational(rng))


def rand_curve(rng: random.Random, max_charts: int = 6) -> Curve:
    return Curve(rng.choice(LENGTHS), rng.randint(3, max_charts))


def rand_bundle(
    rng: random.Random,
    curve: Curve | None = None,
    rank: int | None = None,
    max_rank: int = 4,
    slope_bound: int = 5,
    density: float = 0.7,
) -> Bundle:
    curve = curve or rand_curve(rng)
    r = rank or rng.randint(1, max_rank)
    maps = {}
    for k in range(1, curve.charts + 1):
        if rng.random() < density:
            maps[k] = transition(rand_perm(rng, r), [rand_affine(rng, slope_bound) for _ in range(r)])
    return Bundle.from_transitions(curve, r, maps)


def rand_gauge(rng: random.Random, curve: Curve, r: int, slope_bound: int = 3) -> Gauge:
    return Gauge(
        curve,
        tuple(
            MonomialMatrix(rand_perm(rng, r), tuple(rand_affine(rng, slope_bound) for _ in range(r)))
            for _ in range(curve.charts)
        ),
    )


def rand_global_pl(rng: random.Random, length: Fraction, pieces: int = 4, slope_bound: int = 3) -> PLFn:
    """Random continuous PL function on the circle (jump 0) with integer slopes."""
    while True:
        cuts = sorted({Fraction(rng.randint(1, 47), 48) * length for _ in range(pieces - 2)})
        knots = [Fraction(0), *cuts]
        value = rand_rational(rng)
        values = [value]
        for a, b in zip(knots, knots[1:]):
            values.append(values[-1] + rng.randint(-slope_bound, slope_bound) * (b - a))
        # close up with two integer slopes p, q meeting at m in (knots[-1], length)
        start, need = knots[-1], value - values[-1]
        p, q = rng.randint(-slope_bound, slope_bound), rng.randint(-slope_bound, slope_bound)
        if p == q:
            continue
        m = (need - q * length + p * start) / (p - q)
        if not start < m < length:
            continue
        knots += [m, length]
        values += [values[-1] + p * (m - start), value]
        return PLFn(tuple(knots), tuple(values), period=length)
