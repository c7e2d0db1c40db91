"""Multigraded K-polynomials and equivariant Hilbert series.

Numerators are integer Laurent polynomials in the torus characters;
denominators stay factored, one (1 - t^w) per ambient variable.
Equality of rational functions is decided by exact evaluation at
random rational points, never by symbolic normalization.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import DEFAULT_SPAIR_BUDGET, Ideal, MonomialIdeal
from .multipoly import LaurentPoly, Monomial, RingError, Weight, laurent_eval
from .partitions import Partition
from .series import ONE, ZERO


class SpecializationError(ValueError):
    """A denominator factor vanished at the chosen evaluation point."""


def monomial_weight(e: Monomial, weights: Sequence[Weight]) -> Weight:
    if len(e) != len(weights):
        raise RingError("weight list does not cover the variables")
    total = Weight((0,) * weights[0].r)
    for k, w in zip(e, weights):
        if k:
            total = total + k * w
    return total


def kpoly_monomial(J: MonomialIdeal, weights: Sequence[Weight]) -> LaurentPoly:
    """Alternating Tor character of S/J by the colon recursion.

    K(f_1..f_m) = K(f_1..f_{m-1}) - t^{w(f_m)} K((f_1..f_{m-1}) : f_m),
    memoized on the canonical minimal generator tuples encountered.
    """
    if len(weights) != J.nvars:
        raise RingError("weight list does not cover the variables")
    r = weights[0].r
    unit = ((0,) * J.nvars,)
    memo: Dict[Tuple[Monomial, ...], LaurentPoly] = {}

    def run(gens: Tuple[Monomial, ...]) -> LaurentPoly:
        if not gens:
            return LaurentPoly.one(r)
        if gens == unit:
            return LaurentPoly.zero(r)
        got = memo.get(gens)
        if got is not None:
            return got
        f = gens[-1]
        rest = MonomialIdeal(J.nvars, gens[:-1])
        out = run(rest.gens) - run(rest.colon(f).gens).twist(monomial_weight(f, weights))
        memo[gens] = out
        return out

    return run(J.gens)


def monomial_colength(J: MonomialIdeal) -> int:
    """Number of standard monomials; RingError if the quotient is infinite."""
    bounds = []
    for i in range(J.nvars):
        pure = [g[i] for g in J.gens if all(x == 0 for k, x in enumerate(g) if k != i)]
        if not pure:
            raise RingError(f"no pure power of variable {i}: infinite colength")
        bounds.append(min(pure))
    return sum(1 for e in itertools.product(*[range(b) for b in bounds]) if not J.contains(e))


def _char_value(w: Weight, theta=None, s=None) -> Fraction:
    return laurent_eval(LaurentPoly.char(w), theta=theta, s=s)


def _weight_to_json(w: Weight) -> dict:
    return {"nums": list(w.nums), "scale": w.scale}


def _weight_from_json(d: dict) -> Weight:
    return Weight(tuple(int(x) for x in d["nums"]), int(d["scale"]))


class HilbertSeries:
    """K-polynomial numerator over a product of (1 - t^w) factors."""

    __slots__ = ("numerator", "denom_weights")

    def __init__(self, numerator: LaurentPoly, denom_weights: Sequence[Weight]):
        denom = tuple(denom_weights)
        for w in denom:
            if w.is_zero():
                raise RingError("denominator weights must be nonzero")
            if w.r != numerator.r:
                raise RingError("weight rank mismatch")
        self.numerator = numerator
        self.denom_weights = tuple(sorted(denom, key=lambda w: w.sort_key()))

    @property
    def r(self) -> int:
        return self.numerator.r

    def evaluate(self, theta: Sequence[Fraction] | None = None,
                 s: Sequence[Fraction] | None = None) -> Fraction:
        den = ONE
        for w in self.denom_weights:
            f = ONE - _char_value(w, theta=theta, s=s)
            if not f:
                raise SpecializationError("denominator factor vanishes at this point")
            den *= f
        return laurent_eval(self.numerator, theta=theta, s=s) / den

    def to_json(self) -> str:
        num = [
            {"w": _weight_to_json(w), "c": c}
            for w, c in sorted(self.numerator.terms.items(), key=lambda t: t[0].sort_key())
        ]
        return json.dumps(
            {
                "schema": "hilbert-series/1",
                "rank": self.r,
                "numerator": num,
                "denom_weights": [_weight_to_json(w) for w in self.denom_weights],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "HilbertSeries":
        data = json.loads(text)
        if data.get("schema") != "hilbert-series/1":
            raise RingError(f"unsupported series schema {data.get('schema')!r}")
        r = int(data["rank"])
        terms = {_weight_from_json(t["w"]): int(t["c"]) for t in data["numerator"]}
        denom = [_weight_from_json(d) for d in data["denom_weights"]]
        return cls(LaurentPoly(r, terms), denom)

    def render(self, var: str = "t") -> str:
        mult: Dict[Weight, int] = {}
        for w in self.denom_weights:
            mult[w] = mult.get(w, 0) + 1
        factors = []
        for w in sorted(mult, key=lambda w: w.sort_key()):
            base = f"(1 - {LaurentPoly.char(w).render(var)})"
            factors.append(base if mult[w] == 1 else f"{base}^{mult[w]}")
        return f"({self.numerator.render(var)}) / " + " ".join(factors)

    __repr__ = render


def hilbert_series(
    I,
    weights: Sequence[Weight],
    order: str = "grevlex",
    budget: int = DEFAULT_SPAIR_BUDGET,
) -> HilbertSeries:
    """Series of S/I: K of the initial ideal over the ambient factors."""
    if isinstance(I, MonomialIdeal):
        J = I
    elif I.gens:
        J = I.initial_ideal(order, budget)
    else:
        J = MonomialIdeal(I.ring.n, [])
    return HilbertSeries(kpoly_monomial(J, weights), weights)


def positive_functional(weights: Sequence[Weight], radius: int = 3) -> Optional[Tuple[int, ...]]:
    """Integer direction d with <d, w> > 0 for every weight, or None.

    Exhaustive search over boxes of growing radius; the all-ones
    direction is tried first since it covers every positively graded
    case.
    """
    r = weights[0].r
    ones = (1,) * r
    if all(w.dot(ones) > 0 for w in weights):
        return ones
    for rad in range(1, radius + 1):
        for d in itertools.product(range(-rad, rad + 1), repeat=r):
            if not any(d):
                continue
            if all(w.dot(d) > 0 for w in weights):
                return d
    return None


def graded_dim_oracle(
    J: MonomialIdeal,
    weights: Sequence[Weight],
    depth: int,
    direction: Optional[Sequence[int]] = None,
) -> Optional[Dict[Weight, int]]:
    """Standard-monomial count per multidegree, up to phi-degree `depth`.

    phi is a linear functional positive on every variable weight; when
    none exists in the search box the oracle is inapplicable and None
    is returned (the math is not wrong, just unverifiable this way).
    """
    if len(weights) != J.nvars:
        raise RingError("weight list does not cover the variables")
    if direction is None:
        direction = positive_functional(weights)
        if direction is None:
            return None
    phis = [w.dot(direction) for w in weights]
    if any(p <= 0 for p in phis):
        raise RingError("direction is not positive on the variable weights")
    counts: Dict[Weight, int] = {}

    def rec(i: int, mono: Tuple[int, ...], deg: Fraction):
        if i == J.nvars:
            if not J.contains(mono):
                w = monomial_weight(mono, weights)
                counts[w] = counts.get(w, 0) + 1
            return
        k = 0
        while deg + k * phis[i] <= depth:
            rec(i + 1, mono + (k,), deg + k * phis[i])
            k += 1

    rec(0, (), Fraction(0))
    return counts


def series_box_expansion(
    h: HilbertSeries, direction: Sequence[int], depth: int
) -> Dict[Weight, int]:
    """Multigraded coefficients of the series with phi-degree <= depth."""
    acc: Dict[Weight, int] = {}
    for w, c in h.numerator.terms.items():
        if w.dot(direction) <= depth:
            acc[w] = acc.get(w, 0) + c
    for wden in h.denom_weights:
        phi = wden.dot(direction)
        if phi <= 0:
            raise RingError("direction is not positive on the variable weights")
        out: Dict[Weight, int] = {}
        for w, c in acc.items():
            cur, d = w, w.dot(direction)
            while d <= depth:
                out[cur] = out.get(cur, 0) + c
                cur = cur + wden
                d += phi
        acc = out
    return {w: c for w, c in acc.items() if c}


def _esym_points(k: int, power: int = 1):
    for S in itertools.combinations(range(6), k):
        e = [0] * 6
        for i in S:
            e[i] = power
        yield tuple(e)


def _lp6(points) -> LaurentPoly:
    terms: Dict[Weight, int] = {}
    for e in points:
        w = Weight(e)
        terms[w] = terms.get(w, 0) + 1
    return LaurentPoly(6, terms)


def schur_K_G26() -> LaurentPoly:
    """Alternating character sum of the resolution of the G(2,6) cone ring.

    Each syzygy module is a Schur functor of the 6-dimensional space;
    the pieces below are their characters written through elementary
    symmetric sums of u_0..u_5.
    """
    e4 = _lp6(_esym_points(4))
    e6 = _lp6(_esym_points(6))

    def five_sets_weighted():
        # sum over |S|=5 of (prod_{i in S} u_i) * (sum_{i in S} u_i)
        for S in itertools.combinations(range(6), 5):
            for i in S:
                e = [0] * 6
                for j in S:
                    e[j] = 1
                e[i] += 1
                yield tuple(e)

    L51 = _lp6(five_sets_weighted()) + 5 * e6

    def h2_points():
        for i in range(6):
            for j in range(i, 6):
                e = [0] * 6
                e[i] += 1
                e[j] += 1
                yield tuple(e)

    L611 = e6 * _lp6(h2_points())

    def five_squares_plus_mixed():
        yield from _esym_points(5, power=2)
        for S in itertools.combinations(range(6), 4):
            yield tuple(2 if i in S else 1 for i in range(6))

    L55 = _lp6(five_squares_plus_mixed())
    L651 = e6 * _lp6(five_sets_weighted()) + 5 * (e6 * e6)
    L662 = e6 * e6 * _lp6(_esym_points(2))
    L666 = e6 * e6 * e6
    return LaurentPoly.one(6) - e4 + L51 - L611 - L55 + L651 - L662 + L666


def random_fractions(rng: random.Random, count: int, height: int = 30) -> Tuple[Fraction, ...]:
    """Nonzero rationals with numerator and denominator up to `height`.

    Values of absolute value 1 are excluded; signs are random.
    """
    out: List[Fraction] = []
    while len(out) < count:
        num = rng.randint(1, height)
        den = rng.randint(1, height)
        if num == den:
            continue
        q = Fraction(num, den)
        out.append(-q if rng.random() < 0.5 else q)
    return tuple(out)


def series_equal(a, b, rng: Optional[random.Random] = None, trials: int = 3,
                 height: int = 100, retry_cap: int = 50) -> bool:
    """Exact agreement of two series at `trials` random specializations.

    Both arguments need .r and .evaluate(s=...); points where either
    denominator vanishes are resampled up to the retry cap.
    """
    if a.r != b.r:
        raise RingError("rank mismatch")
    rng = rng or random.Random(0)
    done = attempts = 0
    while done < trials:
        if attempts >= retry_cap:
            raise SpecializationError("could not find enough generic points")
        attempts += 1
        s = random_fractions(rng, a.r, height)
        try:
            va = a.evaluate(s=s)
            vb = b.evaluate(s=s)
        except SpecializationError:
            continue
        if va != vb:
            return False
        done += 1
    return True


def reciprocity_check(h, lam: Partition, rng: Optional[random.Random] = None,
                      trials: int = 3, height: int = 30, retry_cap: int = 50) -> bool:
    """Self-reciprocity of an equivariant series of a length-|lam| quotient.

    Checks H(theta) = (-1)^n (theta_1..theta_r)^{-n} prod_{i in lam}
    theta^i H(theta^{-1}) at `trials` random specializations, with
    theta_j = s_j^2 kept rational through the s variables.
    """
    rng = rng or random.Random(0)
    n = lam.n
    done = attempts = 0
    while done < trials:
        if attempts >= retry_cap:
            raise SpecializationError("could not find enough generic points")
        attempts += 1
        s = random_fractions(rng, lam.r, height)
        try:
            left = h.evaluate(s=s)
            right = h.evaluate(s=tuple(1 / x for x in s))
        except SpecializationError:
            continue
        theta = [x * x for x in s]
        prod_all = ONE
        for t in theta:
            prod_all *= t
        cell_mono = ONE
        for cell in lam.cells:
            for t, k in zip(theta, cell):
                if k:
                    cell_mono *= t ** k
        factor = (Fraction(-1) ** n) * prod_all ** (-n) * cell_mono
        if left != factor * right:
            return False
        done += 1
    return True
