"""A finitely additive integration operator on the naturals that is not
countably additive.

The classical witness for such a measure is non-constructive, so this
module realizes the computable core instead: the tail-limit functional
on eventually-constant functions from the naturals into the unit
interval, paired with the zero/one measure on the algebra of finite and
cofinite sets.  On this class every computation the separation argument
performs is exact: the functional is affine, weakly averaging, and
1-Lipschitz for the sup metric; every singleton has measure zero while
the whole space has measure one; and the indicator sequence of the
final segments [n, infinity) converges pointwise to zero while the
functional stays pinned at one, which is precisely the failure of the
limits axiom that separates finite from countable additivity.

Finite/cofinite sets form an algebra, not a sigma-algebra (a countable
union of finite sets can escape it); the restriction is deliberate and
the failure above is still exactly exhibited on representable families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import GirylabError, InvariantError
from .rational import ONE, ZERO, format_rational, require_unit
from .duality import LimitWitness, respects_limits
from .verdicts import Verdict, failed, passed


@dataclass(frozen=True)
class EventualFn:
    """An eventually constant function from the naturals into [0,1]:
    an explicit finite prefix, then ``tail`` forever."""

    prefix: tuple[Fraction, ...]
    tail: Fraction

    def __post_init__(self):
        for v in self.prefix:
            require_unit(Fraction(v), "prefix value")
        require_unit(Fraction(self.tail), "tail value")

    @staticmethod
    def constant(r: Fraction) -> "EventualFn":
        return EventualFn((), Fraction(r))

    @staticmethod
    def final_segment_indicator(n: int) -> "EventualFn":
        """The indicator of [n, infinity): n leading zeros, then ones."""
        if n < 0:
            raise InvariantError("segment start must be a natural number")
        return EventualFn((ZERO,) * n, ONE)

    def value(self, n: int) -> Fraction:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    def blend(self, other: "EventualFn", r: Fraction) -> "EventualFn":
        r = Fraction(r)
        width = max(len(self.prefix), len(other.prefix))
        prefix = tuple(r * self.value(i) + (1 - r) * other.value(i)
                       for i in range(width))
        return EventualFn(prefix, r * self.tail + (1 - r) * other.tail)

    def sup_distance(self, other: "EventualFn") -> Fraction:
        width = max(len(self.prefix), len(other.prefix))
        gaps = [abs(self.value(i) - other.value(i)) for i in range(width)]
        gaps.append(abs(self.tail - other.tail))
        return max(gaps)


@dataclass(frozen=True)
class FinCofSet:
    """A finite or cofinite set of naturals, stored by its finite side."""

    cofinite: bool
    elements: frozenset[int]

    def __post_init__(self):
        if any(n < 0 for n in self.elements):
            raise InvariantError("elements must be natural numbers")

    @staticmethod
    def finite(elements: Iterable[int]) -> "FinCofSet":
        return FinCofSet(False, frozenset(elements))

    @staticmethod
    def cofinite_excluding(elements: Iterable[int]) -> "FinCofSet":
        return FinCofSet(True, frozenset(elements))

    @staticmethod
    def whole() -> "FinCofSet":
        return FinCofSet(True, frozenset())

    def contains(self, n: int) -> bool:
        return (n not in self.elements) if self.cofinite else (n in self.elements)

    def complement(self) -> "FinCofSet":
        return FinCofSet(not self.cofinite, self.elements)

    def disjoint_from(self, other: "FinCofSet") -> bool:
        if self.cofinite and other.cofinite:
            return False  # two cofinite sets always meet
        if not self.cofinite and not other.cofinite:
            return not (self.elements & other.elements)
        fin, cof = (self, other) if not self.cofinite else (other, self)
        return fin.elements <= cof.elements

    def union(self, other: "FinCofSet") -> "FinCofSet":
        if not self.cofinite and not other.cofinite:
            return FinCofSet.finite(self.elements | other.elements)
        if self.cofinite and other.cofinite:
            return FinCofSet.cofinite_excluding(self.elements & other.elements)
        fin, cof = (self, other) if not self.cofinite else (other, self)
        return FinCofSet.cofinite_excluding(cof.elements - fin.elements)

    def indicator(self) -> EventualFn:
        bound = max(self.elements, default=-1) + 1
        inside, outside = (ONE, ZERO) if not self.cofinite else (ZERO, ONE)
        prefix = tuple(inside if n in self.elements else outside
                       for n in range(bound))
        return EventualFn(prefix, outside if not self.cofinite else ONE)


def limit_functional(f: EventualFn) -> Fraction:
    """The value of f at infinity.  Affine and weakly averaging on the
    eventually constant class, but it does not respect pointwise limits."""
    return f.tail


def cofinite_measure(a: FinCofSet) -> Fraction:
    """Zero on finite sets, one on cofinite sets; this is the limit
    functional applied to the indicator, and it is finitely additive on
    every representable disjoint pair."""
    return ONE if a.cofinite else ZERO


def sup_continuity_check(f: EventualFn, g: EventualFn) -> Verdict:
    """1-Lipschitz for the sup metric: the functional moves the two
    values by at most the sup distance.  Computed exactly."""
    eps = f.sup_distance(g)
    gap = abs(limit_functional(f) - limit_functional(g))
    name = "sup-metric 1-Lipschitz"
    if gap <= eps:
        return passed(name, witness={
            "sup_distance": format_rational(eps), "gap": format_rational(gap)})
    return failed(name, {
        "sup_distance": format_rational(eps), "gap": format_rational(gap),
        "f_tail": format_rational(f.tail), "g_tail": format_rational(g.tail)})


def vanishing_segment_witness() -> LimitWitness:
    """The certified sequence n -> indicator of [n, infinity): at the
    point k it vanishes from index k+1 on, so it converges pointwise to
    zero everywhere."""
    return LimitWitness(
        terms=lambda n: EventualFn.final_segment_indicator(n),
        cert=lambda k: k + 1,
        points=None)


def singleton_mass_sum(upto: int) -> Fraction:
    """The exact partial sum of the singleton masses below ``upto``
    (every term is zero, and the sum is computed, not asserted)."""
    if upto < 0:
        raise GirylabError("bound must be a natural number")
    total = ZERO
    for n in range(upto):
        total += cofinite_measure(FinCofSet.finite((n,)))
    return total


def countable_additivity_violation(segments: int = 12,
                                   singleton_check: int = 1000) -> dict:
    """The separation report: vanishing singleton masses against total
    mass one, and the limits-axiom refutation on the final segments.

    The witness sequence converges pointwise to zero (certified index
    k+1 at the point k) while the functional value is pinned at one for
    every n, which countably additive operators cannot do.
    """
    w = vanishing_segment_witness()
    w.validate(lambda f, k: f.value(k), sample_points=range(24))
    verdict = respects_limits(limit_functional, w)
    values = [format_rational(limit_functional(w.terms(n)))
              for n in range(segments)]
    return {
        "singleton_partial_sum": format_rational(singleton_mass_sum(singleton_check)),
        "singletons_checked": singleton_check,
        "total_mass": format_rational(cofinite_measure(FinCofSet.whole())),
        "respects_limits": verdict.to_jsonable(),
        "witness_sequence": "indicator of [n, infinity)",
        "pointwise_limit": "0/1",
        "functional_values": values,
    }
