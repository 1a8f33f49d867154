"""Integration operators and their bijection with measures.

A functional here maps measurable unit-interval-valued functions to the
unit interval.  The admissible ones are affine (preserve convex
combinations) and weakly averaging (send each constant to its value);
those correspond one-to-one with finitely additive probability
measures via

    to_measure(phi)(A)  = phi(indicator of A)
    to_functional(pi)(f) = integral of f against pi

and on finite sigma-algebras finite and countable additivity coincide,
so the same pair of maps covers both.  Functionals carry one of two
bodies: an extensional coefficient vector on the atoms (a point of the
probability simplex, admissible by construction) or an intensional
closure, which is how deliberate non-examples (max, square, clamped
sum) enter the test suites with refuting power.

Affineness of an intensional body is decided by randomized search with
reported witnesses, not proof; the limits axiom is checked against a
certified witness sequence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import InvariantError, RejectionError, SpaceMismatchError
from .rational import HALF, ONE, ZERO, format_rational, require_unit
from .spaces import (FinSpace, IFunction, MeasMap, atom_image,
                     atom_indicator, require_measurable)
from .measures import Measure
from .monad import MetaMeasure
from .verdicts import Verdict, failed, passed


@dataclass(frozen=True)
class Functional:
    """A map from measurable I-valued functions on a space to I.

    Exactly one of ``coeffs`` (extensional: evaluate as the dot product
    with the atom values) and ``evaluator`` (intensional closure) is
    set.  Intensional evaluators must be pure; results are range-checked
    on every call.
    """

    space: FinSpace
    coeffs: Optional[tuple[Fraction, ...]] = None
    evaluator: Optional[Callable[[IFunction], Fraction]] = None
    label: str = ""

    def __post_init__(self):
        if (self.coeffs is None) == (self.evaluator is None):
            raise InvariantError("exactly one of coeffs/evaluator must be given")
        if self.coeffs is not None:
            if len(self.coeffs) != len(self.space.atoms):
                raise InvariantError("need one coefficient per atom")
            for c in self.coeffs:
                if c < 0:
                    raise InvariantError("extensional coefficients must be >= 0")
            if sum(self.coeffs, ZERO) != ONE:
                raise InvariantError("extensional coefficients must sum to 1")

    @staticmethod
    def extensional(space: FinSpace, coeffs, label: str = "") -> "Functional":
        return Functional(space, tuple(Fraction(c) for c in coeffs), None,
                          label or "extensional")

    @staticmethod
    def intensional(space: FinSpace, evaluator, label: str) -> "Functional":
        return Functional(space, None, evaluator, label)

    @property
    def is_extensional(self) -> bool:
        return self.coeffs is not None

    def __call__(self, f: IFunction) -> Fraction:
        if f.space != self.space:
            raise SpaceMismatchError("argument lives on a different space")
        if self.coeffs is not None:
            return sum((c * v for c, v in zip(self.coeffs, f.values)), ZERO)
        value = Fraction(self.evaluator(f))
        return require_unit(value, f"value of {self.label or 'functional'}")

    def describe(self) -> dict:
        if self.is_extensional:
            return {"kind": "extensional",
                    "coefficients": [format_rational(c) for c in self.coeffs]}
        return {"kind": "intensional", "label": self.label}


def evaluate(phi: Functional, f: IFunction) -> Fraction:
    return phi(f)


# -- the bijection with measures --------------------------------------


def to_measure(phi: Functional) -> Measure:
    """Weights read off by evaluating phi on the atom indicators.

    Admissibility is guarded on the atom basis plus constant spot
    checks: the indicator weights must be a probability vector and phi
    must fix the constants 0, 1/2, 1.  A failing check raises
    RejectionError carrying the witness function and values (the max
    functional fails the indicator sum; the square functional fails at
    the constant 1/2).  Full affineness of intensional bodies is the
    province of ``is_affine``.
    """
    space = phi.space
    weights = []
    for i in range(len(space.atoms)):
        w = phi(atom_indicator(space, i))
        if not ZERO <= w <= ONE:
            raise RejectionError(
                "atom indicator evaluates outside [0,1]",
                {"check": "indicator weight in [0,1]", "atom": i,
                 "value": format_rational(w)})
        weights.append(w)
    total = sum(weights, ZERO)
    if total != ONE:
        raise RejectionError(
            "atom indicator weights do not sum to 1",
            {"check": "additivity on the atom indicators",
             "witness_functions": "indicator of each atom",
             "weights": [format_rational(w) for w in weights],
             "sum": format_rational(total), "expected_sum": "1/1"})
    for r in (ZERO, HALF, ONE):
        got = phi(IFunction.constant(space, r))
        if got != r:
            raise RejectionError(
                "constant function is not fixed",
                {"check": "weak averaging on constants",
                 "witness_function": f"constant {format_rational(r)}",
                 "expected": format_rational(r), "got": format_rational(got)})
    return Measure(space, tuple(weights))


def to_functional(pi: Measure) -> Functional:
    """Integration against pi, in extensional coefficient form."""
    return Functional.extensional(pi.space, pi.weights, "integration")


# -- functorial action, unit, multiplication ---------------------------


def pushforward_functional(g: MeasMap, phi: Functional) -> Functional:
    """The functional f on cod goes to phi(f after g).

    For an extensional body this is the coefficient pushforward, which
    is what makes the bijection with measures natural.
    """
    require_measurable(g)
    if phi.space != g.dom:
        raise SpaceMismatchError("functional lives off the domain of g")
    if phi.is_extensional:
        coeffs = [ZERO] * len(g.cod.atoms)
        for i, c in enumerate(phi.coeffs):
            coeffs[atom_image(g, i)] += c
        return Functional.extensional(g.cod, coeffs, phi.label)
    return Functional.intensional(
        g.cod, lambda f: phi(f.compose_with(g)), f"{phi.label} after map")


def evaluation_at(space: FinSpace, point: str) -> Functional:
    """The unit: f goes to f(point).  Extensionally, the Dirac coefficients."""
    i = space.atom_index_of_point(point)
    coeffs = tuple(ONE if j == i else ZERO for j in range(len(space.atoms)))
    return Functional.extensional(space, coeffs, f"evaluation at {point}")


@dataclass(frozen=True)
class FunctionalMixture:
    """A finite mixture of functionals: the second-level inputs to the
    multiplication, mirroring MetaMeasure."""

    space: FinSpace
    support: tuple[tuple[Functional, Fraction], ...]

    def __post_init__(self):
        if not self.support:
            raise InvariantError("mixture support must be nonempty")
        total = ZERO
        for phi, w in self.support:
            if phi.space != self.space:
                raise SpaceMismatchError("mixture component lives off the space")
            if w < 0:
                raise InvariantError("mixture weights must be nonnegative")
            total += w
        if total != ONE:
            raise InvariantError(
                f"mixture weights must sum to 1/1, got {format_rational(total)}")

    @staticmethod
    def point(phi: Functional) -> "FunctionalMixture":
        return FunctionalMixture(phi.space, ((phi, ONE),))

    def apply_to_evaluation(self, f: IFunction) -> Fraction:
        """The mixture applied to the evaluation map of f: the weighted
        sum of the component values at f."""
        return sum((w * phi(f) for phi, w in self.support), ZERO)

    def measure_image(self) -> MetaMeasure:
        """Transport each component across the bijection."""
        return MetaMeasure(self.space, tuple(
            (to_measure(phi), w) for phi, w in self.support))


def mix_functionals(psi: FunctionalMixture) -> Functional:
    """Multiplication on the functional side: the weighted mixture.

    Stays extensional when every component is; flattening the
    measure-side image of psi gives exactly to_measure of this result.
    """
    if all(phi.is_extensional for phi, _ in psi.support):
        coeffs = [ZERO] * len(psi.space.atoms)
        for phi, w in psi.support:
            for j, c in enumerate(phi.coeffs):
                coeffs[j] += w * c
        return Functional.extensional(psi.space, coeffs, "mixture")
    return Functional.intensional(psi.space, psi.apply_to_evaluation, "mixture")


# -- randomized verdicts ------------------------------------------------


def _random_unit(rng: random.Random, max_den: int = 64) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def _random_ifunction(rng: random.Random, space: FinSpace) -> IFunction:
    return IFunction(space, tuple(
        _random_unit(rng) for _ in space.atoms))


def is_affine(phi: Functional, trials: int = 200,
              seed: Optional[int] = None) -> Verdict:
    """Verdict on the affine and weakly averaging axioms, with the
    derived homogeneity, additivity, and monotonicity consequences.

    Extensional bodies pass exactly (they are convex coefficient
    vectors).  Intensional bodies are probed on ``trials`` sampled
    (f, g, r) triples; the first violation is returned as a witness.
    """
    name = "affine and weakly averaging"
    if phi.is_extensional:
        return passed(name, trials=0, seed=seed)
    rng = random.Random(seed)
    space = phi.space
    for t in range(trials):
        f = _random_ifunction(rng, space)
        g = _random_ifunction(rng, space)
        r = _random_unit(rng)

        lhs = phi(f.blend(g, r))
        rhs = r * phi(f) + (1 - r) * phi(g)
        if lhs != rhs:
            return failed(name, {
                "axiom": "affine: phi(r*f + (1-r)*g) = r*phi(f) + (1-r)*phi(g)",
                "f": f.describe(), "g": g.describe(), "r": format_rational(r),
                "lhs": format_rational(lhs), "rhs": format_rational(rhs),
                "case": t}, trials=t + 1, seed=seed)

        want = phi(IFunction.constant(space, r))
        if want != r:
            return failed(name, {
                "axiom": "weakly averaging: phi(constant r) = r",
                "r": format_rational(r), "got": format_rational(want),
                "case": t}, trials=t + 1, seed=seed)

        scaled = phi(f.scale(r))
        if scaled != r * phi(f):
            return failed(name, {
                "axiom": "homogeneity: phi(r*f) = r*phi(f)",
                "f": f.describe(), "r": format_rational(r),
                "lhs": format_rational(scaled),
                "rhs": format_rational(r * phi(f)),
                "case": t}, trials=t + 1, seed=seed)

        headroom = IFunction(space, tuple(ONE - v for v in f.values))
        h = IFunction(space, tuple(
            min(a, b) for a, b in zip(g.values, headroom.values)))
        if phi(f.add(h)) != phi(f) + phi(h):
            return failed(name, {
                "axiom": "additivity: phi(f+h) = phi(f) + phi(h) when f+h <= 1",
                "f": f.describe(), "h": h.describe(),
                "lhs": format_rational(phi(f.add(h))),
                "rhs": format_rational(phi(f) + phi(h)),
                "case": t}, trials=t + 1, seed=seed)

        bigger = f.blend(IFunction.constant(space, ONE), r)
        if not phi(f) <= phi(bigger):
            return failed(name, {
                "axiom": "monotone: f <= f' pointwise implies phi(f) <= phi(f')",
                "f": f.describe(), "f_prime": bigger.describe(),
                "lhs": format_rational(phi(f)),
                "rhs": format_rational(phi(bigger)),
                "case": t}, trials=t + 1, seed=seed)
    return passed(name, trials=trials, seed=seed)


# -- the limits axiom ----------------------------------------------------


@dataclass(frozen=True)
class LimitWitness:
    """A certified sequence of functions converging pointwise to zero.

    ``terms(n)`` is the n-th function; ``cert(p)`` is an index beyond
    which the sequence vanishes at the point/atom ``p``.  ``points``
    lists the finitely many atoms of a finite space, or is None for a
    naturals-indexed carrier (then only a sample of points can be
    spot-checked).  Certification is validated, not assumed.
    """

    terms: Callable[[int], object]
    cert: Callable[[object], int]
    points: Optional[tuple] = None

    def max_cert(self) -> Optional[int]:
        if self.points is None:
            return None
        return max((self.cert(p) for p in self.points), default=0)

    def validate(self, value_at: Callable[[object, object], Fraction],
                 sample_points=None, extra_indices: int = 3) -> None:
        pts = self.points if self.points is not None else tuple(sample_points or ())
        for p in pts:
            n0 = self.cert(p)
            for n in range(n0, n0 + extra_indices):
                v = value_at(self.terms(n), p)
                if v != ZERO:
                    raise InvariantError(
                        f"certificate lies: term {n} is {format_rational(v)} "
                        f"at point {p!r}, certified zero from {n0}")

    @staticmethod
    def on_space(space: FinSpace, terms: Callable[[int], IFunction],
                 atom_certs) -> "LimitWitness":
        certs = tuple(int(c) for c in atom_certs)
        if len(certs) != len(space.atoms):
            raise InvariantError("need one certificate index per atom")
        w = LimitWitness(terms, lambda i: certs[i],
                         tuple(range(len(space.atoms))))
        w.validate(lambda f, i: f.values[i])
        return w


PhiLike = Union[Functional, Callable]


def respects_limits(phi: PhiLike, w: LimitWitness, thresholds: int = 12,
                    probe: int = 48) -> Verdict:
    """Does phi send the certified vanishing sequence to values
    converging to zero?

    Extensional functionals on a finite space pass exactly: beyond the
    largest certified index the terms are identically zero, so the
    value there is zero.  Otherwise the sequence of values is probed on
    a finite window; pass requires, for every threshold 2^-k up to
    ``thresholds``, a probed tail staying at or below it.  A fail
    carries the stuck lower bound (the infimum of the probed tail).
    """
    name = "respects limits"
    if not isinstance(w, LimitWitness):
        raise InvariantError("witness must be a certified LimitWitness")

    if isinstance(phi, Functional) and phi.is_extensional:
        if w.points is None:
            raise InvariantError("finite-space functional needs atom certificates")
        n_star = w.max_cert()
        tail = w.terms(n_star)
        if any(v != ZERO for v in tail.values):
            raise InvariantError("certificate lies: tail term is not zero")
        value = phi(tail)
        return passed(name, witness={
            "mode": "exact tail evaluation",
            "tail_index": n_star, "value": format_rational(value)})

    horizon = probe
    if w.points is not None:
        horizon = max(probe, w.max_cert() + 4)
    values = [Fraction(phi(w.terms(n))) for n in range(horizon)]

    suffix_max = values[:]
    for i in range(horizon - 2, -1, -1):
        suffix_max[i] = max(suffix_max[i], suffix_max[i + 1])

    for k in range(1, thresholds + 1):
        bound = Fraction(1, 1 << k)
        if not any(sm <= bound for sm in suffix_max):
            stuck = min(values[-max(1, horizon // 4):])
            return failed(name, {
                "threshold": format_rational(bound),
                "stuck_at": format_rational(stuck),
                "probed": horizon,
                "values_head": [format_rational(v) for v in values[:8]]})
    return passed(name, witness={"mode": "probe window", "probed": horizon})


# -- deliberate non-examples for the suites -----------------------------


def max_functional(space: FinSpace) -> Functional:
    """f goes to the maximum of its atom values.  Weakly averaging but
    not affine; the indicator weights sum to the number of atoms."""
    return Functional.intensional(
        space, lambda f: max(f.values), "max over atoms")


def square_functional(space: FinSpace, point: Optional[str] = None) -> Functional:
    """f goes to f(point) squared.  Fixes 0 and 1 but not affine."""
    pt = point if point is not None else space.carrier[0]
    i = space.atom_index_of_point(pt)
    return Functional.intensional(
        space, lambda f: f.values[i] * f.values[i], f"square at {pt}")


def clamped_sum_functional(space: FinSpace) -> Functional:
    """f goes to min(1, sum of atom values).  Monotone but not affine."""
    return Functional.intensional(
        space, lambda f: min(ONE, sum(f.values, ZERO)), "clamped sum")
