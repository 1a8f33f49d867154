"""Convex-set machinery: canonical affine maps into the unit interval,
natural families determined by one functional, naturality checking, and
reconstruction of the functional from a sequence-space monoid action.

An affine map from the n-cube into I has the canonical form
a0 + sum(a_i * x_i); it lands in I exactly when its extreme values over
the cube do, which is the pair of inequalities enforced here.  The
infinite-dimensional object is the convex set of unit-interval
sequences converging to zero; its elements and the coefficient lists of
affine maps on it are kept as finite lists (implicit zero tail), dense
enough to witness every identity at this scale while staying exact.

A natural family is determined by its component at I: at each finite
power it applies that functional coordinatewise, and naturality against
affine maps is precisely what forces the functional to be affine and
weakly averaging.  Composing with the sequence object adds the limits
axiom.  Both directions are exercised by the checkers below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import ActionSquareError, InvariantError
from .rational import ONE, ZERO, format_rational, require_unit
from .spaces import FinSpace, IFunction
from .duality import Functional
from .verdicts import Verdict, failed, passed


def _extremes(a0: Fraction, coeffs: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    lo = a0 + sum((min(c, ZERO) for c in coeffs), ZERO)
    hi = a0 + sum((max(c, ZERO) for c in coeffs), ZERO)
    return lo, hi


@dataclass(frozen=True)
class AffineMap:
    """An affine map from the n-cube into I: a0 + sum(a_i * x_i)."""

    arity: int
    a0: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.arity:
            raise InvariantError("need one coefficient per coordinate")
        lo, hi = _extremes(self.a0, self.coeffs)
        if lo < ZERO or hi > ONE:
            raise InvariantError(
                "map leaves the unit interval: extremes "
                f"[{format_rational(lo)}, {format_rational(hi)}]")

    def __call__(self, xs: Sequence[Fraction]) -> Fraction:
        if len(xs) != self.arity:
            raise InvariantError(f"expected {self.arity} coordinates, got {len(xs)}")
        for x in xs:
            require_unit(Fraction(x), "coordinate")
        return self.a0 + sum((c * Fraction(x) for c, x in zip(self.coeffs, xs)), ZERO)

    @staticmethod
    def projection(arity: int, i: int) -> "AffineMap":
        if not 0 <= i < arity:
            raise InvariantError("projection index out of range")
        return AffineMap(arity, ZERO, tuple(
            ONE if j == i else ZERO for j in range(arity)))

    @staticmethod
    def constant(arity: int, r: Fraction) -> "AffineMap":
        r = require_unit(Fraction(r), "constant")
        return AffineMap(arity, r, (ZERO,) * arity)

    @staticmethod
    def blend(r: Fraction) -> "AffineMap":
        """The binary convex combination (x, y) -> r*x + (1-r)*y."""
        r = require_unit(Fraction(r), "blend weight")
        return AffineMap(2, ZERO, (r, ONE - r))

    def compose(self, inner: Sequence["AffineMap"]) -> "AffineMap":
        """self after a tuple of maps sharing one domain cube.

        The composite coefficients are the usual bilinear combination;
        the into-I invariant holds automatically because the composite
        is itself an affine map of a cube into I.
        """
        if len(inner) != self.arity:
            raise InvariantError("need one inner map per coordinate")
        arities = {g.arity for g in inner}
        if len(arities) != 1:
            raise InvariantError("inner maps must share a domain")
        m = arities.pop()
        a0 = self.a0 + sum((c * g.a0 for c, g in zip(self.coeffs, inner)), ZERO)
        coeffs = tuple(
            sum((c * g.coeffs[j] for c, g in zip(self.coeffs, inner)), ZERO)
            for j in range(m))
        return AffineMap(m, a0, coeffs)

    def describe(self) -> dict:
        return {"arity": self.arity, "a0": format_rational(self.a0),
                "coefficients": [format_rational(c) for c in self.coeffs]}


@dataclass(frozen=True)
class VanishingSequence:
    """A sequence in the unit interval converging to zero, stored as a
    finite entry list with an implicit zero tail (trailing zeros are
    stripped, so equality is equality of sequences)."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        for v in self.entries:
            require_unit(Fraction(v), "sequence entry")
        k = len(self.entries)
        while k > 0 and self.entries[k - 1] == ZERO:
            k -= 1
        if k != len(self.entries):
            object.__setattr__(self, "entries", self.entries[:k])

    def at(self, i: int) -> Fraction:
        return self.entries[i] if i < len(self.entries) else ZERO

    def describe(self) -> list[str]:
        return [format_rational(v) for v in self.entries]


@dataclass(frozen=True)
class SequenceAffineMap:
    """An affine map from the vanishing-sequence set into I, with a
    finite coefficient list (absolute summability is structural).

    The supremum of the linear part over the set is approached by
    eventually-zero sequences, so the same cube-extreme inequalities
    bound the range.
    """

    a0: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        lo, hi = _extremes(self.a0, self.coeffs)
        if lo < ZERO or hi > ONE:
            raise InvariantError(
                "map leaves the unit interval: extremes "
                f"[{format_rational(lo)}, {format_rational(hi)}]")

    def __call__(self, x: VanishingSequence) -> Fraction:
        return self.a0 + sum(
            (c * x.at(i) for i, c in enumerate(self.coeffs)), ZERO)

    def describe(self) -> dict:
        return {"a0": format_rational(self.a0),
                "coefficients": [format_rational(c) for c in self.coeffs]}


# -- sampling valid affine maps ------------------------------------------


def _random_fraction(rng: random.Random, lo: int, hi: int, max_den: int = 16) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def sample_affine(rng: random.Random, arity: int,
                  kind: Optional[str] = None) -> AffineMap:
    """Draw a valid affine map of the n-cube into I.

    ``kind`` forces a boundary case: "projection", "constant" or
    "blend" (binary convex combination embedded at two coordinates).
    Otherwise raw rational coefficients are drawn and rescaled and
    translated into the feasible polytope, so every sample satisfies
    the into-I invariant by construction.
    """
    if kind == "projection" or (kind is None and arity >= 1 and rng.random() < 0.15):
        return AffineMap.projection(arity, rng.randrange(arity))
    if kind == "constant" or (kind is None and rng.random() < 0.15):
        return AffineMap.constant(arity, _random_fraction(rng, 0, 1))
    if kind == "blend":
        if arity != 2:
            raise InvariantError("blend maps have arity 2")
        return AffineMap.blend(_random_fraction(rng, 0, 1))

    raw0 = _random_fraction(rng, -2, 2)
    raw = [_random_fraction(rng, -2, 2) for _ in range(arity)]
    lo, hi = _extremes(raw0, raw)
    if hi == lo:  # all coefficients zero: clamp the constant into I
        return AffineMap.constant(arity, min(ONE, max(ZERO, raw0)))
    span = _random_fraction(rng, 0, 1, 8) or Fraction(1, 2)
    scale = span / (hi - lo)
    shift = _random_fraction(rng, 0, 1, 8) * (ONE - span)
    a0 = (raw0 - lo) * scale + shift
    coeffs = tuple(c * scale for c in raw)
    return AffineMap(arity, a0, coeffs)


def sample_sequence_affine(rng: random.Random, length: int) -> SequenceAffineMap:
    finite = sample_affine(rng, length)
    return SequenceAffineMap(finite.a0, finite.coeffs)


# -- natural families ------------------------------------------------------


@dataclass(frozen=True)
class CodensityElement:
    """A natural family determined by its component at I.

    The component at the n-cube applies the functional coordinatewise
    to an n-tuple of functions; the sequence-space component applies it
    entrywise to an eventually-zero list of functions.  Natural families
    of the forgetful functor correspond to admissible functionals;
    lifting a non-admissible one is allowed, and naturality checking
    then refutes it.
    """

    base: FinSpace
    phi: Functional

    def at_power(self, fs: Sequence[IFunction]) -> tuple[Fraction, ...]:
        return tuple(self.phi(f) for f in fs)

    def at_sequences(self, fs: Sequence[IFunction]) -> VanishingSequence:
        return VanishingSequence(tuple(self.phi(f) for f in fs))


def lift(phi: Functional) -> CodensityElement:
    return CodensityElement(phi.space, phi)


def _compose_pointwise(h: AffineMap, fs: Sequence[IFunction],
                       space: FinSpace) -> IFunction:
    values = tuple(
        h([f.values[i] for f in fs]) for i in range(len(space.atoms)))
    return IFunction(space, values)


def _compose_pointwise_seq(h: SequenceAffineMap, fs: Sequence[IFunction],
                           space: FinSpace) -> IFunction:
    values = []
    for i in range(len(space.atoms)):
        seq = VanishingSequence(tuple(f.values[i] for f in fs))
        values.append(require_unit(h(seq), "composite value"))
    return IFunction(space, tuple(values))


def check_naturality(alpha: CodensityElement, h, fs: Sequence[IFunction]) -> Verdict:
    """Compare the two paths around one naturality square exactly.

    Path one applies the family at the power (or sequence) object and
    then the affine map; path two composes the affine map with the
    function tuple pointwise and applies the component at I.  The
    verdict carries the residual when the paths disagree.
    """
    fs = tuple(fs)
    for f in fs:
        if f.space != alpha.base:
            raise InvariantError("tuple component lives off the base space")
    if isinstance(h, AffineMap):
        if h.arity != len(fs):
            raise InvariantError("arity does not match the tuple length")
        via_family = h(alpha.at_power(fs))
        via_component = alpha.phi(_compose_pointwise(h, fs, alpha.base))
        target = "power"
    elif isinstance(h, SequenceAffineMap):
        via_family = h(alpha.at_sequences(fs))
        via_component = alpha.phi(_compose_pointwise_seq(h, fs, alpha.base))
        target = "sequences"
    else:
        raise InvariantError("h must be an affine map of a power or of sequences")

    name = f"naturality at {target}"
    if via_family == via_component:
        return passed(name)
    return failed(name, {
        "h": h.describe(),
        "functions": [f.describe() for f in fs],
        "via_family": format_rational(via_family),
        "via_component": format_rational(via_component),
        "residual": format_rational(via_component - via_family)})


def check_vanishing_component(alpha: CodensityElement, fs: Sequence[IFunction],
                              certified_len: int) -> Verdict:
    """The sequence component must output a valid vanishing sequence:
    entries in [0,1] and zero past the certified tail index."""
    fs = tuple(fs)
    for f in fs[certified_len:]:
        if any(v != ZERO for v in f.values):
            raise InvariantError(
                "tail certificate lies: nonzero function past the certified index")
    out = alpha.at_sequences(fs)
    bad = [i for i in range(certified_len, len(out.entries))
           if out.at(i) != ZERO]
    name = "sequence component lands in the vanishing set"
    if bad:
        return failed(name, {
            "nonzero_past_certified_index": bad,
            "entries": out.describe(), "certified_len": certified_len})
    return passed(name, witness={"entries": out.describe()})


# -- reconstruction from a sequence-space action ---------------------------

Action = Callable[[Sequence[IFunction]], VanishingSequence]


def action_of(alpha: CodensityElement) -> Action:
    """Forget a natural family to its sequence-space action."""
    return alpha.at_sequences


def embed_first(f: IFunction) -> list[IFunction]:
    """The function placed at the first coordinate, zero elsewhere."""
    return [f]


def functional_from_action(action: Action, space: FinSpace,
                           rng: random.Random, trials: int = 40,
                           max_len: int = 4) -> Functional:
    """Recover the determining functional from a sequence-space action
    and verify the three monoid generator squares.

    The generators are single-entry projections, the first-two-entries
    convex combination, and the constant maps; the action must commute
    with post-composition by each.  Commutation is tested on sampled
    inputs, not assumed; a failing square raises ActionSquareError
    naming the generator and the input.  On success the returned
    functional is f -> first entry of action(f at the first coordinate).
    """
    def phi(f: IFunction) -> Fraction:
        return action(embed_first(f)).at(0)

    def sample_list(k: int) -> list[IFunction]:
        return [IFunction(space, tuple(
            Fraction(rng.randint(0, 12), 12) for _ in space.atoms))
            for _ in range(k)]

    for t in range(trials):
        k = rng.randint(1, max_len)
        fs = sample_list(k)

        # entrywise recovery: projecting then acting equals acting then projecting
        i = rng.randrange(k)
        lhs = action([fs[i]])
        rhs_val = action(fs).at(i)
        if lhs.at(0) != rhs_val or len(lhs.entries) > 1:
            raise ActionSquareError(
                "projection square fails", f"projection onto entry {i}",
                {"input": [f.describe() for f in fs],
                 "acted_then_projected": format_rational(rhs_val),
                 "projected_then_acted": lhs.describe(), "case": t})

        # affineness: blending the first two entries commutes with the action
        if k >= 2:
            r = Fraction(rng.randint(0, 8), 8)
            blended = [fs[0].blend(fs[1], r)]
            lhs = action(blended).at(0)
            out = action(fs)
            rhs = r * out.at(0) + (1 - r) * out.at(1)
            if lhs != rhs:
                raise ActionSquareError(
                    "convex-combination square fails",
                    f"first-two-entries blend with weight {format_rational(r)}",
                    {"input": [f.describe() for f in fs],
                     "blend_then_act": format_rational(lhs),
                     "act_then_blend": format_rational(rhs), "case": t})

        # weak averaging: the constant map forces constants to be fixed
        r = Fraction(rng.randint(0, 8), 8)
        lhs = action([IFunction.constant(space, r)]).at(0)
        if lhs != r:
            raise ActionSquareError(
                "constant square fails", f"constant map at {format_rational(r)}",
                {"expected": format_rational(r), "got": format_rational(lhs),
                 "case": t})

    return Functional.intensional(space, phi, "reconstructed from action")
