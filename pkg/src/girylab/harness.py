"""Randomized property suites: case generation, seeding, verdicts.

Every case draws from its own deterministic stream derived from
(seed, property name, case index), so reports are byte-identical across
reruns and independent of execution order.  Random rationals use
bounded denominators (the identities under test are denominator
agnostic) and measures are built from integer compositions normalized
exactly, never from floats.

Refutation searches walk a smallest-first ladder of candidate
witnesses (projections, constants, binary blends, then random shapes
of growing arity) under a bounded step budget, so a reported witness is
already minimal for that ladder; failures found at a random stage are
re-minimized by re-walking the ladder.
"""

from __future__ import annotations

import hashlib
import json
import random
import string
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import ActionSquareError, GirylabError, RejectionError
from .rational import HALF, ONE, ZERO, format_rational
from .spaces import FinSpace, IFunction, MeasMap, atom_indicator, generate_sigma
from .measures import Measure, change_of_variables_check, pushforward
from .monad import Kernel, MetaMeasure, bind, dirac, flatten, kleisli_compose
from .duality import (Functional, FunctionalMixture, LimitWitness,
                      clamped_sum_functional, evaluation_at, is_affine,
                      max_functional, mix_functionals, pushforward_functional,
                      respects_limits, square_functional, to_functional,
                      to_measure)
from .codensity import (AffineMap, VanishingSequence, action_of,
                        check_naturality, check_vanishing_component,
                        functional_from_action, lift, sample_affine,
                        sample_sequence_affine)
from .hull import extend_to_convex, hull_membership
from .counterexample import (EventualFn, FinCofSet, cofinite_measure,
                             countable_additivity_violation, limit_functional,
                             sup_continuity_check, vanishing_segment_witness)

SUITE_NAMES = ("monad-laws", "duality", "change-of-variables", "naturality",
               "monoid-reduction", "convex-bound", "counterexample")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 500
    max_carrier: int = 8
    max_arity: int = 4
    max_hull_dim: int = 3

    def __post_init__(self):
        for name in ("trials", "max_carrier", "max_arity", "max_hull_dim"):
            if getattr(self, name) < 1:
                raise GirylabError(f"{name} must be at least 1")

    def to_jsonable(self) -> dict:
        return {"seed": self.seed, "trials": self.trials,
                "max_carrier": self.max_carrier, "max_arity": self.max_arity,
                "max_hull_dim": self.max_hull_dim}


def case_rng(seed: int, prop: str, index: int) -> random.Random:
    """Independent deterministic stream for one case of one property."""
    digest = hashlib.sha256(f"{seed}:{prop}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass
class PropertyRecord:
    name: str
    law: str
    result: str
    witness: Optional[dict]
    trials: int
    seed: int
    duration: float = 0.0  # kept off the canonical serialization

    def to_jsonable(self) -> dict:
        return {"property": self.name, "law": self.law, "result": self.result,
                "witness": self.witness, "trials": self.trials,
                "seed": self.seed}


@dataclass
class Report:
    suite: str
    config: SuiteConfig
    records: list[PropertyRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.result == "pass" for r in self.records)

    def to_jsonable(self) -> dict:
        return {"suite": self.suite, "config": self.config.to_jsonable(),
                "result": "pass" if self.passed else "fail",
                "properties": [r.to_jsonable() for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


# -- generators ----------------------------------------------------------


def random_unit_fraction(rng: random.Random, max_den: int = 64) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(0, den), den)


def generate_space(rng: random.Random, cfg: SuiteConfig,
                   min_points: int = 1) -> FinSpace:
    n = rng.randint(min_points, max(min_points, cfg.max_carrier))
    labels = list(string.ascii_lowercase[:n])
    gens = []
    for _ in range(rng.randint(0, 3)):
        gens.append([lab for lab in labels if rng.random() < 0.5])
    return generate_sigma(labels, gens)


def generate_measure(rng: random.Random, space: FinSpace) -> Measure:
    """Integer composition normalized exactly; no floats involved."""
    n = len(space.atoms)
    parts = [rng.randint(0, 8) for _ in range(n)]
    if sum(parts) == 0:
        parts[rng.randrange(n)] = 1
    total = sum(parts)
    return Measure(space, tuple(Fraction(p, total) for p in parts))


def generate_ifunction(rng: random.Random, space: FinSpace) -> IFunction:
    return IFunction(space, tuple(
        random_unit_fraction(rng) for _ in space.atoms))


def generate_measurable_map(rng: random.Random, dom: FinSpace,
                            cod: FinSpace) -> MeasMap:
    """Constant on dom atoms, hence measurable by construction."""
    table = [0] * len(dom.carrier)
    for atom in dom.atoms:
        target = rng.randrange(len(cod.carrier))
        for i in range(len(dom.carrier)):
            if atom >> i & 1:
                table[i] = target
    return MeasMap(dom, cod, tuple(table))


def generate_kernel(rng: random.Random, dom: FinSpace, cod: FinSpace) -> Kernel:
    return Kernel(dom, cod, tuple(
        generate_measure(rng, cod) for _ in dom.atoms))


def generate_meta_measure(rng: random.Random, space: FinSpace,
                          width: int = 4) -> MetaMeasure:
    k = rng.randint(1, width)
    mix = generate_measure(rng, _simplex_space(k))
    return MetaMeasure(space, tuple(
        (generate_measure(rng, space), w) for w in mix.weights))


def generate_functional(rng: random.Random, space: FinSpace,
                        adversarial_rate: float = 0.0) -> Functional:
    """A mix of admissible extensional bodies and deliberate non-examples."""
    if rng.random() < adversarial_rate:
        maker = rng.choice((max_functional, square_functional,
                            clamped_sum_functional))
        return maker(space)
    return to_functional(generate_measure(rng, space))


def generate_functional_mixture(rng: random.Random, space: FinSpace,
                                width: int = 4) -> FunctionalMixture:
    k = rng.randint(1, width)
    mix = generate_measure(rng, _simplex_space(k))
    return FunctionalMixture(space, tuple(
        (generate_functional(rng, space), w) for w in mix.weights))


def _simplex_space(k: int) -> FinSpace:
    return FinSpace.discrete([f"s{i}" for i in range(k)])


def generate_polytope(rng: random.Random, cfg: SuiteConfig,
                      max_vertices: int = 10):
    dim = rng.randint(1, cfg.max_hull_dim)
    n = rng.randint(1, max_vertices)
    verts = [tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 8))
                   for _ in range(dim)) for _ in range(n)]
    return verts


def point_in_hull(rng: random.Random, verts) -> tuple[Fraction, ...]:
    mix = generate_measure(rng, _simplex_space(len(verts)))
    dim = len(verts[0])
    return tuple(
        sum((w * v[d] for w, v in zip(mix.weights, verts)), ZERO)
        for d in range(dim))


def generate_eventual_fn(rng: random.Random) -> EventualFn:
    width = rng.randint(0, 6)
    return EventualFn(tuple(random_unit_fraction(rng) for _ in range(width)),
                      random_unit_fraction(rng))


def generate_fincof(rng: random.Random) -> FinCofSet:
    elems = frozenset(n for n in range(10) if rng.random() < 0.4)
    return FinCofSet(rng.random() < 0.5, elems)


def generate_limit_witness(rng: random.Random, space: FinSpace) -> LimitWitness:
    """A certified sequence vanishing pointwise: each atom gets a cutoff
    index, before which the values shrink dyadically."""
    certs = [rng.randint(0, 6) for _ in space.atoms]
    starts = [random_unit_fraction(rng) for _ in space.atoms]

    def term(n: int) -> IFunction:
        vals = tuple(
            start / (1 << n) if n < cut else ZERO
            for start, cut in zip(starts, certs))
        return IFunction(space, vals)

    return LimitWitness.on_space(space, term, certs)


# -- refutation ladder ------------------------------------------------------


def _witness_ladder(space: FinSpace, max_arity: int, rng: random.Random):
    """Candidate (h, fs) pairs ordered by size: projections, constants,
    blends, then random shapes, with structured function tuples first."""
    base_fns = [atom_indicator(space, i) for i in range(len(space.atoms))]
    base_fns += [IFunction.constant(space, ZERO),
                 IFunction.constant(space, ONE),
                 IFunction.constant(space, HALF)]

    def tuples(arity: int):
        picks = []
        for start in range(len(base_fns)):
            picks.append(tuple(base_fns[(start + j) % len(base_fns)]
                               for j in range(arity)))
        picks.append(tuple(generate_ifunction(rng, space) for _ in range(arity)))
        return picks

    for arity in range(1, max_arity + 1):
        hs = [AffineMap.projection(arity, i) for i in range(arity)]
        hs += [AffineMap.constant(arity, r) for r in (HALF, ZERO, ONE)]
        if arity == 2:
            hs += [AffineMap.blend(r) for r in
                   (HALF, Fraction(1, 4), Fraction(3, 4))]
        hs += [sample_affine(rng, arity) for _ in range(4)]
        for h in hs:
            for fs in tuples(arity):
                yield h, fs


def find_naturality_refutation(phi: Functional, max_arity: int,
                               rng: random.Random,
                               budget: int = 1000) -> Optional[dict]:
    """Smallest-first bounded search for a failing naturality square."""
    alpha = lift(phi)
    steps = 0
    for h, fs in _witness_ladder(phi.space, max_arity, rng):
        if steps >= budget:
            return None
        steps += 1
        verdict = check_naturality(alpha, h, fs)
        if not verdict.passed:
            witness = dict(verdict.witness)
            witness["search_steps"] = steps
            witness["functional"] = phi.describe()
            return witness
    return None


def minimize_refutation(phi: Functional, max_arity: int, seed: int,
                        budget: int = 1000) -> Optional[dict]:
    """Re-walk the ladder from the smallest candidates; the first hit is
    the minimized witness."""
    return find_naturality_refutation(phi, max_arity,
                                      case_rng(seed, "minimize", 0), budget)


# -- property runners -------------------------------------------------------

Runner = Callable[[SuiteConfig], tuple[bool, Optional[dict], int]]


@dataclass(frozen=True)
class Property:
    name: str
    law: str
    run: Runner


def _per_case(name: str, law: str, case: Callable[[SuiteConfig, random.Random],
                                                  Optional[dict]]) -> Property:
    """Lift a single-case checker (returns a witness dict on failure)
    into a trials-driven property."""

    def run(cfg: SuiteConfig):
        for i in range(cfg.trials):
            witness = case(cfg, case_rng(cfg.seed, name, i))
            if witness is not None:
                witness.setdefault("case", i)
                return False, witness, i + 1
        return True, None, cfg.trials

    return Property(name, law, run)


def _measures_equal(a: Measure, b: Measure) -> bool:
    return a.space == b.space and a.weights == b.weights


# monad laws ---------------------------------------------------------------


def _case_left_unit(cfg, rng):
    space = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    k = generate_kernel(rng, space, cod)
    point = rng.choice(space.carrier)
    got = bind(dirac(space, point), k)
    want = k.at_point(point)
    if not _measures_equal(got, want):
        return {"point": point, "got": got.describe(), "want": want.describe()}
    return None


def _case_right_unit(cfg, rng):
    space = generate_space(rng, cfg)
    pi = generate_measure(rng, space)
    got = bind(pi, Kernel.identity(space))
    if not _measures_equal(got, pi):
        return {"pi": pi.describe(), "got": got.describe()}
    return None


def _case_associativity(cfg, rng):
    a = generate_space(rng, cfg)
    b = generate_space(rng, cfg)
    c = generate_space(rng, cfg)
    pi = generate_measure(rng, a)
    k1 = generate_kernel(rng, a, b)
    k2 = generate_kernel(rng, b, c)
    lhs = bind(bind(pi, k1), k2)
    rhs = bind(pi, kleisli_compose(k1, k2))
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_flatten_point(cfg, rng):
    space = generate_space(rng, cfg)
    pi = generate_measure(rng, space)
    got = flatten(MetaMeasure.point(pi))
    if not _measures_equal(got, pi):
        return {"pi": pi.describe(), "got": got.describe()}
    return None


def _case_flatten_dirac_decomposition(cfg, rng):
    space = generate_space(rng, cfg)
    pi = generate_measure(rng, space)
    support = tuple(
        (dirac(space, space.labels_of(atom)[0]), w)
        for atom, w in zip(space.atoms, pi.weights))
    got = flatten(MetaMeasure(space, support))
    if not _measures_equal(got, pi):
        return {"pi": pi.describe(), "got": got.describe()}
    return None


def _case_flatten_associativity(cfg, rng):
    space = generate_space(rng, cfg)
    k = rng.randint(1, 3)
    mix = generate_measure(rng, _simplex_space(k))
    metas = [generate_meta_measure(rng, space, width=3) for _ in range(k)]
    # flatten the inner layer first, then the outer mixture
    inner_first = flatten(MetaMeasure(space, tuple(
        (flatten(mm), w) for mm, w in zip(metas, mix.weights))))
    # merge the two outer layers first, then flatten once
    merged = MetaMeasure(space, tuple(
        (measure, w * inner_w)
        for mm, w in zip(metas, mix.weights)
        for measure, inner_w in mm.support))
    outer_first = flatten(merged)
    if not _measures_equal(inner_first, outer_first):
        return {"inner_first": inner_first.describe(),
                "outer_first": outer_first.describe()}
    return None


def _case_unit_naturality(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    g = generate_measurable_map(rng, dom, cod)
    point = rng.choice(dom.carrier)
    lhs = pushforward(g, dirac(dom, point))
    rhs = dirac(cod, g.apply(point))
    if not _measures_equal(lhs, rhs):
        return {"point": point, "lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_flatten_naturality(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    g = generate_measurable_map(rng, dom, cod)
    mm = generate_meta_measure(rng, dom)
    lhs = pushforward(g, flatten(mm))
    rhs = flatten(MetaMeasure(cod, tuple(
        (pushforward(g, measure), w) for measure, w in mm.support)))
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_bind_is_mixture(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    pi = generate_measure(rng, dom)
    k = generate_kernel(rng, dom, cod)
    lhs = bind(pi, k)
    rhs = flatten(MetaMeasure(cod, tuple(zip(k.rows, pi.weights))))
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


MONAD_LAWS = [
    _per_case("left-unit", "bind(dirac(w), k) = k(w)", _case_left_unit),
    _per_case("right-unit", "bind(pi, identity kernel) = pi", _case_right_unit),
    _per_case("associativity",
              "bind(bind(pi,k1),k2) = bind(pi, k1 then k2)", _case_associativity),
    _per_case("flatten-point",
              "flatten(point mixture at pi) = pi", _case_flatten_point),
    _per_case("flatten-dirac-decomposition",
              "flatten(diracs weighted by pi) = pi",
              _case_flatten_dirac_decomposition),
    _per_case("flatten-associativity",
              "flattening two mixture layers is order-independent",
              _case_flatten_associativity),
    _per_case("unit-naturality",
              "pushforward(g, dirac(w)) = dirac(g(w))", _case_unit_naturality),
    _per_case("flatten-naturality",
              "pushforward after flatten = flatten after mapped pushforwards",
              _case_flatten_naturality),
    _per_case("bind-is-mixture",
              "bind(pi, k) = flatten(rows of k weighted by pi)",
              _case_bind_is_mixture),
]


# duality -------------------------------------------------------------------


def _case_measure_roundtrip(cfg, rng):
    space = generate_space(rng, cfg)
    pi = generate_measure(rng, space)
    back = to_measure(to_functional(pi))
    if not _measures_equal(back, pi):
        return {"pi": pi.describe(), "back": back.describe()}
    return None


def _case_functional_roundtrip(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    back = to_functional(to_measure(phi))
    if back.coeffs != phi.coeffs:
        return {"phi": phi.describe(), "back": back.describe()}
    return None


def _case_max_rejected(cfg, rng):
    space = generate_space(rng, cfg, min_points=2)
    if len(space.atoms) < 2:
        space = FinSpace.discrete(["a", "b"])
    try:
        to_measure(max_functional(space))
    except RejectionError as exc:
        return None if exc.witness else {"missing": "witness"}
    return {"error": "max functional was not rejected",
            "atoms": space.describe_atoms()}


def _case_extensional_characterization(cfg, rng):
    space = generate_space(rng, cfg)
    n = len(space.atoms)
    h = sample_affine(rng, n)
    zeros, ones = (ZERO,) * n, (ONE,) * n
    weakly_averaging = h(zeros) == ZERO and h(ones) == ONE
    canonical = (h.a0 == ZERO and sum(h.coeffs, ZERO) == ONE
                 and all(c >= 0 for c in h.coeffs))
    if weakly_averaging != canonical:
        return {"h": h.describe(), "weakly_averaging": weakly_averaging,
                "canonical_simplex_form": canonical}
    if canonical:
        phi = Functional.extensional(space, h.coeffs)
        f = generate_ifunction(rng, space)
        if phi(f) != h(f.values):
            return {"h": h.describe(), "f": f.describe()}
    return None


def _case_int_prop_extensional(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    f = generate_ifunction(rng, space)
    r = random_unit_fraction(rng)
    if phi(f.scale(r)) != r * phi(f):
        return {"axiom": "homogeneity", "f": f.describe(),
                "r": format_rational(r)}
    headroom = IFunction(space, tuple(ONE - v for v in f.values))
    g = IFunction(space, tuple(
        min(random_unit_fraction(rng), cap) for cap in headroom.values))
    if phi(f.add(g)) != phi(f) + phi(g):
        return {"axiom": "additivity", "f": f.describe(), "g": g.describe()}
    bigger = f.blend(IFunction.constant(space, ONE), r)
    if not phi(f) <= phi(bigger):
        return {"axiom": "monotonicity", "f": f.describe(),
                "f_prime": bigger.describe()}
    return None


def _adversarial_refuted(maker, label: str) -> Runner:
    def run(cfg: SuiteConfig):
        space = FinSpace.discrete(["a", "b", "c"])
        verdict = is_affine(maker(space), trials=cfg.trials, seed=cfg.seed)
        if verdict.passed:
            return False, {"error": f"{label} functional passed is_affine"}, \
                verdict.trials
        return True, verdict.witness, verdict.trials
    return run


def _case_unit_diagram(cfg, rng):
    space = generate_space(rng, cfg)
    point = rng.choice(space.carrier)
    lhs = to_measure(evaluation_at(space, point))
    rhs = dirac(space, point)
    if not _measures_equal(lhs, rhs):
        return {"point": point, "lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_multiplication_diagram(cfg, rng):
    space = generate_space(rng, cfg)
    psi = generate_functional_mixture(rng, space)
    lhs = to_measure(mix_functionals(psi))
    rhs = flatten(psi.measure_image())
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_functional_naturality(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    g = generate_measurable_map(rng, dom, cod)
    phi = to_functional(generate_measure(rng, dom))
    lhs = to_measure(pushforward_functional(g, phi))
    rhs = pushforward(g, to_measure(phi))
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_unit_functional_naturality(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    g = generate_measurable_map(rng, dom, cod)
    point = rng.choice(dom.carrier)
    lhs = pushforward_functional(g, evaluation_at(dom, point))
    rhs = evaluation_at(cod, g.apply(point))
    if lhs.coeffs != rhs.coeffs:
        return {"point": point, "lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


def _case_respects_limits_extensional(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    w = generate_limit_witness(rng, space)
    verdict = respects_limits(phi, w)
    if not verdict.passed:
        return dict(verdict.witness or {}, error="extensional functional failed")
    return None


DUALITY = [
    _per_case("measure-roundtrip",
              "to_measure(to_functional(pi)) = pi", _case_measure_roundtrip),
    _per_case("functional-roundtrip",
              "to_functional(to_measure(phi)) = phi on coefficients",
              _case_functional_roundtrip),
    _per_case("max-functional-rejected",
              "to_measure rejects the max functional with an additivity witness",
              _case_max_rejected),
    _per_case("extensional-characterization",
              "affine into-I form is weakly averaging iff a0=0 and "
              "coefficients form a probability vector",
              _case_extensional_characterization),
    _per_case("linearity-consequences",
              "homogeneity, additivity, monotonicity hold for coefficient bodies",
              _case_int_prop_extensional),
    Property("affine-refutes-max",
             "randomized affineness search refutes the max functional",
             _adversarial_refuted(max_functional, "max")),
    Property("affine-refutes-square",
             "randomized affineness search refutes the square functional",
             _adversarial_refuted(square_functional, "square")),
    _per_case("unit-diagram",
              "to_measure(evaluation at w) = dirac(w)", _case_unit_diagram),
    _per_case("multiplication-diagram",
              "to_measure(mixture) = flatten of the componentwise measures",
              _case_multiplication_diagram),
    _per_case("unit-functional-naturality",
              "mapping evaluation-at-w forward gives evaluation at g(w)",
              _case_unit_functional_naturality),
    _per_case("bijection-naturality",
              "to_measure commutes with pushforward on both sides",
              _case_functional_naturality),
    _per_case("respects-limits-extensional",
              "coefficient functionals respect certified vanishing sequences",
              _case_respects_limits_extensional),
]


# change of variables --------------------------------------------------------


def _case_change_of_variables(cfg, rng):
    dom = generate_space(rng, cfg)
    cod = generate_space(rng, cfg)
    g = generate_measurable_map(rng, dom, cod)
    pi = generate_measure(rng, dom)
    f = generate_ifunction(rng, cod)
    if not change_of_variables_check(g, pi, f):
        return {"g": [g.apply(x) for x in dom.carrier],
                "pi": pi.describe(), "f": f.describe()}
    return None


def _case_pushforward_identity(cfg, rng):
    space = generate_space(rng, cfg)
    pi = generate_measure(rng, space)
    got = pushforward(MeasMap.identity(space), pi)
    if not _measures_equal(got, pi):
        return {"pi": pi.describe(), "got": got.describe()}
    return None


def _case_pushforward_composition(cfg, rng):
    a = generate_space(rng, cfg)
    b = generate_space(rng, cfg)
    c = generate_space(rng, cfg)
    h = generate_measurable_map(rng, a, b)
    g = generate_measurable_map(rng, b, c)
    pi = generate_measure(rng, a)
    lhs = pushforward(g.compose(h), pi)
    rhs = pushforward(g, pushforward(h, pi))
    if not _measures_equal(lhs, rhs):
        return {"lhs": lhs.describe(), "rhs": rhs.describe()}
    return None


CHANGE_OF_VARIABLES = [
    _per_case("change-of-variables",
              "integral of f after g against pi = integral of f against "
              "the pushforward", _case_change_of_variables),
    _per_case("pushforward-identity",
              "pushforward along the identity is the identity",
              _case_pushforward_identity),
    _per_case("pushforward-composition",
              "pushforward of a composite = composite of pushforwards",
              _case_pushforward_composition),
]


# naturality -----------------------------------------------------------------


def _case_lifted_naturality(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    alpha = lift(phi)
    arity = rng.randint(1, cfg.max_arity)
    kind = rng.choice(("projection", "constant", "blend", None, None, None))
    if kind == "blend":
        arity = 2
    h = sample_affine(rng, arity, kind)
    fs = tuple(generate_ifunction(rng, space) for _ in range(arity))
    verdict = check_naturality(alpha, h, fs)
    if not verdict.passed:
        return dict(verdict.witness, functional=phi.describe())
    return None


def _case_sequence_naturality(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    alpha = lift(phi)
    length = rng.randint(1, cfg.max_arity)
    h = sample_sequence_affine(rng, length)
    fs = tuple(generate_ifunction(rng, space) for _ in range(length))
    verdict = check_naturality(alpha, h, fs)
    if not verdict.passed:
        return dict(verdict.witness, functional=phi.describe())
    return None


def _case_vanishing_component(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    length = rng.randint(0, cfg.max_arity)
    fs = [generate_ifunction(rng, space) for _ in range(length)]
    fs += [IFunction.constant(space, ZERO)] * rng.randint(0, 2)
    verdict = check_vanishing_component(lift(phi), fs, certified_len=length)
    if not verdict.passed:
        return dict(verdict.witness)
    return None


def _case_unit_element_evaluation(cfg, rng):
    space = generate_space(rng, cfg)
    point = rng.choice(space.carrier)
    alpha = lift(evaluation_at(space, point))
    arity = rng.randint(1, cfg.max_arity)
    fs = tuple(generate_ifunction(rng, space) for _ in range(arity))
    got = alpha.at_power(fs)
    want = tuple(f.at_point(point) for f in fs)
    if got != want:
        return {"point": point,
                "got": [format_rational(v) for v in got],
                "want": [format_rational(v) for v in want]}
    return None


def _case_affine_composition(cfg, rng):
    outer_arity = rng.randint(1, cfg.max_arity)
    inner_arity = rng.randint(1, cfg.max_arity)
    h = sample_affine(rng, outer_arity)
    gs = tuple(sample_affine(rng, inner_arity) for _ in range(outer_arity))
    composite = h.compose(gs)
    xs = tuple(random_unit_fraction(rng) for _ in range(inner_arity))
    direct = h([g(xs) for g in gs])
    if composite(xs) != direct:
        return {"h": h.describe(), "inner": [g.describe() for g in gs],
                "x": [format_rational(x) for x in xs]}
    return None


def _refutes_naturality(maker, label: str) -> Runner:
    def run(cfg: SuiteConfig):
        space = FinSpace.discrete(["a", "b"])
        phi = maker(space)
        witness = find_naturality_refutation(
            phi, min(cfg.max_arity, 3), case_rng(cfg.seed, f"refute-{label}", 0))
        if witness is None:
            return False, {"error": f"no refutation found for {label}"}, 1
        minimized = minimize_refutation(phi, min(cfg.max_arity, 3), cfg.seed)
        return True, minimized or witness, witness["search_steps"]
    return run


NATURALITY = [
    _per_case("lifted-extensional-naturality",
              "families lifted from coefficient functionals pass every "
              "affine naturality square", _case_lifted_naturality),
    _per_case("sequence-naturality",
              "the sequence component commutes with affine sequence maps",
              _case_sequence_naturality),
    _per_case("vanishing-component",
              "the sequence component outputs vanishing sequences",
              _case_vanishing_component),
    _per_case("unit-element-evaluation",
              "the lifted evaluation family evaluates tuples pointwise",
              _case_unit_element_evaluation),
    _per_case("affine-composition-closure",
              "composing canonical affine forms composes their coefficients",
              _case_affine_composition),
    Property("naturality-refutes-max",
             "a failing square for the max functional is found and minimized",
             _refutes_naturality(max_functional, "max")),
    Property("naturality-refutes-square",
             "a failing square for the square functional is found and minimized",
             _refutes_naturality(square_functional, "square")),
]


# monoid reduction -----------------------------------------------------------


def _case_reconstruction_roundtrip(cfg, rng):
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    action = action_of(lift(phi))
    recovered = functional_from_action(action, space, rng, trials=8)
    coeffs = tuple(recovered(atom_indicator(space, i))
                   for i in range(len(space.atoms)))
    if coeffs != phi.coeffs:
        return {"phi": phi.describe(),
                "recovered": [format_rational(c) for c in coeffs]}
    f = generate_ifunction(rng, space)
    if recovered(f) != phi(f):
        return {"phi": phi.describe(), "f": f.describe()}
    return None


def _entrywise_max_refuted(cfg: SuiteConfig):
    space = FinSpace.discrete(["a", "b"])

    def entrywise_max(fs: Sequence[IFunction]) -> VanishingSequence:
        return VanishingSequence(tuple(max(f.values) for f in fs))

    rng = case_rng(cfg.seed, "entrywise-max-refuted", 0)
    try:
        functional_from_action(entrywise_max, space, rng, trials=64)
    except ActionSquareError as exc:
        witness = dict(exc.witness, generator=exc.generator)
        if "blend" not in exc.generator:
            return False, dict(witness,
                               error="expected the blend square to fail"), 1
        return True, witness, 1
    return False, {"error": "entrywise max action was not refuted"}, 1


MONOID_REDUCTION = [
    _per_case("reconstruction-roundtrip",
              "the functional recovered from the lifted action equals the "
              "original, coefficientwise", _case_reconstruction_roundtrip),
    Property("entrywise-max-refuted",
             "the entrywise-max action fails the blend generator square",
             _entrywise_max_refuted),
]


# convex bound ---------------------------------------------------------------


def _case_hull_closure(cfg, rng):
    verts = generate_polytope(rng, cfg)
    space = generate_space(rng, cfg)
    phi = to_functional(generate_measure(rng, space))
    points = [point_in_hull(rng, verts) for _ in space.atoms]
    out = extend_to_convex(phi, verts, points, max_dim=cfg.max_hull_dim)
    if not hull_membership(verts, out, max_dim=cfg.max_hull_dim):
        return {"vertices": [[format_rational(c) for c in v] for v in verts],
                "output": [format_rational(c) for c in out]}
    return None


def _case_dirac_extension(cfg, rng):
    verts = generate_polytope(rng, cfg)
    space = generate_space(rng, cfg)
    i = rng.randrange(len(space.atoms))
    coeffs = tuple(ONE if j == i else ZERO for j in range(len(space.atoms)))
    phi = Functional.extensional(space, coeffs)
    points = [point_in_hull(rng, verts) for _ in space.atoms]
    out = extend_to_convex(phi, verts, points, max_dim=cfg.max_hull_dim)
    if out != points[i]:
        return {"expected": [format_rational(c) for c in points[i]],
                "got": [format_rational(c) for c in out]}
    return None


CONVEX_BOUND = [
    _per_case("hull-closure",
              "coordinatewise application of a coefficient functional stays "
              "in the hull, certified by exact feasibility", _case_hull_closure),
    _per_case("dirac-extension",
              "a point-mass functional extends to exact selection of its "
              "atom's hull point", _case_dirac_extension),
]


# counterexample -------------------------------------------------------------


def _case_limit_affine(cfg, rng):
    f = generate_eventual_fn(rng)
    g = generate_eventual_fn(rng)
    r = random_unit_fraction(rng)
    lhs = limit_functional(f.blend(g, r))
    rhs = r * limit_functional(f) + (1 - r) * limit_functional(g)
    if lhs != rhs:
        return {"r": format_rational(r), "lhs": format_rational(lhs),
                "rhs": format_rational(rhs)}
    return None


def _case_limit_weakly_averaging(cfg, rng):
    r = random_unit_fraction(rng)
    got = limit_functional(EventualFn.constant(r))
    if got != r:
        return {"r": format_rational(r), "got": format_rational(got)}
    return None


def _case_limit_lipschitz(cfg, rng):
    f = generate_eventual_fn(rng)
    g = generate_eventual_fn(rng)
    verdict = sup_continuity_check(f, g)
    if not verdict.passed:
        return dict(verdict.witness)
    return None


def _case_measure_consistency(cfg, rng):
    a = generate_fincof(rng)
    lhs = cofinite_measure(a)
    rhs = limit_functional(a.indicator())
    if lhs != rhs:
        return {"set": sorted(a.elements), "cofinite": a.cofinite,
                "measure": format_rational(lhs),
                "functional": format_rational(rhs)}
    return None


def _case_finite_additivity(cfg, rng):
    a = generate_fincof(rng)
    b = generate_fincof(rng)
    if not a.disjoint_from(b):
        b = a.complement()
    union = a.union(b)
    lhs = cofinite_measure(union)
    rhs = cofinite_measure(a) + cofinite_measure(b)
    if lhs != rhs:
        return {"a": sorted(a.elements), "a_cofinite": a.cofinite,
                "b": sorted(b.elements), "b_cofinite": b.cofinite,
                "lhs": format_rational(lhs), "rhs": format_rational(rhs)}
    return None


def _limits_refuted(cfg: SuiteConfig):
    verdict = respects_limits(limit_functional, vanishing_segment_witness())
    if verdict.passed:
        return False, {"error": "limit functional passed respects-limits"}, 1
    witness = dict(verdict.witness)
    if witness.get("stuck_at") != "1/1":
        return False, dict(witness, error="expected the value pinned at 1"), 1
    report = countable_additivity_violation()
    witness["report"] = report
    if report["singleton_partial_sum"] != "0/1" or report["total_mass"] != "1/1":
        return False, dict(witness, error="mass accounting is off"), 1
    return True, witness, 1


COUNTEREXAMPLE = [
    _per_case("limit-affine",
              "the tail functional preserves convex combinations exactly",
              _case_limit_affine),
    _per_case("limit-weakly-averaging",
              "the tail functional fixes every constant",
              _case_limit_weakly_averaging),
    _per_case("limit-sup-lipschitz",
              "the tail functional is 1-Lipschitz for the sup metric",
              _case_limit_lipschitz),
    _per_case("measure-functional-consistency",
              "the zero/one set measure is the tail functional on indicators",
              _case_measure_consistency),
    _per_case("finite-additivity",
              "disjoint representable unions add their measures",
              _case_finite_additivity),
    Property("limits-axiom-refuted",
             "final-segment indicators vanish pointwise while the functional "
             "stays pinned at one; singleton masses sum to zero against "
             "total mass one", _limits_refuted),
]


SUITES: dict[str, list[Property]] = {
    "monad-laws": MONAD_LAWS,
    "duality": DUALITY,
    "change-of-variables": CHANGE_OF_VARIABLES,
    "naturality": NATURALITY,
    "monoid-reduction": MONOID_REDUCTION,
    "convex-bound": CONVEX_BOUND,
    "counterexample": COUNTEREXAMPLE,
}


def run_suite(name: str, cfg: SuiteConfig) -> Report:
    """Execute one named suite (or 'all') under the given configuration."""
    if name == "all":
        report = Report("all", cfg)
        for suite_name in SUITE_NAMES:
            report.records.extend(run_suite(suite_name, cfg).records)
        return report
    if name not in SUITES:
        raise GirylabError(
            f"unknown suite {name!r}; expected one of "
            f"{', '.join((*SUITE_NAMES, 'all'))}")
    report = Report(name, cfg)
    for prop in SUITES[name]:
        start = time.perf_counter()
        ok, witness, trials = prop.run(cfg)
        duration = time.perf_counter() - start
        report.records.append(PropertyRecord(
            name=prop.name, law=prop.law,
            result="pass" if ok else "fail",
            witness=witness, trials=trials, seed=cfg.seed,
            duration=duration))
    return report
