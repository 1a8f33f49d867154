"""Monad structure on finite-space measures: Dirac unit, multiplication
on finitely supported measures-over-measures, Kleisli extension, and
Markov kernels.

A measure over measures is kept as a finite mixture (support list with
weights); that is exactly the class on which the multiplication's
integral collapses to a finite sum, so every diagram here is exact.
Kernels are atomwise tables of measures, hence measurable into the
evaluation-generated sigma-algebra by construction; on discrete spaces
a kernel is a row-stochastic matrix and ``bind`` is row-vector times
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, SpaceMismatchError
from .rational import ONE, ZERO, format_rational
from .spaces import FinSpace
from .measures import Measure


@dataclass(frozen=True)
class MetaMeasure:
    """A finitely supported probability measure on the measures of a base space."""

    base: FinSpace
    support: tuple[tuple[Measure, Fraction], ...]

    def __post_init__(self):
        if not self.support:
            raise InvariantError("support must be nonempty")
        total = ZERO
        for measure, w in self.support:
            if measure.space != self.base:
                raise SpaceMismatchError("support measure lives off the base space")
            if w < 0:
                raise InvariantError("mixture weights must be nonnegative")
            total += w
        if total != ONE:
            raise InvariantError(
                f"mixture weights must sum to 1/1, got {format_rational(total)}")

    @staticmethod
    def point(measure: Measure) -> "MetaMeasure":
        """The Dirac mixture concentrated on one measure."""
        return MetaMeasure(measure.space, ((measure, ONE),))


@dataclass(frozen=True)
class Kernel:
    """A measurable map into measures: one measure on cod per dom atom."""

    dom: FinSpace
    cod: FinSpace
    rows: tuple[Measure, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.dom.atoms):
            raise InvariantError("need exactly one row per dom atom")
        for row in self.rows:
            if row.space != self.cod:
                raise SpaceMismatchError("kernel row lives off the codomain")

    @staticmethod
    def identity(space: FinSpace) -> "Kernel":
        return Kernel(space, space, tuple(
            dirac(space, space.labels_of(atom)[0]) for atom in space.atoms))

    def at_point(self, label: str) -> Measure:
        return self.rows[self.dom.atom_index_of_point(label)]


def dirac(space: FinSpace, point: str) -> Measure:
    """The point measure at ``point``: weight 1 on the atom containing it."""
    i = space.atom_index_of_point(point)
    return Measure(space, tuple(
        ONE if j == i else ZERO for j in range(len(space.atoms))))


def flatten(rho: MetaMeasure) -> Measure:
    """Multiplication: average the support measures by their weights.

    For every measurable A the result gives the weighted sum of the
    component measures of A, which is the defining integral of the
    evaluation map collapsed over the finite support.
    """
    n = len(rho.base.atoms)
    weights = [ZERO] * n
    for measure, w in rho.support:
        for j in range(n):
            weights[j] += w * measure.weights[j]
    return Measure(rho.base, tuple(weights))


def bind(pi: Measure, k: Kernel) -> Measure:
    """Kleisli extension: result(A) = sum over atoms of pi(atom) * k(atom)(A).

    Agrees exactly with flattening the mixture of the kernel rows
    weighted by pi; on discrete spaces it is row-vector times
    stochastic matrix.
    """
    if pi.space != k.dom:
        raise SpaceMismatchError("measure does not live on the kernel domain")
    n = len(k.cod.atoms)
    weights = [ZERO] * n
    for w, row in zip(pi.weights, k.rows):
        for j in range(n):
            weights[j] += w * row.weights[j]
    return Measure(k.cod, tuple(weights))


def kleisli_compose(k1: Kernel, k2: Kernel) -> Kernel:
    """Compose kernels: the row at an atom is bind(k1 row, k2)."""
    if k1.cod != k2.dom:
        raise SpaceMismatchError("kernels do not compose: cod/dom mismatch")
    return Kernel(k1.dom, k2.cod, tuple(bind(row, k2) for row in k1.rows))


def n_step(k: Kernel, pi0: Measure, n: int) -> Measure:
    """n-fold Kleisli extension of an endo-kernel; n = 0 returns pi0."""
    if k.dom != k.cod:
        raise SpaceMismatchError("n_step needs an endo-kernel")
    if pi0.space != k.dom:
        raise SpaceMismatchError("initial measure lives off the kernel space")
    if n < 0:
        raise InvariantError("step count must be nonnegative")
    pi = pi0
    for _ in range(n):
        pi = bind(pi, k)
    return pi


def trajectory(k: Kernel, pi0: Measure, n: int) -> list[Measure]:
    """Distributions at steps 0..n inclusive."""
    out = [pi0]
    for _ in range(n):
        out.append(bind(out[-1], k))
    return out
