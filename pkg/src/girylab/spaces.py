"""Finite measurable spaces, sigma-algebra generation, and measurability.

Subsets of the carrier are stored as int bitmasks (bit i = carrier[i]),
so complement is XOR with the full mask and union is OR.  A sigma-algebra
on a finite carrier is determined by its atoms: the minimal nonempty
measurable sets, which partition the carrier; every measurable set is a
union of atoms.  All values constant on atoms are measurable into any
codomain, which is what makes the atomwise representations downstream
(functions, measures, kernels) measurable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvariantError, NotMeasurableError, SpaceMismatchError
from .rational import ONE, ZERO, format_rational, require_unit

#: Default carrier cap; 2^16 subsets is the worst case we enumerate.
MAX_CARRIER_POINTS = 16


@dataclass(frozen=True)
class FinSpace:
    """A finite carrier with an explicit sigma-algebra and its atom partition.

    ``carrier`` fixes the point order; ``sigma`` is the frozenset of
    measurable bitmasks; ``atoms`` lists the atom bitmasks ordered by
    their smallest member, so atom indices are deterministic.
    """

    carrier: tuple[str, ...]
    sigma: frozenset[int]
    atoms: tuple[int, ...]

    # -- mask helpers -------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << len(self.carrier)) - 1

    def point_index(self, label: str) -> int:
        try:
            return self.carrier.index(label)
        except ValueError:
            raise NotMeasurableError(f"point {label!r} is not in the carrier") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for lab in labels:
            mask |= 1 << self.point_index(lab)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(lab for i, lab in enumerate(self.carrier) if mask >> i & 1)

    def is_measurable_set(self, mask: int) -> bool:
        return mask in self.sigma

    def require_measurable_set(self, mask: int) -> int:
        if mask not in self.sigma:
            raise NotMeasurableError(
                f"set {set(self.labels_of(mask))} is not in the sigma-algebra")
        return mask

    def atom_index_of_point(self, label: str) -> int:
        bit = 1 << self.point_index(label)
        for i, atom in enumerate(self.atoms):
            if atom & bit:
                return i
        raise InvariantError(f"atoms do not cover point {label!r}")  # unreachable

    def atoms_in(self, mask: int) -> tuple[int, ...]:
        """Indices of the atoms contained in a measurable set."""
        return tuple(i for i, atom in enumerate(self.atoms) if atom & mask == atom)

    def describe_atoms(self) -> list[list[str]]:
        return [list(self.labels_of(a)) for a in self.atoms]

    # -- constructors --------------------------------------------------

    @staticmethod
    def discrete(labels: Sequence[str]) -> "FinSpace":
        return generate_sigma(labels, [[lab] for lab in labels])

    @staticmethod
    def indiscrete(labels: Sequence[str]) -> "FinSpace":
        return generate_sigma(labels, [])


def generate_sigma(carrier: Sequence[str], generators: Iterable[Iterable[str]],
                   max_points: int = MAX_CARRIER_POINTS) -> FinSpace:
    """Smallest sigma-algebra on ``carrier`` containing every generator.

    Points are split into atoms by their generator signature (which
    generators contain them); the closure under complement and union is
    then exactly the set of unions of atoms.  Finite carriers make
    countable and finite closure coincide.
    """
    labels = tuple(carrier)
    if len(labels) != len(set(labels)):
        raise InvariantError("carrier labels must be distinct")
    if not labels:
        raise InvariantError("carrier must be nonempty")
    if len(labels) > max_points:
        raise InvariantError(
            f"carrier has {len(labels)} points, cap is {max_points}")

    index = {lab: i for i, lab in enumerate(labels)}
    gen_masks = []
    for gen in generators:
        mask = 0
        for lab in gen:
            if lab not in index:
                raise InvariantError(
                    f"generator element {lab!r} is not in the carrier")
            mask |= 1 << index[lab]
        gen_masks.append(mask)

    signatures: dict[tuple[bool, ...], int] = {}
    for i in range(len(labels)):
        sig = tuple(bool(g >> i & 1) for g in gen_masks)
        signatures[sig] = signatures.get(sig, 0) | (1 << i)
    # order atoms by smallest member so indices are reproducible
    atoms = tuple(sorted(signatures.values(), key=lambda m: (m & -m).bit_length()))

    sigma = set()
    for bits in range(1 << len(atoms)):
        mask = 0
        for j, atom in enumerate(atoms):
            if bits >> j & 1:
                mask |= atom
        sigma.add(mask)
    return FinSpace(labels, frozenset(sigma), atoms)


def atoms(space: FinSpace) -> tuple[int, ...]:
    """The minimal nonempty measurable sets; they partition the carrier."""
    return space.atoms


@dataclass(frozen=True)
class MeasMap:
    """A total map between carriers, stored pointwise.

    ``table[i]`` is the cod point index that dom point i maps to.  The
    map is measurable iff every cod-measurable preimage is dom-measurable;
    checking cod atoms suffices since preimages commute with unions.
    """

    dom: FinSpace
    cod: FinSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != len(self.dom.carrier):
            raise InvariantError("map table must cover the whole domain carrier")
        n = len(self.cod.carrier)
        if any(not 0 <= t < n for t in self.table):
            raise InvariantError("map table points outside the codomain carrier")

    @staticmethod
    def from_labels(dom: FinSpace, cod: FinSpace,
                    assignment: Mapping[str, str]) -> "MeasMap":
        table = []
        for lab in dom.carrier:
            if lab not in assignment:
                raise InvariantError(f"map is not total: missing {lab!r}")
            table.append(cod.point_index(assignment[lab]))
        return MeasMap(dom, cod, tuple(table))

    @staticmethod
    def identity(space: FinSpace) -> "MeasMap":
        return MeasMap(space, space, tuple(range(len(space.carrier))))

    @staticmethod
    def constant(dom: FinSpace, cod: FinSpace, target: str) -> "MeasMap":
        t = cod.point_index(target)
        return MeasMap(dom, cod, (t,) * len(dom.carrier))

    def apply(self, label: str) -> str:
        return self.cod.carrier[self.table[self.dom.point_index(label)]]

    def preimage(self, cod_mask: int) -> int:
        mask = 0
        for i, t in enumerate(self.table):
            if cod_mask >> t & 1:
                mask |= 1 << i
        return mask

    def compose(self, other: "MeasMap") -> "MeasMap":
        """self after other (other first, then self)."""
        if other.cod is not self.dom and other.cod != self.dom:
            raise SpaceMismatchError("composition spaces do not align")
        return MeasMap(other.dom, self.cod,
                       tuple(self.table[t] for t in other.table))


def is_measurable(candidate: MeasMap) -> bool:
    """True iff every cod-atom preimage lies in the dom sigma-algebra."""
    return all(candidate.preimage(atom) in candidate.dom.sigma
               for atom in candidate.cod.atoms)


def require_measurable(candidate: MeasMap) -> MeasMap:
    if not is_measurable(candidate):
        raise NotMeasurableError("map is not measurable")
    return candidate


def atom_image(g: MeasMap, dom_atom_index: int) -> int:
    """Index of the cod atom that a dom atom lands in (g measurable)."""
    atom = g.dom.atoms[dom_atom_index]
    first_point = (atom & -atom).bit_length() - 1
    cod_point = g.table[first_point]
    return g.cod.atom_index_of_point(g.cod.carrier[cod_point])


@dataclass(frozen=True)
class IFunction:
    """A measurable function into the unit interval, stored atomwise.

    ``values[i]`` is the value on ``space.atoms[i]``.  Constancy on atoms
    makes measurability automatic; pointwise tables are validated and
    atom-compressed on ingestion.
    """

    space: FinSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space.atoms):
            raise InvariantError("need exactly one value per atom")
        for v in self.values:
            if not isinstance(v, Fraction):
                raise InvariantError("values must be Fractions")
            require_unit(v, "function value")

    @staticmethod
    def from_points(space: FinSpace, table: Mapping[str, Fraction]) -> "IFunction":
        vals = []
        for atom in space.atoms:
            pts = space.labels_of(atom)
            got = {table[p] for p in pts}
            if len(got) != 1:
                raise InvariantError(
                    f"table is not constant on the atom {set(pts)}; "
                    "such a function is not measurable")
            vals.append(Fraction(got.pop()))
        return IFunction(space, tuple(vals))

    @staticmethod
    def constant(space: FinSpace, r: Fraction) -> "IFunction":
        r = Fraction(r)
        return IFunction(space, (r,) * len(space.atoms))

    def at_point(self, label: str) -> Fraction:
        return self.values[self.space.atom_index_of_point(label)]

    def blend(self, other: "IFunction", r: Fraction) -> "IFunction":
        """The convex combination r*self + (1-r)*other."""
        _same_space(self, other)
        r = Fraction(r)
        return IFunction(self.space, tuple(
            r * a + (1 - r) * b for a, b in zip(self.values, other.values)))

    def scale(self, r: Fraction) -> "IFunction":
        return IFunction(self.space, tuple(Fraction(r) * v for v in self.values))

    def add(self, other: "IFunction") -> "IFunction":
        _same_space(self, other)
        return IFunction(self.space, tuple(
            a + b for a, b in zip(self.values, other.values)))

    def leq(self, other: "IFunction") -> bool:
        _same_space(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def compose_with(self, g: MeasMap) -> "IFunction":
        """self after g, an IFunction on g.dom (g must be measurable)."""
        if self.space != g.cod:
            raise SpaceMismatchError("function lives on a different space than g.cod")
        require_measurable(g)
        return IFunction(g.dom, tuple(
            self.values[atom_image(g, i)] for i in range(len(g.dom.atoms))))

    def describe(self) -> dict:
        return {"atoms": [" ".join(self.space.labels_of(a)) for a in self.space.atoms],
                "values": [format_rational(v) for v in self.values]}


def characteristic(space: FinSpace, mask: int) -> IFunction:
    """The indicator of a measurable set: 1 on atoms inside, 0 outside."""
    space.require_measurable_set(mask)
    return IFunction(space, tuple(
        ONE if atom & mask == atom else ZERO for atom in space.atoms))


def atom_indicator(space: FinSpace, atom_index: int) -> IFunction:
    return characteristic(space, space.atoms[atom_index])


def _same_space(a: IFunction, b: IFunction) -> None:
    if a.space != b.space:
        raise SpaceMismatchError("functions live on different spaces")
