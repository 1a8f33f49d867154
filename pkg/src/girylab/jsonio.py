"""JSON schemas for spaces, measures, kernels, and functionals.

All rationals travel as "p/q" strings; round trips are lossless.
Decoders validate every structural invariant and raise IngestionError
naming the first violated one.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GirylabError, IngestionError
from .rational import format_rational, parse_rational
from .spaces import FinSpace, generate_sigma
from .measures import IntervalMeasure, Measure
from .monad import Kernel
from .duality import (Functional, clamped_sum_functional, max_functional,
                      square_functional)


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise IngestionError(f"{what} must be a 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ValueError as exc:
            raise IngestionError(f"{what}: {exc}") from None
    raise IngestionError(f"{what} must be a 'p/q' string, got {type(value).__name__}")


def space_to_json(space: FinSpace) -> dict:
    """Carrier plus generators; the atoms generate the same sigma-algebra,
    so emitting them keeps the round trip lossless."""
    return {"carrier": list(space.carrier),
            "generators": [list(space.labels_of(a)) for a in space.atoms]}


def space_from_json(doc: dict) -> FinSpace:
    if not isinstance(doc, dict):
        raise IngestionError("space document must be an object")
    carrier = doc.get("carrier")
    if not isinstance(carrier, list) or not all(isinstance(x, str) for x in carrier):
        raise IngestionError("space 'carrier' must be a list of labels")
    generators = doc.get("generators", [])
    if not isinstance(generators, list):
        raise IngestionError("space 'generators' must be a list of label lists")
    try:
        return generate_sigma(carrier, generators)
    except GirylabError as exc:
        raise IngestionError(f"space: {exc}") from None


def _weights_from_json(doc, space: FinSpace, what: str) -> tuple[Fraction, ...]:
    n = len(space.atoms)
    if not isinstance(doc, dict):
        raise IngestionError(f"{what} must map atom indices to 'p/q' strings")
    weights = [Fraction(0)] * n
    seen = set()
    for key, value in doc.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise IngestionError(f"{what}: atom index {key!r} is not an integer")
        if not 0 <= idx < n:
            raise IngestionError(
                f"{what}: atom index {idx} out of range (space has {n} atoms)")
        if idx in seen:
            raise IngestionError(f"{what}: atom index {idx} repeated")
        seen.add(idx)
        weights[idx] = _rational(value, f"{what}[{idx}]")
    return tuple(weights)


def measure_to_json(pi: Measure) -> dict:
    return {"space": space_to_json(pi.space),
            "weights": {str(i): format_rational(w)
                        for i, w in enumerate(pi.weights)}}


def measure_from_json(doc: dict, space: FinSpace | None = None) -> Measure:
    if not isinstance(doc, dict):
        raise IngestionError("measure document must be an object")
    if space is None:
        if "space" not in doc:
            raise IngestionError("measure document needs a 'space'")
        space = space_from_json(doc["space"])
    weights = _weights_from_json(doc.get("weights"), space, "weights")
    try:
        return Measure(space, weights)
    except GirylabError as exc:
        raise IngestionError(f"measure: {exc}") from None


def interval_measure_to_json(m: IntervalMeasure) -> dict:
    return {"points": [[format_rational(loc), format_rational(mass)]
                       for loc, mass in m.points],
            "uniform": [[format_rational(a), format_rational(b),
                         format_rational(mass)] for a, b, mass in m.pieces]}


def interval_measure_from_json(doc: dict) -> IntervalMeasure:
    if not isinstance(doc, dict):
        raise IngestionError("interval measure document must be an object")
    points, pieces = [], []
    for row in doc.get("points", []):
        if not isinstance(row, list) or len(row) != 2:
            raise IngestionError("each point mass must be a [loc, mass] pair")
        points.append((_rational(row[0], "point location"),
                       _rational(row[1], "point mass")))
    for row in doc.get("uniform", []):
        if not isinstance(row, list) or len(row) != 3:
            raise IngestionError("each uniform piece must be an [a, b, mass] triple")
        pieces.append((_rational(row[0], "piece start"),
                       _rational(row[1], "piece end"),
                       _rational(row[2], "piece mass")))
    try:
        return IntervalMeasure(tuple(points), tuple(pieces))
    except GirylabError as exc:
        raise IngestionError(f"interval measure: {exc}") from None


def kernel_to_json(k: Kernel) -> dict:
    return {"dom": space_to_json(k.dom), "cod": space_to_json(k.cod),
            "rows": {str(i): {str(j): format_rational(w)
                              for j, w in enumerate(row.weights)}
                     for i, row in enumerate(k.rows)}}


def kernel_from_json(doc: dict) -> Kernel:
    if not isinstance(doc, dict):
        raise IngestionError("kernel document must be an object")
    for field in ("dom", "cod", "rows"):
        if field not in doc:
            raise IngestionError(f"kernel document needs '{field}'")
    dom = space_from_json(doc["dom"])
    cod = space_from_json(doc["cod"])
    rows_doc = doc["rows"]
    if not isinstance(rows_doc, dict):
        raise IngestionError("kernel 'rows' must map dom atom indices to weights")
    n = len(dom.atoms)
    rows: list[Measure | None] = [None] * n
    for key, wdoc in rows_doc.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise IngestionError(f"kernel row key {key!r} is not an atom index")
        if not 0 <= idx < n:
            raise IngestionError(f"kernel row index {idx} out of range")
        try:
            rows[idx] = Measure(cod, _weights_from_json(wdoc, cod, f"row {idx}"))
        except GirylabError as exc:
            raise IngestionError(f"kernel row {idx}: {exc}") from None
    missing = [i for i, r in enumerate(rows) if r is None]
    if missing:
        raise IngestionError(f"kernel is missing rows for dom atoms {missing}")
    return Kernel(dom, cod, tuple(rows))


_NAMED_FUNCTIONALS = {
    "max": max_functional,
    "square": square_functional,
    "clamped-sum": clamped_sum_functional,
}


def functional_to_json(phi: Functional) -> dict:
    doc = phi.describe()
    doc["space"] = space_to_json(phi.space)
    return doc


def functional_from_json(doc: dict, space: FinSpace | None = None) -> Functional:
    if not isinstance(doc, dict):
        raise IngestionError("functional document must be an object")
    if space is None:
        if "space" not in doc:
            raise IngestionError("functional document needs a 'space'")
        space = space_from_json(doc["space"])
    kind = doc.get("kind", "extensional")
    if kind == "extensional":
        coeffs_doc = doc.get("coefficients")
        if isinstance(coeffs_doc, dict):
            coeffs = _weights_from_json(coeffs_doc, space, "coefficients")
        elif isinstance(coeffs_doc, list):
            coeffs = tuple(_rational(c, "coefficient") for c in coeffs_doc)
        else:
            raise IngestionError("extensional functional needs 'coefficients'")
        try:
            return Functional.extensional(space, coeffs)
        except GirylabError as exc:
            raise IngestionError(f"functional: {exc}") from None
    if kind in _NAMED_FUNCTIONALS:
        return _NAMED_FUNCTIONALS[kind](space)
    raise IngestionError(
        f"unknown functional kind {kind!r}; expected 'extensional' or one of "
        f"{sorted(_NAMED_FUNCTIONALS)}")
