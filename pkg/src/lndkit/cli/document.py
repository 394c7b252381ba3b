"""JSON input documents describing a ring, derivations and side data.

Example::

    {
      "ring": {"vars": ["x", "y", "z"], "relations": ["x*y - z^3 + 1"]},
      "derivations": [{"name": "d1", "images": {"y": "3*x*z^2", "z": "x^2"}}],
      "grading": {"modulus": 3, "weights": {"x": 1, "y": -1, "z": 2}},
      "generators": {"f": "x"},
      "points": [["1", "7", "2"]]
    }
"""

from __future__ import annotations

import json
from pathlib import Path

from ..catalog import CatalogEntry
from ..fpalgebra import FPAlgebra
from ..invariants import GeneratorFamily
from ..lnd import Derivation, WeightGrading
from .dsl import ParseError, parse_expression, parse_rational


class DocumentError(ValueError):
    pass


def _expr(text, varnames, where: str):
    if not isinstance(text, str):
        raise DocumentError(f"{where}: expected an expression string, got {text!r}")
    try:
        return parse_expression(text, varnames)
    except ParseError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def load_document(path: str) -> tuple[CatalogEntry, list[tuple]]:
    """Parse the document at ``path`` into a catalog entry plus its listed points."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return entry_from_dict(data, name=f"file:{path}")


def entry_from_dict(data: dict, name: str = "document") -> tuple[CatalogEntry, list[tuple]]:
    if not isinstance(data, dict) or "ring" not in data:
        raise DocumentError("document must be an object with a 'ring' field")
    ring = data["ring"]
    names = ring.get("vars")
    if not isinstance(names, list) or not all(isinstance(v, str) and v.isidentifier() for v in names):
        raise DocumentError("ring.vars must be a list of identifiers")
    if len(set(names)) != len(names):
        raise DocumentError("ring.vars contains duplicates")
    rels = [_expr(r, names, f"ring.relations[{i}]") for i, r in enumerate(ring.get("relations", []))]
    try:
        A = FPAlgebra.from_relations(names, [r for r in rels if not r.is_zero()])
    except ValueError as exc:
        raise DocumentError(f"ring: {exc}") from exc

    derivations = {}
    for i, d in enumerate(data.get("derivations", [])):
        dname = d.get("name") or f"d{i}"
        images = d.get("images", {})
        unknown = set(images) - set(names)
        if unknown:
            raise DocumentError(f"derivations[{i}].images: undeclared variables {sorted(unknown)}")
        imgs = {v: _expr(e, names, f"derivations[{i}].images.{v}") for v, e in images.items()}
        derivations[dname] = Derivation(A, imgs, name=dname)

    grading = None
    if "grading" in data:
        g = data["grading"]
        try:
            grading = WeightGrading(int(g["modulus"]), {v: int(w) for v, w in g.get("weights", {}).items()})
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"grading: {exc}") from exc

    generators = None
    if data.get("generators"):
        gens = {k: A.element(_expr(e, names, f"generators.{k}")) for k, e in data["generators"].items()}
        generators = GeneratorFamily.of(gens)

    points = []
    for i, p in enumerate(data.get("points", [])):
        try:
            points.append(tuple(parse_rational(c) for c in p))
        except ParseError as exc:
            raise DocumentError(f"points[{i}]: {exc}") from exc

    entry = CatalogEntry(name, A, derivations, grading=grading, generators=generators)
    return entry, points
