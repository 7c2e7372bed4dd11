"""JSON interchange formats.

Lattice file:   {"label": str, "rank": int, "gram": [[int, ...], ...]}
Vector file:    {"lattice": label, "coords": [int, ...]}
Orbit file:     {"seed": vector, "members": [vector, ...], "exhausted": bool}
                members sorted lexicographically by coordinates
Witness file:   {"from": vector, "to": vector, "word": [generator index, ...]}
Audit report:   [{"id": str, "status": str, "computed": {...}, "note": str}, ...]

``dumps`` is canonical (sorted keys, fixed separators), so equal objects
serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

from .isometry import OrbitSet
from .lattice import Lattice, LatticeError, LatticeVector


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def lattice_to_obj(lat: Lattice) -> dict:
    return {"label": lat.label, "rank": lat.rank, "gram": [list(row) for row in lat.gram]}


def lattice_from_obj(obj: dict) -> Lattice:
    try:
        label, rank, gram = obj["label"], obj["rank"], obj["gram"]
    except (KeyError, TypeError) as exc:
        raise LatticeError(f"malformed lattice object: missing {exc}") from None
    lat = Lattice(str(label), tuple(tuple(int(x) for x in row) for row in gram))
    if lat.rank != rank:
        raise LatticeError(f"lattice file says rank {rank}, Gram matrix has rank {lat.rank}")
    return lat


def vector_to_obj(v: LatticeVector) -> dict:
    return {"lattice": v.lattice.label, "coords": list(v.coords)}


def vector_from_obj(obj: dict, registry: dict[str, Lattice]) -> LatticeVector:
    try:
        label, coords = obj["lattice"], obj["coords"]
    except (KeyError, TypeError) as exc:
        raise LatticeError(f"malformed vector object: missing {exc}") from None
    if label not in registry:
        raise LatticeError(f"unknown lattice label {label!r}")
    return registry[label].vector(coords)


def orbit_to_obj(orbit: OrbitSet) -> dict:
    label = orbit.seed.lattice.label
    return {
        "seed": vector_to_obj(orbit.seed),
        "members": [{"lattice": label, "coords": list(c)} for c in orbit.members],
        "exhausted": orbit.exhausted,
    }


def witness_to_obj(v: LatticeVector, u: LatticeVector, word: list[int]) -> dict:
    return {"from": vector_to_obj(v), "to": vector_to_obj(u), "word": list(word)}


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def save_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
