"""JSON on-disk format for algebras and filtered presentations.

Polynomial and tensor values are stored as human-editable expression
strings; structural keys pin the variable order.  Two kinds of file:

  {"kind": "algebra", "variables": [...], "weights": [...],
   "bracket": {"x,y": "x*y", ...},
   "coproduct": {"x": "x@1 + 1@x", ...},        # optional
   "counit":   {"x": "0", ...},                  # optional, default 0
   "antipode": {"x": "-x", ...},                 # optional
   "metadata": {...}}

  {"kind": "presentation", "variables": [...],
   "filtration_weights": [...],
   "commutators": {"x,y": "y", ...},
   "metadata": {...}}

``kind`` may be omitted; it is inferred from the keys present.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .catalog import CatalogEntry
from .errors import ExprSyntaxError, SpecFormatError
from .expr import parse_poly_expr, parse_tensor_expr, poly_to_expr, tensor_to_expr
from .grfilter import FilteredPresentation
from .hopf import CoalgebraData, PoissonHopfAlgebra
from .poisson import PoissonStructure
from .poly import Poly


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SpecFormatError(message)


def _parse_fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFormatError(f"{where}: bad rational {text!r}: {exc}") from exc


def _pair_key(key: str, names: list[str], where: str) -> tuple[int, int]:
    parts = [p.strip() for p in key.split(",")]
    _require(len(parts) == 2, f"{where}: key {key!r} must be 'name_i,name_j'")
    for p in parts:
        _require(p in names, f"{where}: key {key!r} references unknown name {p!r}")
    i, j = names.index(parts[0]), names.index(parts[1])
    _require(i < j, f"{where}: key {key!r} must list the earlier variable first")
    return i, j


def _parse_poly(text, names, where: str) -> Poly:
    try:
        return parse_poly_expr(str(text), names)
    except ExprSyntaxError as exc:
        raise SpecFormatError(f"{where}: {exc}") from exc


def _parse_tensor(text, names, where: str):
    try:
        return parse_tensor_expr(str(text), names)
    except ExprSyntaxError as exc:
        raise SpecFormatError(f"{where}: {exc}") from exc


def detect_kind(data: Mapping) -> str:
    kind = data.get("kind")
    if kind is not None:
        _require(kind in ("algebra", "presentation"), f"unknown kind {kind!r}")
        return kind
    if "filtration_weights" in data or "commutators" in data:
        return "presentation"
    return "algebra"


def parse_algebra_dict(data: Mapping) -> PoissonStructure | PoissonHopfAlgebra:
    """Build a structure (plus coalgebra data when present) from a dict."""
    _require(isinstance(data, Mapping), "top level must be an object")
    names = data.get("variables")
    _require(isinstance(names, list) and names, "missing 'variables' list")
    names = [str(x) for x in names]
    _require(len(set(names)) == len(names), f"duplicate variable names in {names}")
    weights = data.get("weights")
    if weights is not None:
        _require(isinstance(weights, list), "'weights' must be a list")
        _require(len(weights) == len(names), "'weights' length differs from 'variables'")
    brackets = {}
    for key, text in (data.get("bracket") or {}).items():
        i, j = _pair_key(key, names, "bracket")
        brackets[(i, j)] = _parse_poly(text, names, f"bracket[{key}]")
    try:
        structure = PoissonStructure(names, brackets, weights)
    except Exception as exc:
        raise SpecFormatError(f"bad structure: {exc}") from exc

    coproduct = data.get("coproduct")
    if coproduct is None:
        return structure
    delta = []
    for nm in names:
        _require(nm in coproduct, f"coproduct: missing image for {nm!r}")
        delta.append(_parse_tensor(coproduct[nm], names, f"coproduct[{nm}]"))
    counit_map = data.get("counit") or {}
    counit = tuple(
        _parse_fraction(counit_map.get(nm, 0), f"counit[{nm}]") for nm in names
    )
    antipode = None
    if data.get("antipode") is not None:
        sp = data["antipode"]
        antipode = []
        for nm in names:
            _require(nm in sp, f"antipode: missing image for {nm!r}")
            antipode.append(_parse_poly(sp[nm], names, f"antipode[{nm}]"))
        antipode = tuple(antipode)
    metadata = data.get("metadata") or {}
    try:
        coalg = CoalgebraData(tuple(delta), counit, antipode)
        return PoissonHopfAlgebra(
            structure,
            coalg,
            name=str(metadata.get("name", "")),
            metadata=metadata,
        )
    except Exception as exc:
        raise SpecFormatError(f"bad coalgebra data: {exc}") from exc


def parse_presentation_dict(data: Mapping) -> FilteredPresentation:
    _require(isinstance(data, Mapping), "top level must be an object")
    names = data.get("variables")
    _require(isinstance(names, list) and names, "missing 'variables' list")
    names = [str(x) for x in names]
    weights = data.get("filtration_weights")
    _require(isinstance(weights, list), "missing 'filtration_weights' list")
    commutators = {}
    for key, text in (data.get("commutators") or {}).items():
        i, j = _pair_key(key, names, "commutators")
        commutators[(i, j)] = _parse_poly(text, names, f"commutators[{key}]")
    try:
        return FilteredPresentation(
            tuple(names),
            tuple(int(w) for w in weights),
            commutators,
            connected_hopf=bool(data.get("connected_hopf", True)),
        )
    except Exception as exc:
        raise SpecFormatError(f"bad presentation: {exc}") from exc


def parse_dict(data: Mapping):
    if detect_kind(data) == "presentation":
        return parse_presentation_dict(data)
    return parse_algebra_dict(data)


def load_path(path):
    """Load an algebra or presentation file; JSON errors keep positions."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return parse_dict(data)
    except SpecFormatError as exc:
        raise SpecFormatError(f"{path}: {exc}") from exc


def structure_to_dict(P: PoissonStructure, metadata: Mapping | None = None) -> dict:
    out: dict = {"kind": "algebra", "variables": list(P.names)}
    if P.grading is not None:
        out["weights"] = list(P.grading)
    out["bracket"] = {
        f"{P.names[i]},{P.names[j]}": poly_to_expr(poly, P.names)
        for (i, j), poly in sorted(P.p.items())
    }
    if metadata:
        out["metadata"] = dict(metadata)
    return out


def algebra_to_dict(H: PoissonHopfAlgebra | PoissonStructure, metadata: Mapping | None = None) -> dict:
    if isinstance(H, PoissonStructure):
        return structure_to_dict(H, metadata)
    out = structure_to_dict(H.structure, None)
    names = H.names
    out["coproduct"] = {
        nm: tensor_to_expr(H.coalg.delta[i], names) for i, nm in enumerate(names)
    }
    if any(H.coalg.counit):
        out["counit"] = {nm: str(H.coalg.counit[i]) for i, nm in enumerate(names)}
    if H.coalg.antipode is not None:
        out["antipode"] = {
            nm: poly_to_expr(H.coalg.antipode[i], names) for i, nm in enumerate(names)
        }
    meta = dict(H.metadata)
    if H.name:
        meta.setdefault("name", H.name)
    if metadata:
        meta.update(metadata)
    if meta:
        out["metadata"] = meta
    return out


def presentation_to_dict(F: FilteredPresentation, metadata: Mapping | None = None) -> dict:
    out: dict = {
        "kind": "presentation",
        "variables": list(F.names),
        "filtration_weights": list(F.weights),
        "commutators": {
            f"{F.names[i]},{F.names[j]}": poly_to_expr(poly, F.names)
            for (i, j), poly in sorted(F.commutators.items())
        },
    }
    if metadata:
        out["metadata"] = dict(metadata)
    return out


def entry_to_dict(entry: CatalogEntry) -> dict:
    """Exportable payload of a catalog entry (algebra preferred)."""
    meta = {"name": entry.key, "description": entry.description}
    if entry.algebra is not None:
        return algebra_to_dict(entry.algebra, meta)
    if entry.presentation is not None:
        return presentation_to_dict(entry.presentation, meta)
    raise SpecFormatError(f"entry {entry.key} carries no exportable payload")


def dump_path(obj, path) -> None:
    path = Path(path)
    if isinstance(obj, FilteredPresentation):
        data = presentation_to_dict(obj)
    elif isinstance(obj, (PoissonHopfAlgebra, PoissonStructure)):
        data = algebra_to_dict(obj)
    elif isinstance(obj, CatalogEntry):
        data = entry_to_dict(obj)
    else:
        data = obj
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
