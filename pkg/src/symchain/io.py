"""Canonical JSON documents for complexes, chain maps, and presentations.

The format is a JSON text profile: fixed key order, matrices as dense
row-major lists of scalar strings in the textual grammar, two-space
indentation.  Serialization of equal objects is byte-identical, and
serialize(parse(serialize(x))) == serialize(x).  Parsed complexes must
pass validation; failures carry the offending degree.
"""

from __future__ import annotations

import json

from .complexes import ChainMap, FreeComplex, validate
from .errors import DocumentError, ScalarParseError, SymchainError
from .linalg import SparseMatrix
from .scalars import GF, QQ, Ring, ZLoc, ZZ, graded_poly
from .sym2 import PresentedComplex

__all__ = [
    "serialize",
    "parse",
    "ring_to_obj",
    "ring_from_obj",
    "parse_ring_string",
    "COMPLEX_FORMAT",
    "MAP_FORMAT",
    "PRESENTED_FORMAT",
]

COMPLEX_FORMAT = "symchain-complex-v1"
MAP_FORMAT = "symchain-map-v1"
PRESENTED_FORMAT = "symchain-presented-v1"


def ring_to_obj(ring: Ring) -> dict:
    if ring.kind == "Poly":
        return {"kind": "GradedPoly", "variables": list(ring.variables)}
    if ring.kind in ("GF", "ZLoc"):
        return {"kind": ring.kind, "p": ring.p}
    return {"kind": ring.kind}


def ring_from_obj(obj) -> Ring:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DocumentError(f"bad ring descriptor {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "ZZ":
            return ZZ
        if kind == "QQ":
            return QQ
        if kind == "GF":
            return GF(int(obj["p"]))
        if kind == "ZLoc":
            return ZLoc(int(obj["p"]))
        if kind == "GradedPoly":
            return graded_poly(*obj["variables"])
    except (KeyError, TypeError, SymchainError) as exc:
        raise DocumentError(f"bad ring descriptor {obj!r}: {exc}") from exc
    raise DocumentError(f"unknown ring kind {kind!r}")


def parse_ring_string(text: str) -> Ring:
    """Ring grammar for the command line: ZZ, QQ, GF(p), ZLoc(p),
    GradedPoly(x,y)."""
    text = text.strip()
    if text == "ZZ":
        return ZZ
    if text == "QQ":
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        return GF(int(text[3:-1]))
    if text.startswith("ZLoc(") and text.endswith(")"):
        return ZLoc(int(text[5:-1]))
    if text.startswith("GradedPoly(") and text.endswith(")"):
        names = [v.strip() for v in text[11:-1].split(",") if v.strip()]
        return graded_poly(*names)
    raise DocumentError(f"cannot parse ring {text!r}")


def _matrix_to_rows(M: SparseMatrix):
    return [[str(v) for v in row] for row in M.to_rows()]


def _matrix_from_rows(ring: Ring, rows, nrows: int, ncols: int, where: str) -> SparseMatrix:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise DocumentError(
            f"{where}: expected a {nrows}x{ncols} matrix, got "
            f"{len(rows)}x{len(rows[0]) if rows else 0}"
        )
    entries = {}
    for i, row in enumerate(rows):
        for j, text in enumerate(row):
            try:
                entries[(i, j)] = ring.scalar(text)
            except ScalarParseError as exc:
                raise DocumentError(f"{where}: entry ({i},{j}): {exc}") from exc
    return SparseMatrix(ring, nrows, ncols, entries)


def _complex_to_obj(X: FreeComplex) -> dict:
    obj = {"format": COMPLEX_FORMAT, "ring": ring_to_obj(X.ring)}
    if X.is_zero():
        obj["support"] = None
        obj["ranks"] = []
    else:
        lo, hi = X.support
        obj["support"] = [lo, hi]
        obj["ranks"] = [X.rank(n) for n in range(lo, hi + 1)]
        if X.graded:
            obj["degrees"] = [list(X.gdeg(n)) for n in range(lo, hi + 1)]
        obj["differentials"] = [_matrix_to_rows(X.diff(n)) for n in range(lo + 1, hi + 1)]
    return obj


def _complex_from_obj(obj) -> FreeComplex:
    ring = ring_from_obj(obj.get("ring"))
    support = obj.get("support")
    if support is None:
        return FreeComplex(ring, {}, {}, {} if ring.kind == "Poly" else None)
    lo, hi = int(support[0]), int(support[1])
    ranks_list = obj.get("ranks")
    if not isinstance(ranks_list, list) or len(ranks_list) != hi - lo + 1:
        raise DocumentError("ranks do not match the support interval")
    ranks = {lo + k: int(r) for k, r in enumerate(ranks_list)}
    gdegs = None
    if ring.kind == "Poly":
        degrees = obj.get("degrees")
        if not isinstance(degrees, list) or len(degrees) != hi - lo + 1:
            raise DocumentError("graded documents need a degrees list matching the support")
        gdegs = {lo + k: tuple(int(d) for d in ds) for k, ds in enumerate(degrees)}
        gdegs = {n: ds for n, ds in gdegs.items() if ranks.get(n, 0) > 0}
    diff_rows = obj.get("differentials", [])
    if len(diff_rows) != max(hi - lo, 0):
        raise DocumentError("differentials do not match the support interval")
    diffs = {}
    for k, rows in enumerate(diff_rows):
        n = lo + 1 + k
        diffs[n] = _matrix_from_rows(
            ring, rows, ranks.get(n - 1, 0), ranks.get(n, 0), f"differential at degree {n}"
        )
    X = FreeComplex(ring, ranks, diffs, gdegs)
    report = validate(X)
    if not report:
        degree = report.first_failure[0] if report.first_failure else "?"
        raise DocumentError(f"complex fails validation at degree {degree}: {report.failures[0]}")
    return X


def _map_to_obj(f: ChainMap) -> dict:
    return {
        "format": MAP_FORMAT,
        "ring": ring_to_obj(f.source.ring),
        "source": _complex_to_obj(f.source),
        "target": _complex_to_obj(f.target),
        "maps": {
            str(n): _matrix_to_rows(f.component(n)) for n in sorted(f.maps)
        },
    }


def _map_from_obj(obj) -> ChainMap:
    ring = ring_from_obj(obj.get("ring"))
    source = _complex_from_obj(obj.get("source"))
    target = _complex_from_obj(obj.get("target"))
    if source.ring != ring or target.ring != ring:
        raise DocumentError("map ring differs from the endpoint rings")
    maps = {}
    for key, rows in (obj.get("maps") or {}).items():
        n = int(key)
        maps[n] = _matrix_from_rows(
            ring, rows, target.rank(n), source.rank(n), f"map at degree {n}"
        )
    f = ChainMap(source, target, maps)
    if not f.is_chain_map():
        raise DocumentError("document does not describe a chain map")
    return f


def _presented_to_obj(P: PresentedComplex) -> dict:
    obj = {"format": PRESENTED_FORMAT, "ring": ring_to_obj(P.ring)}
    if not P.generators:
        obj["support"] = None
        obj["generators"] = []
        return obj
    lo, hi = P.support
    obj["support"] = [lo, hi]
    obj["generators"] = [P.rank_free_cover(n) for n in range(lo, hi + 1)]
    obj["relations"] = [_matrix_to_rows(P.relation(n)) for n in range(lo, hi + 1)]
    obj["differentials"] = [_matrix_to_rows(P.diff(n)) for n in range(lo + 1, hi + 1)]
    return obj


def _presented_from_obj(obj) -> PresentedComplex:
    ring = ring_from_obj(obj.get("ring"))
    support = obj.get("support")
    if support is None:
        return PresentedComplex(ring, {}, {}, {})
    lo, hi = int(support[0]), int(support[1])
    counts = obj.get("generators")
    if not isinstance(counts, list) or len(counts) != hi - lo + 1:
        raise DocumentError("generator counts do not match the support interval")
    generators = {lo + k: list(range(int(c))) for k, c in enumerate(counts) if int(c) > 0}
    relations = {}
    for k, rows in enumerate(obj.get("relations", [])):
        n = lo + k
        if n not in generators:
            continue
        relations[n] = _matrix_from_rows(
            ring, rows, len(generators[n]), len(rows[0]) if rows else 0,
            f"relations at degree {n}",
        ) if rows else SparseMatrix.zero(ring, len(generators[n]), 0)
    diffs = {}
    for k, rows in enumerate(obj.get("differentials", [])):
        n = lo + 1 + k
        if n not in generators or (n - 1) not in generators:
            continue
        diffs[n] = _matrix_from_rows(
            ring, rows, len(generators[n - 1]), len(generators[n]),
            f"presented differential at degree {n}",
        )
    P = PresentedComplex(ring, generators, relations, diffs)
    if not P.validate():
        raise DocumentError("presented complex fails relation compatibility")
    return P


def serialize(value) -> str:
    """Canonical document text for a complex, chain map, or presentation."""
    if isinstance(value, FreeComplex):
        obj = _complex_to_obj(value)
    elif isinstance(value, ChainMap):
        obj = _map_to_obj(value)
    elif isinstance(value, PresentedComplex):
        obj = _presented_to_obj(value)
    else:
        raise SymchainError(f"cannot serialize {type(value).__name__}")
    return json.dumps(obj, indent=2) + "\n"


def parse(text: str):
    """Parse a document; returns a FreeComplex, ChainMap, or PresentedComplex."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc.msg}", line=exc.lineno, column=exc.colno)
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    fmt = obj.get("format")
    if fmt == COMPLEX_FORMAT:
        return _complex_from_obj(obj)
    if fmt == MAP_FORMAT:
        return _map_from_obj(obj)
    if fmt == PRESENTED_FORMAT:
        return _presented_from_obj(obj)
    raise DocumentError(f"unknown document format {fmt!r}")
