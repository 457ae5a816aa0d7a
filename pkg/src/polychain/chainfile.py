"""Exact textual file formats.

Chain files are JSON documents with rationals serialized as "p/q" strings,
never floats, so a round trip is bit-exact:

    {
      "ambient_dim": 2,
      "dim": 1,
      "group": "real",                  # real | integer | mod:p | circle
      "complex": {"type": "kuhn", "n": 2},   # optional, unit box
      "simplices": [
        {"vertices": [["0", "0"], ["1/2", "0"]], "coeff": "3/4"},
        ...
      ]
    }

Grid-function files are plain text: a header line "d n" followed by n^d
rationals in row-major order (the function is zero outside the unit box).

ChainFileError marks structural problems (malformed document, bad rational,
unknown field); semantic violations raised while building the chain (wrong
coefficient for the group, simplex off the grid) propagate from the core
modules unchanged so callers can tell the two apart.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chains import PolyChain
from .coarea import GridFunction
from .grid import grid_complex
from .groups import GroupError
from .groups import group_from_tag as _group_from_tag


class ChainFileError(ValueError):
    pass


# -- rationals ------------------------------------------------------------


def rational_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ChainFileError("%s: rationals must be 'p/q' strings or integers, got %r"
                             % (where, value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ChainFileError("%s: not a rational: %r" % (where, value)) from None
    raise ChainFileError("%s: expected rational string, got %s" % (where, type(value).__name__))


# -- groups ---------------------------------------------------------------


def group_from_tag(tag):
    if not isinstance(tag, str):
        raise ChainFileError("group tag must be a string")
    try:
        return _group_from_tag(tag)
    except GroupError as exc:
        raise ChainFileError(str(exc)) from None


# -- chain documents --------------------------------------------------------


def chain_to_document(chain: PolyChain) -> dict:
    doc = {
        "ambient_dim": chain.ambient_dim,
        "dim": chain.dim,
        "group": chain.group.tag,
        "simplices": [],
    }
    if chain.complex is not None:
        cx = chain.complex
        if cx.origin != (Fraction(0),) * cx.ambient_dim or cx.side != 1:
            raise ChainFileError("only unit-box grid complexes are serializable")
        doc["complex"] = {"type": "kuhn", "n": cx.resolution}
    integral = chain.group.tag != "real" and chain.group.tag != "circle"
    for simplex, coeff in chain.items_sorted():
        doc["simplices"].append({
            "vertices": [[rational_str(x) for x in v] for v in simplex.vertices],
            "coeff": int(coeff) if integral else rational_str(coeff),
        })
    return doc


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise ChainFileError("%s: missing field %r" % (where, key))
    value = doc[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        names = "/".join(k.__name__ for k in kind) if isinstance(kind, tuple) \
            else kind.__name__
        raise ChainFileError("%s: field %r must be %s" % (where, key, names))
    return value


def document_to_chain(doc) -> PolyChain:
    if not isinstance(doc, dict):
        raise ChainFileError("chain document must be a JSON object")
    ambient = _require(doc, "ambient_dim", int, "chain")
    dim = _require(doc, "dim", int, "chain")
    group = group_from_tag(_require(doc, "group", str, "chain"))
    complex = None
    if "complex" in doc and doc["complex"] is not None:
        cx = _require(doc, "complex", dict, "chain")
        if cx.get("type") != "kuhn":
            raise ChainFileError("complex: only type 'kuhn' is supported")
        complex = grid_complex(ambient, _require(cx, "n", int, "complex"))
    raw = _require(doc, "simplices", list, "chain")
    items = []
    for i, entry in enumerate(raw):
        where = "simplices[%d]" % i
        if not isinstance(entry, dict):
            raise ChainFileError("%s: must be an object" % where)
        verts = _require(entry, "vertices", list, where)
        if len(verts) != dim + 1:
            raise ChainFileError("%s: a %d-simplex needs %d vertices, got %d"
                                 % (where, dim, dim + 1, len(verts)))
        vertices = []
        for j, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != ambient:
                raise ChainFileError("%s: vertex %d must list %d coordinates"
                                     % (where, j, ambient))
            vertices.append(tuple(parse_rational(x, "%s vertex %d" % (where, j))
                                  for x in v))
        coeff = parse_rational(_require(entry, "coeff", (int, str), where),
                               "%s coeff" % where)
        items.append((tuple(vertices), coeff))
    return PolyChain.build(group, ambient, dim, items, complex=complex)


def emit_chain(chain: PolyChain) -> str:
    return json.dumps(chain_to_document(chain), indent=2, sort_keys=True) + "\n"


def parse_chain(text: str) -> PolyChain:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainFileError("line %d column %d: %s"
                             % (exc.lineno, exc.colno, exc.msg)) from None
    return document_to_chain(doc)


def save_chain(chain: PolyChain, path: str):
    with open(path, "w") as fp:
        fp.write(emit_chain(chain))


def load_chain(path: str) -> PolyChain:
    with open(path) as fp:
        return parse_chain(fp.read())


# -- grid-function files -----------------------------------------------------


def emit_grid_function(u: GridFunction) -> str:
    lines = ["%d %d" % (u.ambient_dim, u.resolution)]
    n = u.resolution
    row = n if u.ambient_dim > 1 else len(u.values)
    for start in range(0, len(u.values), row):
        lines.append(" ".join(rational_str(v) for v in u.values[start:start + row]))
    return "\n".join(lines) + "\n"


def parse_grid_function(text: str) -> GridFunction:
    tokens = text.split()
    if len(tokens) < 2:
        raise ChainFileError("grid function file needs a 'd n' header")
    try:
        d, n = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ChainFileError("grid function header must be two integers, got %r %r"
                             % (tokens[0], tokens[1])) from None
    values = [parse_rational(t, "grid value %d" % i)
              for i, t in enumerate(tokens[2:])]
    if d < 1 or n < 1:
        raise ChainFileError("grid function header out of range: d=%d n=%d" % (d, n))
    if len(values) != n ** d:
        raise ChainFileError("expected %d grid values, got %d" % (n ** d, len(values)))
    return GridFunction.build(d, n, values)


def save_grid_function(u: GridFunction, path: str):
    with open(path, "w") as fp:
        fp.write(emit_grid_function(u))


def load_grid_function(path: str) -> GridFunction:
    with open(path) as fp:
        return parse_grid_function(fp.read())
