"""Polyhedral chains with coefficients in a normed abelian group.

A chain is a finite formal sum of oriented rational simplices.  Canonical
form: vertices sorted lexicographically, orientation parity folded into the
coefficient, zero coefficients and repeated-vertex tuples dropped.  Chain
equality is equality of canonical term maps.  Chains are immutable by
convention; every operation returns a new chain.

Zero-volume simplices with distinct vertices are kept as formal terms: they
carry no mass but their faces matter for exact boundary identities (prism
and cone constructions rely on this).

The free backend ("soup") performs no geometric merging: simplices that
overlap without being identical coexist, so a soup mass is an upper bound
for the mass of the underlying current.  Chains tagged with a complex are
validated to be supported on it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from . import geometry
from .geometry import AffineMap, Simplex, canonical, faces
from .groups import Group
from .radicals import RadicalSum


class ChainError(ValueError):
    pass


class PolyChain:
    __slots__ = ("group", "ambient_dim", "dim", "terms", "complex")

    def __init__(self, group: Group, ambient_dim: int, dim: int, terms, complex=None):
        # internal: terms must already be canonical {Simplex: coeff}
        self.group = group
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.terms = terms
        self.complex = complex

    @classmethod
    def build(cls, group: Group, ambient_dim: int, dim: int, items, complex=None) -> "PolyChain":
        """Canonicalize (vertices, coeff) pairs into a chain."""
        if not 0 <= dim <= ambient_dim:
            raise ChainError("chain dimension %d out of range for R^%d" % (dim, ambient_dim))
        terms: dict[Simplex, Fraction] = {}
        for vertices, coeff in items:
            verts, sign = canonical(vertices)
            if sign == 0:
                continue
            if len(verts) != dim + 1:
                raise ChainError("simplex with %d vertices in a %d-chain" % (len(verts), dim))
            if len(verts[0]) != ambient_dim:
                raise ChainError("vertex dimension %d != ambient %d" % (len(verts[0]), ambient_dim))
            g = group.normalize(coeff)
            if sign < 0:
                g = group.neg(g)
            s = Simplex(verts)
            if s in terms:
                g = group.add(terms[s], g)
            if g:
                terms[s] = g
            else:
                terms.pop(s, None)
        chain = cls(group, ambient_dim, dim, terms, complex)
        if complex is not None:
            complex.validate_chain(chain)
        return chain

    @classmethod
    def zero(cls, group: Group, ambient_dim: int, dim: int, complex=None) -> "PolyChain":
        return cls(group, ambient_dim, dim, {}, complex)

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].vertices)

    def support(self):
        return sorted(self.terms, key=lambda s: s.vertices)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, PolyChain)
                and self.group == other.group
                and self.ambient_dim == other.ambient_dim
                and self.dim == other.dim
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        return "PolyChain(%s, d=%d, k=%d, %d terms)" % (
            self.group.tag, self.ambient_dim, self.dim, len(self.terms))

    def _check_compatible(self, other: "PolyChain"):
        if self.group != other.group:
            raise ChainError("coefficient groups differ: %s vs %s" % (self.group.tag, other.group.tag))
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            raise ChainError("chain dimensions differ")
        if self.complex is not None and other.complex is not None \
                and not self.complex.same_as(other.complex):
            raise ChainError("chains live on different complexes")

    def _merged_complex(self, other: "PolyChain"):
        if self.complex is not None and other.complex is not None:
            return self.complex
        return None

    # -- group operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PolyChain):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        g = self.group
        for s, c in other.terms.items():
            if s in terms:
                merged = g.add(terms[s], c)
                if merged:
                    terms[s] = merged
                else:
                    del terms[s]
            else:
                terms[s] = c
        return PolyChain(self.group, self.ambient_dim, self.dim, terms,
                         self._merged_complex(other))

    def __neg__(self):
        g = self.group
        return PolyChain(self.group, self.ambient_dim, self.dim,
                         {s: g.neg(c) for s, c in self.terms.items()}, self.complex)

    def __sub__(self, other):
        if not isinstance(other, PolyChain):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "PolyChain":
        g = self.group
        terms = {}
        for simplex, c in self.terms.items():
            v = g.scale(c, s)
            if v:
                terms[simplex] = v
        return PolyChain(self.group, self.ambient_dim, self.dim, terms, self.complex)

    # -- boundary and mass ----------------------------------------------------

    def boundary(self) -> "PolyChain":
        if self.dim == 0:
            raise ChainError("0-chains have no boundary")
        g = self.group
        terms: dict[Simplex, Fraction] = {}
        for simplex, coeff in self.terms.items():
            for face_verts, sign in faces(simplex.vertices):
                c = coeff if sign > 0 else g.neg(coeff)
                s = Simplex(face_verts)  # faces of sorted tuples stay sorted
                if s in terms:
                    c = g.add(terms[s], c)
                if c:
                    terms[s] = c
                else:
                    terms.pop(s, None)
        return PolyChain(self.group, self.ambient_dim, self.dim - 1, terms, self.complex)

    def mass_exact(self) -> RadicalSum:
        total = RadicalSum()
        for simplex, coeff in self.terms.items():
            n = self.group.norm(coeff)
            if n:
                total = total + simplex.volume() * n
        return total

    def mass(self) -> float:
        return float(self.mass_exact())

    def mass_measure(self) -> "MassMeasure":
        entries = [(s, s.volume() * self.group.norm(c)) for s, c in self.items_sorted()]
        total = RadicalSum()
        for _, w in entries:
            total = total + w
        return MassMeasure(entries=entries, total=total)

    # -- restriction -----------------------------------------------------------

    def restrict(self, keep) -> "PolyChain":
        """Sub-chain on a set of carrying simplices (exact term filter)."""
        keep_set = set()
        for item in keep:
            if isinstance(item, Simplex):
                keep_set.add(item)
            elif isinstance(item, int):
                if self.complex is None:
                    raise ChainError("integer ids need a complex-backed chain")
                keep_set.add(self.complex.simplex(self.dim, item))
            else:
                keep_set.add(Simplex(item))
        terms = {s: c for s, c in self.terms.items() if s in keep_set}
        return PolyChain(self.group, self.ambient_dim, self.dim, terms, self.complex)


@dataclass
class MassMeasure:
    """Per-simplex mass weights plus the total (all exact)."""
    entries: list
    total: RadicalSum

    def restrict(self, simplices) -> RadicalSum:
        keep = set(simplices)
        out = RadicalSum()
        for s, w in self.entries:
            if s in keep:
                out = out + w
        return out


# ---------------------------------------------------------------------------
# geometric chain operations (free backend)


def pushforward(chain: PolyChain, f: AffineMap) -> PolyChain:
    """Image chain under an affine map; output is soup."""
    items = [(f.apply_vertices(s.vertices), c) for s, c in chain.terms.items()]
    return PolyChain.build(chain.group, chain.ambient_dim, chain.dim, items)


def cone(apex, chain: PolyChain) -> PolyChain:
    """Join with an apex point: dim k -> k+1, soup output.

    Degenerate cone simplices (apex in a term's affine hull) are dropped
    with a warning, per contract; the boundary identity
    boundary(cone(p, c)) = c - cone(p, boundary(c)) holds whenever no term
    degenerates.
    """
    apex = geometry.as_point(apex)
    items = []
    dropped = 0
    for s, c in chain.terms.items():
        verts = (apex,) + s.vertices
        test = Simplex(verts)
        if len(set(verts)) == len(verts) and test.is_degenerate():
            dropped += 1
            continue
        items.append((verts, c))
    if dropped:
        warnings.warn("cone: dropped %d degenerate simplices" % dropped)
    return PolyChain.build(chain.group, chain.ambient_dim, chain.dim + 1, items)


def prism(chain: PolyChain, from_map: AffineMap, to_map: AffineMap) -> PolyChain:
    """Affine chain homotopy between two maps: dim k -> k+1, soup output.

    Satisfies, canonically and over any coefficient group:

        boundary(prism(c)) = pushforward(c, to_map) - pushforward(c, from_map)
                             - prism(boundary(c))
    """
    g = chain.group
    items = []
    for s, coeff in chain.terms.items():
        lower = [from_map(v) for v in s.vertices]
        upper = [to_map(v) for v in s.vertices]
        k = s.dim
        for i in range(k + 1):
            verts = tuple(lower[: i + 1]) + tuple(upper[i:])
            c = coeff if i % 2 == 0 else g.neg(coeff)
            items.append((verts, c))
    return PolyChain.build(chain.group, chain.ambient_dim, chain.dim + 1, items)


# ---------------------------------------------------------------------------
# midpoint subdivision (free chains only)

def _reference_subdivision(k: int):
    """Children of the reference k-simplex as barycentric vertex tuples,
    oriented consistently with the parent."""
    if k == 0:
        return [((Fraction(1),),)]
    verts = {i: tuple(Fraction(1 if j == i else 0) for j in range(k + 1)) for i in range(k + 1)}

    def mid(i, j):
        return tuple((a + b) / 2 for a, b in zip(verts[i], verts[j]))

    children = []
    if k == 1:
        children = [(verts[0], mid(0, 1)), (mid(0, 1), verts[1])]
    elif k == 2:
        m01, m02, m12 = mid(0, 1), mid(0, 2), mid(1, 2)
        children = [
            (verts[0], m01, m02),
            (m01, verts[1], m12),
            (m02, m12, verts[2]),
            (m01, m12, m02),
        ]
    elif k == 3:
        m = {(i, j): mid(i, j) for i in range(4) for j in range(i + 1, 4)}
        children = [
            (verts[0], m[0, 1], m[0, 2], m[0, 3]),
            (m[0, 1], verts[1], m[1, 2], m[1, 3]),
            (m[0, 2], m[1, 2], verts[2], m[2, 3]),
            (m[0, 3], m[1, 3], m[2, 3], verts[3]),
            # octahedron split along the m01-m23 diagonal
            (m[0, 1], m[2, 3], m[0, 2], m[0, 3]),
            (m[0, 1], m[2, 3], m[0, 3], m[1, 3]),
            (m[0, 1], m[2, 3], m[1, 3], m[1, 2]),
            (m[0, 1], m[2, 3], m[1, 2], m[0, 2]),
        ]
    else:
        raise ChainError("midpoint subdivision implemented for k <= 3")

    # orient every child like the parent (positive in barycentric chart)
    fixed = []
    for child in children:
        # chart: drop the first barycentric coordinate
        pts = [p[1:] for p in child]
        rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
        d = geometry.det(rows)
        if d == 0:
            raise ChainError("degenerate subdivision cell")
        fixed.append(child if d > 0 else child[:-2] + (child[-1], child[-2]))
    return fixed


_SUBDIV_CACHE: dict[int, list] = {}


def subdivide(chain: PolyChain, rule: str = "midpoint") -> PolyChain:
    """Midpoint refinement; free chains only (output is soup)."""
    if rule != "midpoint":
        raise ChainError("unknown subdivision rule %r" % rule)
    if chain.complex is not None:
        raise ChainError("subdivide acts on free chains; drop the complex first")
    k = chain.dim
    if k not in _SUBDIV_CACHE:
        _SUBDIV_CACHE[k] = _reference_subdivision(k)
    pattern = _SUBDIV_CACHE[k]
    items = []
    for s, coeff in chain.terms.items():
        for child in pattern:
            child_verts = tuple(
                tuple(sum(w * v[i] for w, v in zip(bary, s.vertices))
                      for i in range(chain.ambient_dim))
                for bary in child)
            items.append((child_verts, coeff))
    return PolyChain.build(chain.group, chain.ambient_dim, k, items)
