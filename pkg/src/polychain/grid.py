"""Structured backend: Kuhn triangulation of a cubical grid.

The box [origin, origin + side]^d is cut into n^d cells; each cell is split
into d! simplices along vertex paths that append unit steps in every
coordinate order.  The resulting complex is simplicial, its simplices are
exactly the monotone vertex chains of the cell lattices, and refining the
grid by any integer ratio refines every simplex of the coarse grid.

All coordinates are Fractions; ids are positions in the vertex-sorted
simplex lists, so two complexes with equal parameters enumerate identically.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from . import chains as _chains
from .geometry import Simplex, canonical, faces, solve_linear, det, simplex_in_simplex
from .radicals import RadicalSum


class GridError(ValueError):
    pass


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


class GridComplex:
    __slots__ = ("ambient_dim", "resolution", "origin", "side",
                 "_simplices", "_index", "_top_orient", "_cube_tops",
                 "_top_cube", "_incidence", "_coboundary")

    def __init__(self, ambient_dim: int, resolution: int, origin=None, side=1):
        if ambient_dim not in (1, 2, 3):
            raise GridError("ambient dimension must be 1, 2 or 3")
        if resolution < 1:
            raise GridError("resolution must be >= 1")
        side = Fraction(side)
        if side <= 0:
            raise GridError("side must be positive")
        if origin is None:
            origin = tuple(Fraction(0) for _ in range(ambient_dim))
        else:
            origin = tuple(Fraction(x) for x in origin)
            if len(origin) != ambient_dim:
                raise GridError("origin dimension mismatch")
        self.ambient_dim = ambient_dim
        self.resolution = resolution
        self.origin = origin
        self.side = side

        d, n = ambient_dim, resolution
        step = side / n
        tops = []  # (simplex, orient, cube)
        for cube in product(range(n), repeat=d):
            corner = tuple(origin[j] + step * cube[j] for j in range(d))
            for perm in permutations(range(d)):
                path = [corner]
                cur = list(corner)
                for axis in perm:
                    cur[axis] += step
                    path.append(tuple(cur))
                verts, s = canonical(tuple(path))
                tops.append((Simplex(verts), _perm_sign(perm) * s, cube))
        tops.sort(key=lambda t: t[0].vertices)

        self._simplices: dict[int, tuple] = {d: tuple(t[0] for t in tops)}
        self._top_orient = tuple(t[1] for t in tops)
        self._top_cube = tuple(t[2] for t in tops)
        cube_tops: dict[tuple, list] = {}
        for i, t in enumerate(tops):
            cube_tops.setdefault(t[2], []).append(i)
        self._cube_tops = {c: tuple(ids) for c, ids in cube_tops.items()}

        for k in range(d - 1, -1, -1):
            seen = set()
            for s in self._simplices[k + 1]:
                # any vertex subset of a Kuhn simplex is again a face
                for sub in combinations(s.vertices, k + 1):
                    seen.add(sub)
            self._simplices[k] = tuple(Simplex(v) for v in sorted(seen))

        self._index = {k: {s: i for i, s in enumerate(v)}
                       for k, v in self._simplices.items()}
        self._incidence: dict[int, tuple] = {}
        self._coboundary: dict[int, tuple] = {}

    # -- enumeration ---------------------------------------------------------

    def count(self, k: int) -> int:
        return len(self._simplices[k])

    def simplices(self, k: int) -> tuple:
        return self._simplices[k]

    def simplex(self, k: int, i: int) -> Simplex:
        return self._simplices[k][i]

    def index_of(self, k: int, s: Simplex) -> int:
        try:
            return self._index[k][s]
        except KeyError:
            raise GridError("simplex not on this complex: %r" % (s,))

    def contains(self, s: Simplex) -> bool:
        table = self._index.get(s.dim)
        return table is not None and s in table

    def cubes(self):
        return product(*(range(self.resolution),) * self.ambient_dim)

    def tops_of_cube(self, cube) -> tuple:
        return self._cube_tops[tuple(cube)]

    def cube_of_top(self, i: int) -> tuple:
        return self._top_cube[i]

    def top_orientation(self, i: int) -> int:
        return self._top_orient[i]

    # -- incidence -------------------------------------------------------------

    def incidence(self, k: int) -> tuple:
        """Per k-simplex id: ((face_id, sign), ...) rows of the boundary map."""
        if k not in self._incidence:
            if not 1 <= k <= self.ambient_dim:
                raise GridError("incidence defined for 1 <= k <= d")
            rows = []
            for s in self._simplices[k]:
                row = tuple((self._index[k - 1][Simplex(fv)], sign)
                            for fv, sign in faces(s.vertices))
                rows.append(row)
            self._incidence[k] = tuple(rows)
        return self._incidence[k]

    def coboundary(self, k: int) -> tuple:
        """Per k-simplex id: ((parent_id, sign), ...) transposed incidence."""
        if k not in self._coboundary:
            cols: list[list] = [[] for _ in range(self.count(k))]
            for parent, row in enumerate(self.incidence(k + 1)):
                for face_id, sign in row:
                    cols[face_id].append((parent, sign))
            self._coboundary[k] = tuple(tuple(c) for c in cols)
        return self._coboundary[k]

    # -- chains ------------------------------------------------------------------

    def validate_chain(self, chain) -> None:
        if chain.ambient_dim != self.ambient_dim:
            raise GridError("ambient dimension mismatch")
        table = self._index.get(chain.dim)
        if table is None:
            raise GridError("no %d-simplices on this complex" % chain.dim)
        for s in chain.terms:
            if s not in table:
                raise GridError("chain term off the complex: %r" % (s,))

    def chain_vector(self, chain) -> list:
        """Coefficient vector over k-simplex ids (chain must live here)."""
        self.validate_chain(chain)
        vec = [Fraction(0)] * self.count(chain.dim)
        for s, c in chain.terms.items():
            vec[self._index[chain.dim][s]] = c
        return vec

    def chain_from_vector(self, group, k: int, vec) -> "_chains.PolyChain":
        items = [(self._simplices[k][i].vertices, c) for i, c in enumerate(vec) if c]
        return _chains.PolyChain.build(group, self.ambient_dim, k, items, complex=self)

    def full_chain(self, group, coeff=1) -> "_chains.PolyChain":
        """Positively oriented sum of all top cells."""
        d = self.ambient_dim
        g = group.normalize(coeff)
        items = [(s.vertices, g if self._top_orient[i] > 0 else group.neg(g))
                 for i, s in enumerate(self._simplices[d])]
        return _chains.PolyChain.build(group, d, d, items, complex=self)

    def cube_chain(self, group, cube, coeff=1) -> "_chains.PolyChain":
        """Positively oriented cell indicator: the d! tops of one cube."""
        d = self.ambient_dim
        g = group.normalize(coeff)
        items = []
        for i in self._cube_tops[tuple(cube)]:
            s = self._simplices[d][i]
            items.append((s.vertices, g if self._top_orient[i] > 0 else group.neg(g)))
        return _chains.PolyChain.build(group, d, d, items, complex=self)

    # -- geometry ------------------------------------------------------------------

    def diameter(self) -> RadicalSum:
        return RadicalSum.sqrt_rational(self.ambient_dim) * self.side

    def bbox(self):
        return self.origin, tuple(x + self.side for x in self.origin)

    def same_as(self, other) -> bool:
        return (isinstance(other, GridComplex)
                and self.ambient_dim == other.ambient_dim
                and self.resolution == other.resolution
                and self.origin == other.origin
                and self.side == other.side)

    def __repr__(self):
        return "GridComplex(d=%d, n=%d, origin=%s, side=%s)" % (
            self.ambient_dim, self.resolution,
            tuple(map(str, self.origin)), self.side)


_CACHE: dict[tuple, GridComplex] = {}


def grid_complex(ambient_dim: int, resolution: int, origin=None, side=1) -> GridComplex:
    side = Fraction(side)
    if origin is None:
        origin = tuple(Fraction(0) for _ in range(ambient_dim))
    else:
        origin = tuple(Fraction(x) for x in origin)
    key = (ambient_dim, resolution, origin, side)
    if key not in _CACHE:
        _CACHE[key] = GridComplex(ambient_dim, resolution, origin, side)
    return _CACHE[key]


def embed_on(target: GridComplex, chain) -> "_chains.PolyChain":
    """Re-express a grid-aligned chain exactly on a (finer) grid complex.

    Every term must be tiled exactly by target simplices; the tiling is
    verified by an exact volume identity per term.  Fails loudly otherwise.
    """
    if chain.ambient_dim != target.ambient_dim:
        raise GridError("ambient dimension mismatch")
    if chain.complex is not None and chain.complex.same_as(target):
        return _chains.PolyChain(chain.group, chain.ambient_dim, chain.dim,
                                 dict(chain.terms), target)
    k = chain.dim
    group = chain.group
    if k == 0:
        items = []
        for s, c in chain.terms.items():
            target.index_of(0, s)  # raises if off-lattice
            items.append((s.vertices, c))
        return _chains.PolyChain.build(group, chain.ambient_dim, 0, items, complex=target)

    fine = target.simplices(k)
    items = []
    for sigma, coeff in chain.terms.items():
        if sigma.is_degenerate():
            raise GridError("cannot re-express a zero-volume term")
        lo, hi = sigma.bbox()
        base = sigma.edges()
        # rows of the (d x k) system expressing a vector in sigma's edge basis
        basis_rows = [[base[j][i] for j in range(k)] for i in range(chain.ambient_dim)]
        covered = RadicalSum()
        for t in fine:
            tlo, thi = t.bbox()
            if any(a < b for a, b in zip(tlo, lo)) or any(a > b for a, b in zip(thi, hi)):
                continue
            if not simplex_in_simplex(t, sigma):
                continue
            coords = []
            for e in t.edges():
                sol = solve_linear(basis_rows, list(e))
                if sol is None:
                    raise GridError("contained simplex outside the spanning plane")
                coords.append(sol[0])
            rel = det(coords)
            if rel == 0:
                raise GridError("degenerate tile")
            c = coeff if rel > 0 else group.neg(coeff)
            items.append((t.vertices, c))
            covered = covered + t.volume()
        if not (covered - sigma.volume()).is_zero():
            raise GridError("term is not exactly tiled by the target grid")
    return _chains.PolyChain.build(group, chain.ambient_dim, k, items, complex=target)
