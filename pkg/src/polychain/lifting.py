"""Lifting circle-coefficient chains to real coefficients.

The projection map sends a real coefficient to its value mod 1; the
minimal-norm section sends a circle value c to c when c <= 1/2 and to
c - 1 otherwise.  Both are norm-compatible with constant 1, so the
coefficient-wise lift preserves mass exactly.  The work in this module is
controlling the boundary mass of lifts:

* threshold lifts of top-dimensional chains, with an exact piecewise-
  constant profile of boundary mass over the threshold window (1/4, 3/4)
  whose minimum and integral obey the 3x / 5x / (5/2)x bounds;
* loop cancellation for 1-chains whose boundary projects to zero,
  yielding integral chains without mass increase (bounded ratio 1);
* a codimension-one correction that fills the projected cycle inside the
  grid, lifts the fill at the best threshold, and subtracts its boundary
  (bounded ratio 6);
* the assembled flat lift with ratio at most (2 + 2D)(1 + epsilon).

All bounds are checked exactly (radical arithmetic) before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .approx import ApproxBudget, disjoint_representative
from .chains import ChainError, PolyChain
from .groups import CIRCLE, REAL, section
from .radicals import RadicalSum


class LiftError(ValueError):
    pass


@dataclass
class LiftReport:
    route: str
    d_used: int
    input_mass: float
    output_mass: float
    guaranteed_ratio: float
    theta: Fraction | None = None
    passes: int | None = None


@dataclass
class ThresholdProfile:
    """Boundary mass of the threshold lift as an exact step function of
    the threshold, over the open window (1/4, 3/4)."""
    breakpoints: tuple
    intervals: tuple  # (lo, hi, midpoint, boundary_mass)
    integral: RadicalSum

    def minimum(self):
        best = None
        for lo, hi, mid, mass in self.intervals:
            if best is None or (mass - best[1]).sign() < 0:
                best = (mid, mass)
        return best


# ---------------------------------------------------------------------------
# projection and coefficient-wise section


def project_chain(chain: PolyChain) -> PolyChain:
    """Reduce real coefficients mod 1; commutes with the boundary and
    never increases mass."""
    if chain.group.tag not in ("real", "integer"):
        raise LiftError("projection expects real or integer coefficients")
    terms = {}
    for s, c in chain.terms.items():
        v = CIRCLE.normalize(Fraction(c))
        if v:
            terms[s] = v
    return PolyChain(CIRCLE, chain.ambient_dim, chain.dim, terms, chain.complex)


def lift_coefficientwise(chain: PolyChain) -> PolyChain:
    """Minimal-norm section per coefficient; projects back exactly and
    preserves mass exactly."""
    if chain.group.tag != "circle":
        raise LiftError("lift expects circle coefficients")
    terms = {s: section(c) for s, c in chain.terms.items()}
    return PolyChain(REAL, chain.ambient_dim, chain.dim, terms, chain.complex)


# ---------------------------------------------------------------------------
# threshold lifts of top-dimensional chains


def _require_top(chain: PolyChain):
    if chain.group.tag != "circle":
        raise LiftError("threshold lift expects circle coefficients")
    if chain.complex is None or chain.dim != chain.ambient_dim:
        raise LiftError("threshold lift expects a top-dimensional grid chain")


def lift_top_threshold(chain: PolyChain, theta) -> PolyChain:
    """Lift coefficients by g -> g if g <= theta else g - 1."""
    _require_top(chain)
    theta = Fraction(theta)
    if not Fraction(1, 4) < theta < Fraction(3, 4):
        raise LiftError("threshold must lie in (1/4, 3/4)")
    terms = {}
    for s, c in chain.terms.items():
        if c == theta:
            raise LiftError("threshold collides with a coefficient; "
                            "use an interval midpoint")
        terms[s] = c if c < theta else c - 1
    return PolyChain(REAL, chain.ambient_dim, chain.dim, terms, chain.complex)


def threshold_profile(chain: PolyChain) -> ThresholdProfile:
    """Exact boundary-mass step function of the threshold lift.

    The lift changes only when the threshold crosses a coefficient, so
    the profile is constant between the distinct coefficients lying in
    (1/4, 3/4); each interval is evaluated at its midpoint.
    """
    _require_top(chain)
    lo, hi = Fraction(1, 4), Fraction(3, 4)
    breaks = sorted({c for c in chain.terms.values() if lo < c < hi})
    points = [lo] + breaks + [hi]
    intervals = []
    integral = RadicalSum()
    for a, b in zip(points, points[1:]):
        mid = (a + b) / 2
        mass = lift_top_threshold(chain, mid).boundary().mass_exact()
        intervals.append((a, b, mid, mass))
        integral = integral + mass * (b - a)
    return ThresholdProfile(breakpoints=tuple(breaks),
                            intervals=tuple(intervals), integral=integral)


def lift_top_optimal(chain: PolyChain):
    """Scan the threshold profile and lift at the best threshold.

    Returns (theta, lifted chain, profile).  Verifies exactly that
    mass(lift) <= 3 mass(chain), that the profile integral is at most
    (5/2) mass(boundary), and that the chosen boundary mass is at most
    5 mass(boundary)."""
    profile = threshold_profile(chain)
    theta, boundary_mass = profile.minimum()
    lifted = lift_top_threshold(chain, theta)
    if (lifted.mass_exact() - chain.mass_exact() * 3).sign() > 0:
        raise LiftError("mass bound 3x violated")
    b_mass = chain.boundary().mass_exact()
    if (profile.integral - b_mass * Fraction(5, 2)).sign() > 0:
        raise LiftError("profile integral bound (5/2)x violated")
    if (boundary_mass - b_mass * 5).sign() > 0:
        raise LiftError("boundary mass bound 5x violated")
    return theta, lifted, profile


# ---------------------------------------------------------------------------
# loop cancellation (bounded ratio 1 for 1-chains)


def _integral_boundary(chain: PolyChain) -> bool:
    return all(c.denominator == 1 for c in chain.boundary().terms.values())


def _find_cycle(frac_terms):
    """Deterministic cycle in the endpoint graph of the fractional edges.

    Every vertex of this graph has degree >= 2 (a degree-1 vertex would
    leave a fractional boundary multiplicity), so a cycle exists; DFS
    from the least vertex returns the first back edge's loop."""
    adj: dict = {}
    for s in frac_terms:
        a, b = s.vertices
        adj.setdefault(a, []).append((b, s))
        adj.setdefault(b, []).append((a, s))
    for v in adj:
        adj[v].sort(key=lambda t: t[0])
    root = min(adj)
    path = [(root, None)]
    in_path = {root: 0}
    iters = [iter(adj[root])]
    visited = {root}
    while iters:
        u = path[-1][0]
        advanced = False
        for w, s in iters[-1]:
            if len(path) >= 2 and w == path[-2][0]:
                continue
            if w in in_path:
                # back edge closes the loop
                start = in_path[w]
                cycle = [(path[i][0], path[i][1]) for i in range(start + 1, len(path))]
                cycle = [(w, None)] + cycle + [(w, s)]
                return cycle
            if w not in visited:
                visited.add(w)
                in_path[w] = len(path)
                path.append((w, s))
                iters.append(iter(adj[w]))
                advanced = True
                break
        if not advanced:
            vtx, _ = path.pop()
            del in_path[vtx]
            iters.pop()
    raise LiftError("fractional subgraph unexpectedly acyclic")


def loop_cancel(chain: PolyChain):
    """Cancel fractional parts of a 1-chain along loops without raising
    mass.  Requires every boundary multiplicity to be an integer.

    Returns (integral chain, LiftReport); boundary and complex tag are
    unchanged and every pass strictly shrinks the fractional edge set."""
    if chain.group.tag not in ("real", "integer"):
        raise LiftError("loop cancellation expects real coefficients")
    if chain.dim != 1:
        raise LiftError("loop cancellation is a 1-chain operation")
    if not _integral_boundary(chain):
        raise LiftError("boundary multiplicities are not integers")
    in_mass = chain.mass_exact()
    current = chain
    passes = 0
    limit = len(chain.terms) + 1
    while True:
        frac = {s: c for s, c in current.terms.items() if c.denominator != 1}
        if not frac:
            break
        if passes >= limit:
            raise LiftError("loop cancellation failed to terminate")
        cycle = _find_cycle(frac)
        edges = []
        verts = [v for v, _ in cycle]
        for i in range(1, len(cycle)):
            s = cycle[i][1]
            direction = 1 if verts[i - 1] == s.vertices[0] else -1
            edges.append((s, direction))
        swing = RadicalSum()
        theta_down = None
        theta_up = None
        for s, direction in edges:
            g = frac[s]
            eff = direction * g
            down = eff - floor(eff)
            up = 1 - down
            theta_down = down if theta_down is None else min(theta_down, down)
            theta_up = up if theta_up is None else min(theta_up, up)
            sgn = 1 if g > 0 else -1
            swing = swing + s.volume() * (direction * sgn)
        if swing.sign() >= 0:
            theta = theta_down
        else:
            theta = -theta_up
        delta = PolyChain.build(REAL, chain.ambient_dim, 1,
                                [(s.vertices, theta * direction) for s, direction in edges],
                                complex=current.complex)
        updated = current - delta
        if (updated.mass_exact() - current.mass_exact()).sign() > 0:
            raise LiftError("loop subtraction increased mass")
        current = updated
        passes += 1
    if current.boundary() != chain.boundary():
        raise LiftError("loop cancellation changed the boundary")
    if (current.mass_exact() - in_mass).sign() > 0:
        raise LiftError("loop cancellation increased mass")
    report = LiftReport(route="loop", d_used=1,
                        input_mass=float(in_mass),
                        output_mass=current.mass(),
                        guaranteed_ratio=1.0, passes=passes)
    return current, report


# ---------------------------------------------------------------------------
# codimension-one correction via grid fill


def fill_boundary(cycle: PolyChain) -> PolyChain:
    """The unique top-dimensional grid chain whose boundary is the given
    codimension-one cycle (coefficients in the circle group).

    Propagates cell values across interior faces from a root cell, pins
    the global constant at an outer face, then verifies the boundary
    identity exactly."""
    if cycle.group.tag != "circle":
        raise LiftError("fill expects circle coefficients")
    complex = cycle.complex
    if complex is None:
        raise LiftError("fill needs a complex-backed cycle")
    d = complex.ambient_dim
    if cycle.dim != d - 1:
        raise LiftError("fill expects a codimension-one chain")
    z = complex.chain_vector(cycle)
    cob = complex.coboundary(d - 1)
    n_top = complex.count(d)

    adjacency: list[list] = [[] for _ in range(n_top)]
    pin = None
    for face_id, cofs in enumerate(cob):
        if len(cofs) == 2:
            (c1, r1), (c2, r2) = cofs
            adjacency[c1].append((c2, face_id, r1, r2))
            adjacency[c2].append((c1, face_id, r2, r1))
        elif len(cofs) == 1 and pin is None:
            pin = (face_id, cofs[0])

    alpha = [None] * n_top
    beta = [0] * n_top
    alpha[0], beta[0] = Fraction(0), 1
    queue = [0]
    while queue:
        c1 = queue.pop()
        for c2, face_id, r1, r2 in adjacency[c1]:
            if alpha[c2] is not None:
                continue
            # r1*s1 + r2*s2 = z  =>  s2 = r2*(z - r1*s1)
            alpha[c2] = r2 * (z[face_id] - r1 * alpha[c1])
            beta[c2] = -r2 * r1 * beta[c1]
            queue.append(c2)
    if any(a is None for a in alpha):
        raise LiftError("dual graph is not connected")
    if pin is None:
        raise LiftError("no outer face to pin the constant")
    face_id, (c, r) = pin
    # r*(alpha + beta*s0) = z  =>  s0 = beta*(r*z - alpha)
    s0 = beta[c] * (r * z[face_id] - alpha[c])
    values = [CIRCLE.normalize(a + b * s0) for a, b in zip(alpha, beta)]
    fill = complex.chain_from_vector(CIRCLE, d, values)
    if fill.boundary() != cycle:
        raise LiftError("fill verification failed")
    return fill


def br_correct(chain: PolyChain, route: str = "auto"):
    """Make a real chain integral without changing its boundary.

    Requires the boundary to project to zero.  Routes: k = 1 goes through
    loop cancellation (ratio 1); k = d-1 fills the projected cycle on the
    grid, lifts the fill at the best threshold and subtracts its boundary
    (ratio 6).  Returns (corrected chain, ratio used)."""
    if chain.group.tag not in ("real", "integer"):
        raise LiftError("correction expects real coefficients")
    k, d = chain.dim, chain.ambient_dim
    if route == "auto":
        route = "loop" if k == 1 else ("fill" if k == d - 1 else "")
    if route == "loop":
        if k != 1:
            raise LiftError("loop route needs k = 1")
        corrected, _ = loop_cancel(chain)
        return corrected, 1
    if route == "fill":
        if k != d - 1:
            raise LiftError("fill route needs k = d - 1")
        projected = project_chain(chain)
        if not project_chain(chain.boundary()).is_zero():
            raise LiftError("boundary does not project to zero")
        if projected.is_zero():
            return chain, 6
        fill = fill_boundary(projected)
        _, lifted_fill, _ = lift_top_optimal(fill)
        corrected = chain - lifted_fill.boundary()
        if not project_chain(corrected).is_zero():
            raise LiftError("correction left fractional coefficients")
        if corrected.boundary() != chain.boundary():
            raise LiftError("correction changed the boundary")
        if (corrected.mass_exact() - chain.mass_exact() * 6).sign() > 0:
            raise LiftError("mass ratio 6 violated")
        return corrected, 6
    raise LiftError("unsupported dimension for bounded-ratio correction")


# ---------------------------------------------------------------------------
# assembled flat lift


def lift_flat(chain: PolyChain, epsilon=Fraction(1, 10)):
    """Lift a circle chain to a real chain that projects back exactly,
    with mass at most (2 + 2D)(1 + epsilon) times the input mass
    (D = 1 for curves, D = 6 in codimension one; extreme dimensions lift
    coefficient-wise at ratio 1)."""
    if chain.group.tag != "circle":
        raise LiftError("flat lift expects circle coefficients")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise LiftError("epsilon must be positive")
    k, d = chain.dim, chain.ambient_dim
    in_mass = chain.mass_exact()

    if k == 0 or k == d:
        lifted = lift_coefficientwise(chain)
        report = LiftReport(route="coefficientwise", d_used=0,
                            input_mass=float(in_mass),
                            output_mass=lifted.mass(),
                            guaranteed_ratio=1.0)
        return lifted, report

    if k != 1 and k != d - 1:
        raise LiftError("flat lift supports k in {0, 1, d-1, d}")
    if chain.complex is None:
        raise LiftError("flat lift needs a complex-backed chain")
    d_used = 1 if k == 1 else 6

    # T = rest + cycle part: rest keeps the boundary, so the coefficientwise
    # lift of (T - rest) has integral boundary and can be made integral by
    # the bounded-ratio correction; subtracting that correction from the
    # coefficientwise lift of T keeps the projection exactly T.
    whole = lift_coefficientwise(chain)
    if chain.boundary().is_zero():
        defect = whole
    else:
        if k == 1:
            rest, _ = disjoint_representative(chain, ApproxBudget(epsilon=epsilon))
        else:
            rest = chain
        defect = whole - lift_coefficientwise(rest)
    corrected, d_used = br_correct(defect, route="loop" if k == 1 else "fill")
    lifted = whole - corrected

    if project_chain(lifted) != chain:
        raise LiftError("flat lift failed to project back")
    ratio = (2 + 2 * d_used) * (1 + epsilon)
    if (lifted.mass_exact() - in_mass * ratio).sign() > 0:
        raise LiftError("flat lift mass bound violated")
    report = LiftReport(route="loop" if k == 1 else "fill", d_used=d_used,
                        input_mass=float(in_mass), output_mass=lifted.mass(),
                        guaranteed_ratio=float(ratio))
    return lifted, report
