"""Dense simplex solvers for equality-form linear programs.

    minimize c . x   subject to   A x = b,  x >= 0

Callers supply a starting basis whose columns form an identity in A and a
nonnegative right-hand side, so no phase-1 is ever needed (the flat-norm
programs always have one:  split slack columns indexed by the sign of b).

Two independent routes:

* ``solve_float``: numpy tableau, Bland's rule, fixed pivot tolerance.
* ``solve_exact``: Fraction tableau with an ordered-field objective row
  (entries may be RadicalSum), so degeneracy and optimality tests are exact.

``check_certificate`` re-derives optimality of a basis from the raw data
(basic solution feasible, all reduced costs nonnegative) without reusing
any solver state; it is the referee between the two routes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .radicals import RadicalSum


class LPError(Exception):
    pass


class Unbounded(LPError):
    pass


class PivotLimit(LPError):
    pass


_MAX_PIVOTS = 200000


def solve_float(a, b, c, basis, tol=1e-9):
    """Returns (x, objective, basis). `a[:, basis]` must be the identity."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    m, n = a.shape
    if m and b.min() < -tol:
        raise LPError("negative right-hand side; basis is not feasible")
    basis = list(basis)
    t = np.empty((m, n + 1))
    t[:, :n] = a
    t[:, n] = b
    z = c - c[basis] @ t[:, :n]

    for _ in range(_MAX_PIVOTS):
        entering = -1
        for j in range(n):
            if z[j] < -tol:
                entering = j
                break
        if entering < 0:
            break
        col = t[:, entering]
        best = -1
        best_ratio = None
        for i in range(m):
            if col[i] > tol:
                ratio = t[i, n] / col[i]
                if best < 0 or ratio < best_ratio - tol or (
                        abs(ratio - best_ratio) <= tol and basis[i] < basis[best]):
                    best, best_ratio = i, ratio
        if best < 0:
            raise Unbounded("objective unbounded below")
        piv = t[best, entering]
        t[best] /= piv
        for i in range(m):
            if i != best and t[i, entering] != 0.0:
                t[i] -= t[i, entering] * t[best]
        z = z - z[entering] * t[best, :n]
        basis[best] = entering
    else:
        raise PivotLimit("pivot limit reached")

    x = np.zeros(n)
    x[basis] = t[:, n]
    return x, float(c @ x), basis


def _rad(v) -> RadicalSum:
    return v if isinstance(v, RadicalSum) else RadicalSum.from_rational(v)


def solve_exact(a_rows, b, c, basis):
    """Exact twin of solve_float.

    a_rows/b carry Fractions; c entries may be Fractions or RadicalSums.
    Returns (x, objective, basis) with x a list of Fractions and the
    objective a RadicalSum.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    for v in b:
        if v < 0:
            raise LPError("negative right-hand side; basis is not feasible")
    basis = list(basis)
    t = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a_rows, b)]
    c = [_rad(v) for v in c]
    z = list(c)
    for i, bi in enumerate(basis):
        cb = c[bi]
        if not cb.is_zero():
            row = t[i]
            z = [zj - cb * row[j] for j, zj in enumerate(z[:n])]

    for _ in range(_MAX_PIVOTS):
        entering = -1
        for j in range(n):
            if z[j].sign() < 0:
                entering = j
                break
        if entering < 0:
            break
        best = -1
        best_ratio = None
        for i in range(m):
            aij = t[i][entering]
            if aij > 0:
                ratio = t[i][n] / aij
                if best < 0 or ratio < best_ratio or (
                        ratio == best_ratio and basis[i] < basis[best]):
                    best, best_ratio = i, ratio
        if best < 0:
            raise Unbounded("objective unbounded below")
        piv = t[best][entering]
        if piv != 1:
            t[best] = [v / piv for v in t[best]]
        prow = t[best]
        for i in range(m):
            if i != best:
                f = t[i][entering]
                if f:
                    t[i] = [v - f * w for v, w in zip(t[i], prow)]
        ze = z[entering]
        if not ze.is_zero():
            z = [zj - ze * prow[j] for j, zj in enumerate(z[:n])]
        basis[best] = entering
    else:
        raise PivotLimit("pivot limit reached")

    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = t[i][n]
    obj = RadicalSum()
    for j, v in enumerate(x):
        if v:
            obj = obj + c[j] * v
    return x, obj, basis


def solve_square(a_rows, rhs):
    """Gaussian solve with Fraction pivots; rhs entries form a Fraction
    vector space (Fractions or RadicalSums).  Raises LPError if singular."""
    n = len(a_rows)
    a = [list(map(Fraction, row)) for row in a_rows]
    r = list(rhs)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise LPError("singular basis matrix")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            r[col], r[piv] = r[piv], r[col]
        pv = a[col][col]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                r[i] = r[i] - r[col] * f
    out = []
    for i in range(n):
        pv = a[i][i]
        ri = r[i]
        out.append(ri / pv if isinstance(ri, (int, Fraction)) else ri * (Fraction(1) / pv))
    return out


def check_certificate(a_rows, b, c, basis) -> bool:
    """Independent exact optimality proof for a basis of min c.x, Ax=b, x>=0.

    Recomputes everything from the raw data: solves for the basic solution
    (must be feasible) and the dual vector, then checks every reduced cost.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    basis = list(basis)
    if len(basis) != m or len(set(basis)) != m:
        return False
    c = [_rad(v) for v in c]
    bmat = [[a_rows[i][j] for j in basis] for i in range(m)]
    try:
        xb = solve_square(bmat, [Fraction(v) for v in b])
    except LPError:
        return False
    if any(v < 0 for v in xb):
        return False
    bt = [[bmat[i][j] for i in range(m)] for j in range(m)]
    y = solve_square(bt, [c[j] for j in basis])
    for j in range(n):
        reduced = c[j]
        for i in range(m):
            aij = a_rows[i][j]
            if aij:
                reduced = reduced - y[i] * aij
        if reduced.sign() < 0:
            return False
    return True
