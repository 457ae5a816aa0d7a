"""Flat norm of grid chains via linear programming, with witnesses.

For a k-chain P on a grid complex the flat norm is

    min  mass(R) + mass(Q)   over decompositions  P = R + boundary(Q)

with R a k-chain and Q a (k+1)-chain on the same complex.  In equality
form the program is

    min  sum vol_k |r| + sum vol_{k+1} |q|   s.t.   r + B q = p

split into nonnegative parts, where B is the signed incidence matrix.
The sign-adjusted slack columns of r give a starting identity basis, so
the solvers never need a phase-1.

Two deliberately independent routes:

* ``flat_norm``: float simplex; the filling is snapped to small rationals
  and the residual recomputed exactly, so the returned witness satisfies
  R + boundary(Q) = P as an exact chain identity.
* ``flat_norm_oracle``: exact simplex over Fractions with exact volume
  objective, plus a from-scratch optimality certificate on the raw data.

Coefficients must be real (integers are taken as reals); witnesses are
real chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import simplex_lp
from .chains import ChainError, PolyChain
from .groups import REAL
from .radicals import RadicalSum


class CertificateError(Exception):
    """The exact route produced a basis its own referee rejects."""


@dataclass
class FlatWitness:
    value: float
    value_exact: RadicalSum | None
    residual: PolyChain
    filling: PolyChain

    def mass_exact(self) -> RadicalSum:
        return self.residual.mass_exact() + self.filling.mass_exact()


def _require_real(chain: PolyChain):
    if chain.complex is None:
        raise ChainError("flat norm needs a complex-backed chain")
    if chain.group.tag not in ("real", "integer"):
        raise ChainError("flat norm is defined for real or integer coefficients")


def _problem_shape(chain: PolyChain):
    complex = chain.complex
    k = chain.dim
    d = complex.ambient_dim
    nr = complex.count(k)
    nq = complex.count(k + 1) if k < d else 0
    p = complex.chain_vector(chain)
    inc = complex.incidence(k + 1) if nq else ()
    signs = [1 if v >= 0 else -1 for v in p]
    basis = [i if p[i] >= 0 else nr + i for i in range(nr)]
    return k, nr, nq, p, inc, signs, basis


def _witness_chains(chain: PolyChain, r_vec, q_vec, nq: int) -> tuple[PolyChain, PolyChain]:
    complex = chain.complex
    k = chain.dim
    residual = complex.chain_from_vector(REAL, k, r_vec)
    if nq:
        filling = complex.chain_from_vector(REAL, k + 1, q_vec)
    else:
        filling = PolyChain.zero(REAL, chain.ambient_dim, k + 1)
    return residual, filling


def _replay_ok(chain: PolyChain, residual: PolyChain, filling: PolyChain) -> bool:
    total = residual + filling.boundary() if not filling.is_zero() else residual
    reference = chain if chain.group is REAL else \
        PolyChain(REAL, chain.ambient_dim, chain.dim,
                  {s: Fraction(c) for s, c in chain.terms.items()}, chain.complex)
    return total.terms == reference.terms


def flat_norm(chain: PolyChain, snap_denominator: int = 10 ** 6) -> FlatWitness:
    """Float-route flat norm with an exactly replaying witness."""
    _require_real(chain)
    k, nr, nq, p, inc, signs, basis = _problem_shape(chain)
    complex = chain.complex

    ncols = 2 * nr + 2 * nq
    a = np.zeros((nr, ncols))
    for i in range(nr):
        a[i, i] = signs[i]
        a[i, nr + i] = -signs[i]
    for j, row in enumerate(inc):
        for face, sign in row:
            v = signs[face] * sign
            a[face, 2 * nr + j] = v
            a[face, 2 * nr + nq + j] = -v
    b = np.array([abs(float(v)) for v in p])
    vol_r = [float(s.volume()) for s in complex.simplices(k)]
    vol_q = [float(s.volume()) for s in complex.simplices(k + 1)] if nq else []
    c = np.array(vol_r + vol_r + vol_q + vol_q)

    x, obj, _ = simplex_lp.solve_float(a, b, c, basis)

    q_vec = [Fraction(x[2 * nr + j] - x[2 * nr + nq + j]).limit_denominator(snap_denominator)
             for j in range(nq)]
    r_vec = [Fraction(v) for v in p]
    for j, qj in enumerate(q_vec):
        if qj:
            for face, sign in inc[j]:
                r_vec[face] -= sign * qj
    residual, filling = _witness_chains(chain, r_vec, q_vec, nq)
    if not _replay_ok(chain, residual, filling):
        raise ChainError("flat norm witness failed to replay")
    return FlatWitness(value=obj, value_exact=None, residual=residual, filling=filling)


def flat_norm_oracle(chain: PolyChain) -> FlatWitness:
    """Exact-route flat norm: Fraction tableau, radical objective row, and
    an independent optimality certificate recomputed from the raw data."""
    _require_real(chain)
    k, nr, nq, p, inc, signs, basis = _problem_shape(chain)
    complex = chain.complex

    ncols = 2 * nr + 2 * nq
    zero = Fraction(0)
    a_rows = [[zero] * ncols for _ in range(nr)]
    for i in range(nr):
        a_rows[i][i] = Fraction(signs[i])
        a_rows[i][nr + i] = Fraction(-signs[i])
    for j, row in enumerate(inc):
        for face, sign in row:
            v = Fraction(signs[face] * sign)
            a_rows[face][2 * nr + j] = v
            a_rows[face][2 * nr + nq + j] = -v
    b = [abs(Fraction(v)) for v in p]
    vol_r = [s.volume() for s in complex.simplices(k)]
    vol_q = [s.volume() for s in complex.simplices(k + 1)] if nq else []
    c = vol_r + vol_r + list(vol_q) + list(vol_q)

    x, obj, final_basis = simplex_lp.solve_exact(a_rows, b, c, basis)
    if not simplex_lp.check_certificate(a_rows, b, c, final_basis):
        raise CertificateError("exact flat norm basis failed its optimality certificate")

    r_vec = [x[i] - x[nr + i] for i in range(nr)]
    q_vec = [x[2 * nr + j] - x[2 * nr + nq + j] for j in range(nq)]
    residual, filling = _witness_chains(chain, r_vec, q_vec, nq)
    if not _replay_ok(chain, residual, filling):
        raise ChainError("oracle witness failed to replay")
    return FlatWitness(value=float(obj), value_exact=obj, residual=residual, filling=filling)


def flat_distance(a: PolyChain, b: PolyChain, exact: bool = False) -> FlatWitness:
    """Flat norm of a - b; both chains must live on one complex."""
    diff = a - b
    if diff.complex is None:
        raise ChainError("flat distance needs both chains on one complex")
    return flat_norm_oracle(diff) if exact else flat_norm(diff)
