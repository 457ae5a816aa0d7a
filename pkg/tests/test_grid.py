"""Kuhn grid complexes: frozen counts, incidence, exact re-embedding."""

from fractions import Fraction

import pytest

from polychain.chains import PolyChain
from polychain.grid import GridError, embed_on, grid_complex
from polychain.groups import INTEGER, REAL

F = Fraction


def test_counts_d2_single_cube():
    # frozen: unit square cut along one diagonal
    cx = grid_complex(2, 1)
    assert [cx.count(k) for k in range(3)] == [4, 5, 2]


def test_counts_d3_single_cube():
    # frozen: 6 path simplices through the cube, Euler characteristic 1
    cx = grid_complex(3, 1)
    counts = [cx.count(k) for k in range(4)]
    assert counts == [8, 19, 18, 6]
    assert counts[0] - counts[1] + counts[2] - counts[3] == 1


def test_counts_scale_with_resolution():
    cx = grid_complex(2, 3)
    assert cx.count(0) == 16
    assert cx.count(2) == 18
    euler = cx.count(0) - cx.count(1) + cx.count(2)
    assert euler == 1


def test_dimension_and_resolution_validation():
    with pytest.raises(GridError):
        grid_complex(4, 1)
    with pytest.raises(GridError):
        grid_complex(2, 0)


def test_incidence_squares_to_zero():
    for d, n in ((2, 2), (3, 1)):
        cx = grid_complex(d, n)
        for k in range(2, d + 1):
            rows = cx.incidence(k)
            below = cx.incidence(k - 1)
            for i in range(cx.count(k)):
                acc = {}
                for face, sign in rows[i]:
                    for sub, sub_sign in below[face]:
                        acc[sub] = acc.get(sub, 0) + sign * sub_sign
                assert all(v == 0 for v in acc.values())


def test_full_chain_boundary_is_the_box_boundary():
    for d in (2, 3):
        cx = grid_complex(d, 2)
        bdry = cx.full_chain(REAL).boundary()
        # mass = surface area of the unit box: 4 in 2d, 6 in 3d
        assert bdry.mass_exact().as_rational() == 2 * d
        assert bdry.boundary().is_zero()


def test_cube_chain_is_positively_oriented():
    cx = grid_complex(2, 2)
    cell = cx.cube_chain(REAL, (0, 1))
    assert cell.mass_exact().as_rational() == F(1, 4)
    bdry = cell.boundary()
    assert bdry.mass_exact().as_rational() == 2  # perimeter of one 1/2-cell
    # canonical storage folds orientation into the sign, never the magnitude
    assert all(c in (1, -1) for c in cell.terms.values())
    # the full chain is the sum of its positively oriented cells
    total = cx.full_chain(REAL)
    acc = None
    for cube in cx.cubes():
        piece = cx.cube_chain(REAL, cube)
        acc = piece if acc is None else acc + piece
    assert acc == total


def test_chain_vector_round_trip():
    cx = grid_complex(2, 1)
    full = cx.full_chain(INTEGER)
    vec = cx.chain_vector(full)
    assert sorted(abs(c) for c in vec) == [1, 1]
    back = cx.chain_from_vector(INTEGER, 2, vec)
    assert back == full


def test_diameter_and_bbox():
    cx = grid_complex(2, 2)
    assert (cx.diameter() * cx.diameter()).as_rational() == 2
    lo, hi = cx.bbox()
    assert lo == (0, 0)
    assert hi == (1, 1)


def test_embed_on_refinement_preserves_chain_data():
    coarse = grid_complex(2, 1)
    fine = grid_complex(2, 2)
    loop = coarse.full_chain(REAL).boundary()
    lifted = embed_on(fine, loop)
    assert lifted.complex is fine
    assert (lifted.mass_exact() - loop.mass_exact()).is_zero()
    assert lifted.boundary().is_zero()

    area = coarse.full_chain(REAL)
    lifted_area = embed_on(fine, area)
    assert (lifted_area.mass_exact() - area.mass_exact()).is_zero()
    assert (lifted_area.boundary().mass_exact()
            - area.boundary().mass_exact()).is_zero()


def test_embed_on_3d_refinement():
    coarse = grid_complex(3, 1)
    fine = grid_complex(3, 2)
    solid = coarse.full_chain(REAL)
    lifted = embed_on(fine, solid)
    assert (lifted.mass_exact() - solid.mass_exact()).is_zero()
    assert lifted.boundary().mass_exact().as_rational() == 6


def test_embed_on_rejects_unaligned_chains():
    fine = grid_complex(2, 3)
    off = PolyChain.build(REAL, 2, 1,
                          [(((F(0), F(0)), (F(1, 2), F(0))), F(1))])
    with pytest.raises(GridError):
        embed_on(fine, off)


def test_embed_on_identity_when_same_complex():
    cx = grid_complex(2, 2)
    ch = cx.full_chain(REAL)
    assert embed_on(cx, ch) == ch


def test_simplex_lookup_round_trip():
    cx = grid_complex(3, 1)
    for k in range(4):
        for i in range(cx.count(k)):
            s = cx.simplex(k, i)
            assert cx.index_of(k, s) == i
            assert cx.contains(s)
