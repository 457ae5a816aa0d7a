"""Shrink homotopy, singular translation, disjoint rebuild, telescoping."""

import math
from fractions import Fraction

import pytest

from polychain.approx import (ApproxBudget, ApproxError, cycle_extension,
                              disjoint_representative, measured_shrink_distance,
                              shrink_toward, singular_translate, telescope)
from polychain.chains import PolyChain
from polychain.gen import random_chain, random_cycle
from polychain.geometry import overlap_dim_at_least
from polychain.grid import grid_complex
from polychain.groups import REAL

F = Fraction
CENTER = (F(1, 2), F(1, 2))


def bottom_edge():
    cx = grid_complex(2, 1)
    verts = ((F(0), F(0)), (F(1), F(0)))
    return PolyChain.build(REAL, 2, 1, [(verts, F(1))], complex=cx)


def test_shrink_scales_mass_by_ratio_power_k():
    cx = grid_complex(2, 2)
    area = cx.full_chain(REAL)
    for lam in (F(1, 2), F(2, 3), F(9, 10)):
        image, _ = shrink_toward(area, CENTER, lam)
        assert (image.mass_exact() - area.mass_exact() * lam ** 2).is_zero()
        loop = area.boundary()
        img_loop, _ = shrink_toward(loop, CENTER, lam)
        assert (img_loop.mass_exact() - loop.mass_exact() * lam).is_zero()
        # the homothety commutes with the boundary
        assert image.boundary() == img_loop


def test_shrink_with_ratio_one_is_free():
    ch = bottom_edge()
    image, bound = shrink_toward(ch, CENTER, F(1))
    assert image == ch
    assert bound == 0.0


def test_unit_edge_half_shrink_bound_is_three_root_two():
    # frozen: 2 * (1/2) * sqrt(2) * (mass 1 + boundary mass 2)
    ch = bottom_edge()
    _, bound = shrink_toward(ch, CENTER, F(1, 2))
    assert abs(bound - 3 * math.sqrt(2)) < 1e-12


def test_shrink_validates_inputs():
    ch = bottom_edge()
    with pytest.raises(ApproxError):
        shrink_toward(ch, CENTER, F(0))
    with pytest.raises(ApproxError):
        shrink_toward(ch, CENTER, F(3, 2))
    with pytest.raises(ApproxError):
        shrink_toward(ch, (F(2), F(2)), F(1, 2))  # center outside the box


def test_singular_translate_clears_overlaps():
    ch = random_chain(11, 2, 2, 1, terms=5)
    reference = ch.mass_measure()
    moved = singular_translate(ch, reference, F(1, 8))
    assert (moved.mass_exact() - ch.mass_exact()).is_zero()
    carriers = [s for s, w in reference.entries if not w.is_zero()]
    for s in moved.terms:
        if s.is_degenerate():
            continue
        for ref in carriers:
            assert not overlap_dim_at_least(s, ref, 1)


def test_singular_translate_needs_positive_budget_and_low_dim():
    ch = random_chain(3, 2, 2, 1, terms=4)
    with pytest.raises(ApproxError):
        singular_translate(ch, ch.mass_measure(), F(0))
    top = grid_complex(2, 1).full_chain(REAL)
    with pytest.raises(ApproxError):
        singular_translate(top, top.mass_measure(), F(1, 4))


def test_disjoint_representative_contract():
    eps = F(1, 10)
    for seed in (0, 7):
        ch = random_chain(seed, 2, 2, 1, terms=5)
        rep, report = disjoint_representative(ch, ApproxBudget(epsilon=eps))
        assert rep.boundary() == ch.boundary()
        m = ch.mass_exact()
        bound = m * (1 + eps) + report.epsilon_terminal
        assert (bound - rep.mass_exact()).sign() >= 0
        assert (report.epsilon_terminal - m * F(1, 1000)).sign() <= 0
        assert report.identity_checked
        assert report.stage_count >= 1


def test_disjoint_representative_stage_pieces_avoid_carriers():
    ch = random_chain(5, 2, 2, 1, terms=4)
    _, report = disjoint_representative(ch)
    carriers = [s for s in ch.terms if not s.is_degenerate()]
    for record in report.stages:
        for s in record.piece.terms:
            if s.is_degenerate():
                continue
            for ref in carriers:
                assert not overlap_dim_at_least(s, ref, 1)


def test_disjoint_representative_of_a_cycle_is_one_stage():
    ch = random_cycle(2, 2, 2, 1)
    assert ch.boundary().is_zero()
    rep, report = disjoint_representative(ch)
    assert rep.boundary().is_zero()
    assert report.epsilon_terminal.is_zero()


def test_disjoint_representative_edge_cases():
    zero = PolyChain.zero(REAL, 2, 1, complex=grid_complex(2, 2))
    rep, report = disjoint_representative(zero)
    assert rep.is_zero() and report.stage_count == 0
    top = grid_complex(2, 1).full_chain(REAL)
    with pytest.raises(ApproxError):
        disjoint_representative(top)
    with pytest.raises(ApproxError):
        ch = random_chain(1, 2, 2, 1, terms=4)
        disjoint_representative(ch, ApproxBudget(max_stages=1))


def test_cycle_extension_contract():
    eps = F(1, 10)
    for seed in (4, 9):
        ch = random_chain(seed, 2, 2, 1, terms=5)
        cycle, carriers, defect, report = cycle_extension(ch, eps)
        assert cycle.boundary().is_zero()
        m = ch.mass_exact()
        bound = m * (2 + eps) + defect
        assert (bound - cycle.mass_exact()).sign() >= 0
        assert (defect - report.epsilon_terminal).sign() <= 0
        # on its own carriers the cycle reproduces the input up to the defect
        gap = (ch - cycle.restrict(carriers)).mass_exact()
        assert (gap - defect).sign() <= 0


def test_cycle_extension_rejects_points():
    ch = random_chain(0, 2, 2, 0, terms=3)
    with pytest.raises(ApproxError):
        cycle_extension(ch)


def test_telescope_reassembles_the_limit():
    cx = grid_complex(2, 1)
    loop = cx.full_chain(REAL).boundary()
    family = [loop.scale(1 - F(1, 2 ** h)) for h in range(5)]
    r, s, partials = telescope(family)
    replay = r + s.boundary() if not s.is_zero() else r
    assert replay == family[-1]
    assert len(partials) == len(family)
    assert partials[0] == 0.0


def test_telescope_rejects_slow_families():
    cx = grid_complex(2, 1)
    loop = cx.full_chain(REAL).boundary()
    zero = PolyChain.zero(REAL, 2, 1, complex=cx)
    with pytest.raises(ApproxError):
        telescope([zero, loop])  # flat distance 1 > 1/2
    with pytest.raises(ApproxError):
        telescope([])


def test_measured_shrink_distance_respects_the_bound():
    cx = grid_complex(2, 1)
    loop = cx.full_chain(REAL).boundary()
    lp, bound = measured_shrink_distance(loop, F(1, 2))
    assert lp <= bound + 1e-9
    edge = bottom_edge()
    lp2, bound2 = measured_shrink_distance(edge, F(1, 2))
    assert lp2 <= bound2 + 1e-9
    assert lp2 > 0
