import math

import numpy as np
import pytest

from hoggar import (
    InvalidArgumentError,
    NotADesignError,
    StateSet,
    ZeroBlockDesign,
    block_translation_check,
    difference_set_check,
    frame_potential,
    haar_moment,
    is_t_design,
    random_pure_state,
    verify_symmetric_design,
    zero_blocks,
)


def test_haar_moment_closed_form():
    assert haar_moment(8, 1) == pytest.approx(1 / 8, abs=1e-16)
    assert haar_moment(8, 2) == pytest.approx(1 / 36, abs=1e-16)
    assert haar_moment(8, 3) == pytest.approx(1 / 120, abs=1e-16)
    assert haar_moment(2, 2) == pytest.approx(1 / 3, abs=1e-16)


def test_haar_moment_monte_carlo(rng):
    # one-off sampling oracle for the closed form
    n = 200000
    a = random_pure_state(8, rng, size=n)
    b = random_pure_state(8, rng, size=n)
    u = np.abs(np.einsum("ni,ni->n", a.conj(), b)) ** 2
    mc = (u**2).mean()
    se = (u**2).std(ddof=1) / math.sqrt(n)
    assert abs(mc - haar_moment(8, 2)) <= 3 * se


def test_frame_potentials_hoggar(hoggar_v):
    s = StateSet.from_family(hoggar_v)
    assert frame_potential(s, 1) == pytest.approx(1 / 8, abs=1e-14)
    assert frame_potential(s, 2) == pytest.approx(1 / 36, abs=1e-14)
    expected_t3 = 1 / 64 + (63 / 64) * (1 / 9) ** 3
    assert frame_potential(s, 3) == pytest.approx(expected_t3, abs=1e-14)
    assert frame_potential(s, 3) > haar_moment(8, 3) + 1e-3


def test_is_t_design(hoggar_v, tetra_v):
    assert is_t_design(StateSet.from_family(hoggar_v), 2)
    assert not is_t_design(StateSet.from_family(hoggar_v), 3)
    assert is_t_design(StateSet.from_family(tetra_v), 2)


def test_welch_lower_bound_random_sets(rng):
    for _ in range(100):
        vectors = random_pure_state(8, rng, size=64)
        s = StateSet(vectors=vectors, d=8)
        for t in (1, 2, 3):
            assert frame_potential(s, t) >= haar_moment(8, t) - 1e-12


def test_zero_blocks_basic(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    assert design.params == (64, 28, 12)
    assert all(len(b) == 28 for b in design.blocks)
    # B_00 is exactly the -1 pattern of the Sylvester matrix
    signs = hoggar_v.hadamard.signs
    expected = {i * 8 + k for i in range(8) for k in range(8) if signs[i, k] == -1}
    assert set(design.blocks[0]) == expected
    # block (mu, nu) never contains the point (mu, nu)
    assert all(label not in design.blocks[label] for label in range(64))


def test_zero_blocks_threshold_stability(hoggar_v, hoggar_vbar):
    a = zero_blocks(hoggar_v, hoggar_vbar, threshold=1e-10)
    b = zero_blocks(hoggar_v, hoggar_vbar, threshold=1e-6)
    assert a.blocks == b.blocks


def test_zero_blocks_rejects_wrong_dimension(tetra_v, tetra_vbar):
    with pytest.raises(InvalidArgumentError):
        zero_blocks(tetra_v, tetra_vbar)


def test_membership_criterion_equivalence(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    signs = hoggar_v.hadamard.signs
    for label, members in enumerate(design.blocks):
        mu, nu = label // 8, label % 8
        expected = {
            i * 8 + k for i in range(8) for k in range(8) if signs[mu ^ i, nu ^ k] == -1
        }
        assert set(members) == expected


def test_verify_symmetric_design(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    report = verify_symmetric_design(design)
    assert report.passed
    assert report.block_size == 28
    assert report.replication == 28
    assert report.point_pair_count == 12
    assert report.block_pair_count == 12


def test_verify_symmetric_design_mutation(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    blocks = [list(b) for b in design.blocks]
    blocks[5] = blocks[5][:-1]  # delete one point from one block
    mutated = ZeroBlockDesign(blocks=tuple(tuple(b) for b in blocks), params=design.params)
    report = verify_symmetric_design(mutated)
    assert not report.passed
    assert "size" in report.counterexample


def test_zero_blocks_not_a_design_error():
    # v = -3 also zeroes the whole same-row stripe, which breaks the constant
    # pairwise intersection; the error carries the offending block pair
    from hoggar import conjugate_set, hadamard_sic_family, sylvester_hadamard

    fam = hadamard_sic_family(sylvester_hadamard(3), -3.0)
    with pytest.raises(NotADesignError) as excinfo:
        zero_blocks(fam, conjugate_set(fam))
    assert excinfo.value.offending is not None


def test_difference_set_development(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    report = difference_set_check(design.blocks[0])
    assert report.passed
    assert report.min_count == report.max_count == 12


def test_difference_set_degenerate_cases():
    empty = difference_set_check([])
    assert not empty.passed and empty.max_count == 0
    full = difference_set_check(range(64))
    assert not full.passed and full.max_count == 64


def test_block_translation(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    assert block_translation_check(design)
    shuffled = ZeroBlockDesign(
        blocks=tuple(design.blocks[(i + 1) % 64] for i in range(64)), params=design.params
    )
    assert not block_translation_check(shuffled)


def test_point_and_block_regularity_agree(hoggar_v, hoggar_vbar):
    design = zero_blocks(hoggar_v, hoggar_vbar)
    inc = design.incidence()
    off = ~np.eye(64, dtype=bool)
    assert set(np.unique((inc @ inc.T)[off])) == {12}
    assert set(np.unique((inc.T @ inc)[off])) == {12}


def test_state_set_validation(rng):
    with pytest.raises(InvalidArgumentError):
        StateSet(vectors=2 * random_pure_state(4, rng, size=3), d=4)
