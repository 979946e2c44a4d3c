from fractions import Fraction

import pytest

from csfkit.esym import is_e_positive, project
from csfkit.graphs import csf_oracle, trinacria_graph
from csfkit.trinacria import (
    compute_Y0,
    compute_Y0_expanded,
    compute_Y1,
    compute_Y2,
    decompose,
    f_coeff,
    outside_K0,
    r,
    reconstruct,
    suffix_split,
    target_csf,
    y0_integrality_defects,
    y1_parts,
    y2_sum,
)


def test_r_values_lie_in_half_open_interval():
    assert r(2) == 2 and r(3) == Fraction(3, 2)
    assert all(1 < r(i) <= 2 for i in range(2, 40))
    with pytest.raises(ValueError):
        r(1)


def test_suffix_split():
    assert suffix_split((5, 2, 2), 4) == ((5,), (2, 2))
    assert suffix_split((5, 2, 2), 3) is None
    assert suffix_split((5, 2, 2), 0) == ((5, 2, 2), ())


def test_f_examples():
    assert f_coeff((9,), 1) == Fraction(9, 4)
    assert f_coeff((5, 4), 1) == Fraction(-5, 2)
    assert f_coeff((2, 7), 1) == Fraction(26, 3)


def test_f_rejects_wrong_size_or_parts():
    with pytest.raises(ValueError):
        f_coeff((8,), 1)
    with pytest.raises(ValueError):
        f_coeff((1, 8), 1)
    with pytest.raises(ValueError):
        f_coeff((9,), 0)


def test_piece_coefficients_for_smallest_b():
    assert compute_Y2(1)[(7,)] == 12
    assert compute_Y2(1)[(2, 5)] == 12
    assert compute_Y1(1)[(8,)] == 30
    assert compute_Y1(1)[(2, 6)] == 46
    assert compute_Y0(1)[(5, 4)] == -30
    assert compute_Y0(1)[(9,)] == 18


def test_piece_degrees():
    for b in (1, 3):
        assert compute_Y2(b).degree == 2 * b + 5
        assert compute_Y1(b).degree == 2 * b + 6
        assert compute_Y0(b).degree == 2 * b + 7
        assert all(min(K) >= 2 for K in compute_Y0(b))


def test_y1_parts_sum_to_y1():
    parts = y1_parts(3)
    assert parts.total() == compute_Y1(3)


def test_y2_without_chi_bonus_differs():
    assert y2_sum(3) == compute_Y2(3)
    assert y2_sum(3, chi_weight=0) != compute_Y2(3)


def test_y0_two_routes_agree():
    for b in range(1, 6):
        assert compute_Y0(b) == compute_Y0_expanded(b)


def test_y0_coefficients_are_integers():
    for b in range(1, 6):
        assert y0_integrality_defects(b) == []


def test_outside_K0_has_nonnegative_f():
    for b in (1, 2, 3):
        for K in compute_Y0(b):
            if outside_K0(K, b):
                assert f_coeff(K, b) >= 0


def test_reconstruction_matches_oracle():
    for b in (1, 2, 3):
        assert reconstruct(b) == csf_oracle(trinacria_graph(b + 2, b, 2))


def test_reconstruction_matches_formula():
    for b in range(1, 8):
        assert decompose(b).assemble() == target_csf(b)


def test_pieces_are_e_positive_but_not_coefficientwise():
    # Y0 has negative composition coefficients that only cancel after projection.
    assert any(c < 0 for _, c in compute_Y0(2).items())
    for b in (1, 2, 3):
        assert is_e_positive(project(compute_Y0(b)))[0]
        assert is_e_positive(target_csf(b))[0]


def test_b_must_be_positive():
    for fn in (compute_Y2, compute_Y1, compute_Y0, decompose):
        with pytest.raises(ValueError):
            fn(0)
