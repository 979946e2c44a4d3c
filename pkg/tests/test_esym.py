import json
from fractions import Fraction

import pytest

from csfkit.esym import (
    CompExpansion,
    ESym,
    coeff_partition,
    coeff_set,
    format_coeff,
    is_e_positive,
    power_to_elementary,
    project,
)


def test_keys_are_sorted_into_partitions():
    g = ESym({(1, 2): 3, (2, 1): 1})
    assert g[(2, 1)] == 4
    assert len(g) == 1


def test_zero_coefficients_dropped():
    g = ESym.e(2, 1) - ESym.e(2, 1)
    assert g.is_zero() and len(g) == 0 and g == 0


def test_mixed_degrees_rejected():
    with pytest.raises(ValueError):
        ESym({(2,): 1, (1,): 1})
    with pytest.raises(ValueError):
        ESym.e(2) + ESym.e(3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        ESym({(2,): 0.5})
    with pytest.raises(TypeError):
        ESym.e(2).scale(1.5)


def test_fractions_normalise_to_int():
    g = ESym({(2,): Fraction(4, 2)})
    assert type(g[(2,)]) is int


def test_partition_and_composition_kinds_do_not_mix():
    with pytest.raises(TypeError):
        ESym.e(2) + CompExpansion.e(2)


def test_multiplication_is_commutative_for_partitions_only():
    a, b = ESym.e(2), ESym.e(1)
    assert a * b == b * a == ESym.e(2, 1)
    A, B = CompExpansion.e(2), CompExpansion.e(1)
    assert A * B != B * A
    assert project(A * B) == project(B * A)


def test_power_sums_in_e_basis():
    assert power_to_elementary((1,)) == ESym.e(1)
    assert power_to_elementary((2,)) == ESym({(1, 1): 1, (2,): -2})
    assert power_to_elementary((2, 1)) == ESym({(1, 1, 1): 1, (2, 1): -2})
    assert power_to_elementary((3,)) == ESym({(1, 1, 1): 1, (2, 1): -3, (3,): 3})


def test_positivity_witness_is_smallest_negative_partition():
    g = ESym({(3, 1): -1, (2, 2): -2, (4,): 5})
    assert is_e_positive(g) == (False, ((2, 2), -2))
    assert is_e_positive(ESym.e(4)) == (True, None)
    assert is_e_positive(ESym.zero(4)) == (True, None)


def test_projection_merges_rearrangements():
    a, b, c = 2, 5, Fraction(1, 3)
    f = CompExpansion({(2, 1, 1): a, (1, 2, 1): b, (1, 3): c})
    g = project(f)
    assert g == ESym({(2, 1, 1): a + b, (3, 1): c})
    assert coeff_partition(g, (1, 1, 2)) == a + b
    assert coeff_set(f, [(2, 1, 1), (1, 2, 1), (2, 1, 1)]) == a + b


def test_json_round_trip_and_layout():
    g = ESym({(3,): Fraction(1, 2), (2, 1): -4})
    obj = json.loads(g.to_json())
    assert obj == {
        "degree": 3,
        "basis": "e",
        "indexing": "partition",
        "terms": [{"index": [3], "coeff": "1/2"}, {"index": [2, 1], "coeff": "-4/1"}],
    }
    assert ESym.from_json_obj(obj) == g
    with pytest.raises(ValueError):
        CompExpansion.from_json_obj(obj)


def test_json_output_is_deterministic():
    g1 = ESym({(3,): 1, (2, 1): 2, (1, 1, 1): 3})
    g2 = ESym({(1, 1, 1): 3, (2, 1): 2, (3,): 1})
    assert g1.to_json() == g2.to_json()


def test_table_format():
    assert ESym({(3,): 3, (2, 1): 1}).format_table() == "3 e[3] + 1 e[2,1]"
    assert ESym({(2,): -1, (1, 1): Fraction(1, 2)}).format_table() == "-1 e[2] + 1/2 e[1,1]"
    assert ESym.zero(2).format_table() == "0"


def test_table_elides_long_expansions():
    g = ESym({(6,): 1, (5, 1): 1, (4, 2): 1, (3, 3): 1})
    text = g.format_table(cap=2)
    assert text.endswith("(2 more terms, 4 total)")


def test_coefficient_formatting():
    assert format_coeff(Fraction(6, 1)) == "6"
    assert format_coeff(Fraction(-1, 3)) == "-1/3"
