from itertools import combinations
from math import factorial

import pytest

from csfkit.esym import ESym, is_e_positive, project
from csfkit.graphs import (
    BUDGET_ENV,
    EdgeListFormatError,
    Graph,
    OracleBudgetError,
    csf_oracle,
    csf_path,
    csf_spider_abc,
    csf_trinacria,
    cycle_graph,
    format_edge_list,
    parse_edge_list,
    path_graph,
    read_edge_list,
    spider_graph,
    trinacria_graph,
    verify_triple_deletion,
)


def complete_graph(n):
    return Graph.from_edges(n, combinations(range(n), 2))


def test_constructor_sizes():
    assert (path_graph(5).vertex_count, len(path_graph(5).edges)) == (5, 4)
    assert (cycle_graph(5).vertex_count, len(cycle_graph(5).edges)) == (5, 5)
    assert (spider_graph((3, 2, 1)).vertex_count, len(spider_graph((3, 2, 1)).edges)) == (7, 6)
    T = trinacria_graph(3, 1, 2)
    assert (T.vertex_count, len(T.edges)) == (9, 9)
    assert T.has_edge(0, 3) and T.has_edge(1, 6) and T.has_edge(2, 7)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        cycle_graph(2)
    with pytest.raises(ValueError):
        spider_graph((2, 0, 1))


def test_oracle_small_graphs():
    assert csf_oracle(Graph(0, frozenset())) == ESym.one()
    assert csf_oracle(Graph(3, frozenset())) == ESym.e(1, 1, 1)
    assert csf_oracle(path_graph(2)) == ESym.e(2, coeff=2)
    for n in range(1, 6):
        assert csf_oracle(complete_graph(n)) == ESym.e(n, coeff=factorial(n))


def test_oracle_is_multiplicative_on_disjoint_unions():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (3, 5)])
    assert csf_oracle(G) == csf_oracle(path_graph(3)) * csf_oracle(cycle_graph(3))


def test_claw_is_not_e_positive():
    assert is_e_positive(csf_oracle(spider_graph((1, 1, 1)))) == (False, ((2, 2), -2))


def test_path_formula_small():
    assert project(csf_path(3)) == ESym({(3,): 3, (2, 1): 1})
    assert csf_path(3)[(1, 2)] == 1 and (2, 1) not in csf_path(3)
    for n in range(0, 9):
        assert project(csf_path(n)) == csf_oracle(path_graph(n))


def test_spider_formula_against_oracle():
    for legs in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (2, 2, 2)]:
        assert csf_spider_abc(*legs) == csf_oracle(spider_graph(legs))
    assert csf_spider_abc(1, 3, 2) == csf_spider_abc(3, 2, 1)


def test_trinacria_formula_against_oracle():
    for legs in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (2, 2, 2)]:
        assert csf_trinacria(*legs) == csf_oracle(trinacria_graph(*legs))


def test_trinacria_formula_rejects_empty_legs():
    with pytest.raises(ValueError):
        csf_trinacria(2, 1, 0)


def test_known_non_e_positive_trinacrias():
    assert is_e_positive(csf_oracle(trinacria_graph(1, 1, 1))) == (False, ((3, 3), -6))
    assert is_e_positive(csf_oracle(trinacria_graph(2, 2, 2))) == (False, ((4, 4, 1), -6))


def test_triple_deletion_on_a_cycle_with_pendant():
    G = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)])
    cache = {}
    for triple in combinations(range(6), 3):
        if G.is_stable(triple):
            a, b, c = triple
            for rot in ((a, b, c), (b, c, a), (c, a, b)):
                assert verify_triple_deletion(G, *rot, cache=cache)


def test_triple_deletion_requires_stable_triple():
    with pytest.raises(ValueError):
        verify_triple_deletion(path_graph(4), 0, 1, 3)
    with pytest.raises(ValueError):
        verify_triple_deletion(path_graph(4), 0, 0, 2)


def test_oracle_budget_refusal(monkeypatch):
    with pytest.raises(OracleBudgetError):
        csf_oracle(cycle_graph(8), budget=2**7)
    monkeypatch.setenv(BUDGET_ENV, "16")
    with pytest.raises(OracleBudgetError):
        csf_oracle(path_graph(6))
    monkeypatch.setenv(BUDGET_ENV, "lots")
    with pytest.raises(OracleBudgetError):
        csf_oracle(path_graph(2))


def test_edge_list_round_trip(tmp_path):
    T = trinacria_graph(2, 1, 1)
    text = format_edge_list(T)
    assert parse_edge_list(text) == T
    path = tmp_path / "t.txt"
    path.write_text("# a comment\n" + text)
    assert read_edge_list(path) == T


@pytest.mark.parametrize(
    "text",
    ["", "3 4\n", "x\n", "3\n0\n", "3\n0 5\n", "3\n1 1\n", "3\n0 1\n1 0\n", "3\n0 a\n"],
)
def test_edge_list_errors(text):
    with pytest.raises(EdgeListFormatError):
        parse_edge_list(text)
