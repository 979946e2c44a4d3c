from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings, strategies as st

from csfkit.compositions import enumerate_compositions, enumerate_no_ones, has_prefix, has_suffix, w_prime, w_weight
from csfkit.esym import CompExpansion, ESym, project
from csfkit.graphs import Graph, csf_oracle, csf_spider_abc, spider_graph

coeffs = st.one_of(st.integers(-20, 20), st.fractions(max_denominator=6).filter(lambda q: abs(q) < 20))


def comps_of(n):
    return st.sampled_from(enumerate_compositions(n))


def comp_expansion(n):
    return st.dictionaries(comps_of(n), coeffs, max_size=5).map(lambda d: CompExpansion(d, degree=n))


compositions = st.lists(st.integers(1, 7), min_size=0, max_size=6).map(tuple)


@given(comp_expansion(3), comp_expansion(4))
def test_projection_is_multiplicative(f, g):
    assert project(f * g) == project(f) * project(g)


@given(comp_expansion(3), comp_expansion(3), comp_expansion(2))
def test_ring_axioms(f, g, h):
    F, G, H = project(f), project(g), project(h)
    assert F + G == G + F
    assert (F + G) * H == F * H + G * H
    assert (f * h) * h == f * (h * h)
    assert F * H == H * F
    assert F - F == 0


@given(comp_expansion(4))
def test_json_round_trip(f):
    assert CompExpansion.from_json_obj(f.to_json_obj()) == f
    g = project(f)
    assert ESym.from_json_obj(g.to_json_obj()) == g


@given(comp_expansion(3), coeffs, coeffs)
def test_scaling_is_linear(f, a, b):
    assert f.scale(a) + f.scale(b) == f.scale(Fraction(a) + Fraction(b))


@given(st.integers(0, 22))
def test_no_ones_counts_follow_fibonacci(n):
    def fib(k):
        a, b = 0, 1
        for _ in range(k):
            a, b = b, a + b
        return a

    assert len(enumerate_no_ones(n)) == (1 if n == 0 else fib(n - 1))


@given(compositions, st.integers(0, 40))
def test_suffix_is_reversed_prefix(K, s):
    assert has_suffix(K, s) == has_prefix(K[::-1], s)


@given(compositions.filter(len))
def test_weight_factors_through_first_part(K):
    assert w_weight(K) == K[0] * w_prime(K)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.data())
def test_oracle_of_disjoint_union_is_product(n, data):
    pairs = list(combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=7)) if pairs else []
    G = Graph.from_edges(n, edges)
    doubled = Graph.from_edges(2 * n, edges + [(u + n, v + n) for u, v in edges])
    assert csf_oracle(doubled) == csf_oracle(G) * csf_oracle(G)
    assert csf_oracle(G).degree == n


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_spider_formula_matches_oracle(a, b, c):
    assert csf_spider_abc(a, b, c) == csf_oracle(spider_graph((a, b, c)))
