"""Product-code construction and quantum-side combinatorics."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgpdecode.gf2 import BitMatrix, rank
from hgpdecode.graphs import audit_expansion, gen_biregular
from hgpdecode.hgp import (
    CheckSet,
    QubitParseError,
    QubitSet,
    build_hgp,
    dual,
    project,
    qnbhd,
    qnbhd_unique,
    qubitset_from_text,
    qubitset_to_text,
    supp_check,
    supp_generator,
    syndrome,
    weighted_norm,
)


@pytest.fixture(scope="module")
def single_edge_code(single_edge_graph):
    return build_hgp(single_edge_graph)


@pytest.fixture(scope="module")
def path_code(path_graph):
    return build_hgp(path_graph)


@pytest.fixture(scope="module")
def k33_code(k33_graph):
    return build_hgp(k33_graph)


@pytest.fixture(scope="module")
def mid_code():
    return build_hgp(gen_biregular(12, 3, 6, seed=5))


def base_rank(graph):
    h = BitMatrix.from_row_supports(graph.m, graph.n, graph.adj_c)
    return rank(h)


def test_build_single_edge(single_edge_code):
    code = single_edge_code
    assert code.num_qubits == 2
    assert code.num_checks == 1
    assert code.num_gens == 1
    assert supp_generator(code, 0) == QubitSet.of([(0, 0)], [(0, 0)])
    assert code.k == 0


def test_build_path(path_code):
    code = path_code
    assert code.num_qubits == 5
    assert code.num_checks == 2
    assert code.num_gens == 2
    for x in range(code.num_checks):
        assert supp_check(code, x).weight == 3
    assert code.k == 1


def test_build_k33(k33_code):
    assert k33_code.num_qubits == 18
    assert k33_code.num_checks == 9
    assert k33_code.num_gens == 9


def test_k_matches_base_rank_identity(single_edge_code, path_code, k33_code, mid_code):
    # Independent route: k = (n-r)^2 + (m-r)^2 with r the base biadjacency rank.
    for code in (single_edge_code, path_code, k33_code, mid_code):
        r = base_rank(code.base)
        assert code.k == (code.n - r) ** 2 + (code.m - r) ** 2


def test_supp_examples_on_path(path_code):
    code = path_code
    z = code.gen_index(0, 0)
    assert supp_generator(code, z) == QubitSet.of([(0, 0), (1, 0)], [(0, 0)])
    x = code.check_index(0, 0)
    assert supp_check(code, x) == QubitSet.of([(0, 0), (0, 1)], [(0, 0)])


def test_supp_sizes(k33_code, mid_code):
    for code in (k33_code, mid_code):
        for g in range(code.num_gens):
            s = supp_generator(code, g)
            assert len(s.vv_part) == code.delta_c
            assert len(s.cc_part) == code.delta_v
        for x in range(code.num_checks):
            s = supp_check(code, x)
            assert len(s.vv_part) == code.delta_c
            assert len(s.cc_part) == code.delta_v


def test_index_conventions(mid_code):
    code = mid_code  # n=12, m=6
    assert code.vv_index(3, 5) == 3 * 12 + 5
    assert code.cc_index(2, 4) == 144 + 2 * 6 + 4
    assert code.check_index(3, 2) == 3 * 6 + 2
    assert code.gen_index(4, 7) == 4 * 12 + 7
    assert code.qubit_coords(41) == ("VV", 3, 5)
    assert code.qubit_coords(160) == ("CC", 2, 4)


def test_index_errors(path_code):
    code = path_code
    with pytest.raises(IndexError):
        supp_generator(code, code.num_gens)
    with pytest.raises(IndexError):
        supp_check(code, -1)
    with pytest.raises(IndexError):
        code.vv_index(code.n, 0)
    with pytest.raises(IndexError):
        code.qubit_coords(code.num_qubits)


def test_qnbhd_examples(path_code, k33_code):
    assert qnbhd(path_code, QubitSet.of([(0, 0)])) == CheckSet.of([(0, 0)])
    assert qnbhd(path_code, QubitSet()) == CheckSet()
    assert qnbhd_unique(path_code, QubitSet()) == CheckSet()
    # A full generator support has no unique neighbors inside its own
    # check grid: every grid check sees exactly two of its qubits.
    code = k33_code
    for g in range(code.num_gens):
        c, v = code.gen_coords(g)
        grid = {
            (nu, zeta) for nu in code.base.adj_c[c] for zeta in code.base.adj_v[v]
        }
        uniq = qnbhd_unique(code, supp_generator(code, g))
        assert not (uniq.members & grid)


def test_unique_nbhd_closed_form(mid_code):
    # Against the set-level computation: for A inside one generator support
    # with a VV qubits and b CC qubits, the local check grid gives
    # |unique nbhd| = a*dv + b*dc - 2ab and |nbhd| = a*dv + b*dc - ab.
    code = mid_code
    dv, dc = code.delta_v, code.delta_c
    rng = random.Random(77)
    for _ in range(300):
        g = rng.randrange(code.num_gens)
        supp = supp_generator(code, g)
        vv = sorted(supp.vv_part)
        cc = sorted(supp.cc_part)
        a = rng.randint(0, len(vv))
        b = rng.randint(0, len(cc))
        sub = QubitSet.of(rng.sample(vv, a), rng.sample(cc, b))
        assert len(qnbhd_unique(code, sub)) == a * dv + b * dc - 2 * a * b
        assert len(qnbhd(code, sub)) == a * dv + b * dc - a * b


def test_project_examples():
    s = QubitSet.of([(0, 0), (1, 0)])
    assert project(s, "V2") == {0}
    assert project(s, "V1") == {0, 1}
    assert project(s, "V1", index=0) == {0}
    assert project(QubitSet(), "C1") == set()
    assert project(QubitSet(), "C2", index=3) == set()
    with pytest.raises(ValueError):
        project(s, "Q1")


def test_project_slices_partition(mid_code):
    rng = random.Random(3)
    vv = [(rng.randrange(12), rng.randrange(12)) for _ in range(20)]
    cc = [(rng.randrange(6), rng.randrange(6)) for _ in range(10)]
    s = QubitSet.of(vv, cc)
    assert sum(len(project(s, "V1", index=i)) for i in project(s, "V1")) == len(s.vv_part)
    assert sum(len(project(s, "C2", index=j)) for j in project(s, "C2")) == len(s.cc_part)


def test_weighted_norm(mid_code):
    code = mid_code  # (delta_v, delta_c) = (3, 6)
    s = QubitSet.of([(0, 0), (0, 1)], [(0, 0), (0, 1), (1, 0)])
    norm = weighted_norm(code, s)
    assert norm == Fraction(4, 3)
    delta = code.delta_v * code.delta_c
    assert delta * norm == 24 == 2 * code.delta_v + 3 * code.delta_c
    assert weighted_norm(code, QubitSet()) == 0
    assert weighted_norm(code, QubitSet.of([(5, 5)])) == Fraction(1, 6)


def test_syndrome_examples(path_code, k33_code):
    assert syndrome(path_code, QubitSet()) == CheckSet()
    assert syndrome(path_code, QubitSet.of([(0, 0)])) == CheckSet.of([(0, 0)])
    for code in (path_code, k33_code):
        for g in range(code.num_gens):
            assert syndrome(code, supp_generator(code, g)) == CheckSet()


def test_syndrome_invariant_under_generator_toggle(mid_code):
    code = mid_code
    rng = random.Random(11)
    for _ in range(25):
        vv = {(rng.randrange(12), rng.randrange(12)) for _ in range(6)}
        cc = {(rng.randrange(6), rng.randrange(6)) for _ in range(3)}
        e = QubitSet.of(vv, cc)
        g = rng.randrange(code.num_gens)
        assert syndrome(code, e ^ supp_generator(code, g)) == syndrome(code, e)


def test_css_evenness(path_code, k33_code, mid_code):
    for code in (path_code, k33_code, mid_code):
        for g in range(code.num_gens):
            zs = supp_generator(code, g)
            for x in qnbhd(code, zs).to_indices(code):
                overlap = zs & supp_check(code, x)
                assert overlap.weight % 2 == 0 and overlap.weight > 0


def test_dual(single_edge_code, path_code, k33_code):
    d = dual(path_code)
    assert d.num_checks == 2 and d.num_gens == 2
    assert d.num_qubits == 5
    dd = dual(d)
    assert dd == path_code
    for code in (single_edge_code, path_code, k33_code):
        assert dual(code).k == code.k


def test_minimally_expanding_sets(k33_code, mid_code):
    rng = random.Random(29)
    for code in (k33_code, mid_code):
        for _ in range(20):
            c_prime = set(rng.sample(range(code.m), rng.randint(1, min(2, code.m))))
            v_prime = set(rng.sample(range(code.n), rng.randint(1, 3)))
            gamma_c = {nu for c in c_prime for nu in code.base.adj_c[c]}
            gamma_v = {zeta for v in v_prime for zeta in code.base.adj_v[v]}
            s_v = QubitSet.of((nu, v) for nu in gamma_c for v in v_prime)
            s_c = QubitSet.of((), ((c, zeta) for c in c_prime for zeta in gamma_v))
            assert qnbhd(code, s_v) == qnbhd(code, s_c)
            assert qnbhd(code, s_v) == CheckSet.of(
                (nu, zeta) for nu in gamma_c for zeta in gamma_v
            )


def test_max_expanding_lower_bound(k33_code, mid_code):
    # Row-slice accounting: each VV row expands by the left audit, each CC row
    # by the right audit, and halving absorbs double-counted checks.
    rng = random.Random(41)
    for code in (k33_code, mid_code):
        left = audit_expansion(code.base, "left", s_max=3)
        right = audit_expansion(code.base, "right", s_max=3)
        delta = code.delta_v * code.delta_c
        for _ in range(60):
            vv = set()
            for nu in rng.sample(range(code.n), rng.randint(0, 2)):
                vv |= {(nu, v) for v in rng.sample(range(code.n), rng.randint(1, 3))}
            cc = set()
            for c in rng.sample(range(code.m), rng.randint(0, 2)):
                cc |= {(c, zeta) for zeta in rng.sample(range(code.m), rng.randint(1, 3))}
            s = QubitSet.of(vv, cc)
            if s.weight == 0:
                continue
            eps_hat = Fraction(0)
            for nu in project(s, "V1"):
                eps_hat = max(eps_hat, left.worst_epsilon_by_size[len(project(s, "V1", nu))])
            for c in project(s, "C1"):
                eps_hat = max(eps_hat, right.worst_epsilon_by_size[len(project(s, "C1", c))])
            bound = Fraction(1, 2) * (1 - eps_hat) * delta * weighted_norm(code, s)
            assert len(qnbhd(code, s)) >= bound


def test_design_distance_hint(single_edge_code, path_code, k33_code):
    assert single_edge_code.design_distance_hint is None
    assert path_code.design_distance_hint == 2
    assert k33_code.design_distance_hint == 2


def test_design_distance_hint_skipped_at_scale():
    code = build_hgp(gen_biregular(18, 3, 6, seed=2))
    assert code.design_distance_hint is None


def test_qubitset_text_roundtrip(mid_code):
    s = QubitSet.of([(3, 5), (0, 0)], [(2, 4)])
    text = qubitset_to_text(s)
    assert text == "VV 0 0\nVV 3 5\nCC 2 4\n"
    assert qubitset_from_text(text, mid_code) == s
    assert qubitset_to_text(QubitSet()) == ""
    assert qubitset_from_text("", mid_code) == QubitSet()
    assert qubitset_from_text("# comment\n\nVV 1 1\n") == QubitSet.of([(1, 1)])


def test_qubitset_parse_errors(mid_code):
    with pytest.raises(QubitParseError, match="line 1"):
        qubitset_from_text("XX 0 0\n")
    with pytest.raises(QubitParseError, match="line 2"):
        qubitset_from_text("VV 0 0\nVV 1\n")
    with pytest.raises(QubitParseError, match="line 3"):
        qubitset_from_text("VV 0 0\nCC 1 1\nVV a 2\n")
    with pytest.raises(QubitParseError, match="line 1"):
        qubitset_from_text("VV 0 12\n", mid_code)
    with pytest.raises(QubitParseError, match="line 1"):
        qubitset_from_text("CC 6 0\n", mid_code)


@given(st.sets(st.integers(min_value=0, max_value=179), max_size=25))
@settings(max_examples=60, deadline=None)
def test_qubit_index_roundtrip(indices):
    code = build_hgp(gen_biregular(12, 3, 6, seed=5))
    s = QubitSet.from_indices(code, indices)
    assert s.weight == len(indices)
    assert s.to_indices(code) == sorted(indices)
    assert QubitSet.from_indices(code, s.to_indices(code)) == s
