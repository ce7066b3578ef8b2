"""Classical expander-code decoding: syndromes, envelope growth, erasure peeling."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from hgpdecode.classical import (
    ClassicalCode,
    DecodeFailure,
    classical_syndrome,
    erase_decode_classical,
    find_classical,
)
from hgpdecode.gf2 import BitVector
from hgpdecode.graphs import audit_expansion, gen_biregular, neighbors


@pytest.fixture(scope="module")
def path_code(path_graph):
    return ClassicalCode(path_graph)


@pytest.fixture(scope="module")
def k33_code(k33_graph):
    return ClassicalCode(k33_graph)


@pytest.fixture(scope="module")
def k44_code(k44_incidence_graph):
    return ClassicalCode(k44_incidence_graph)


# --- syndromes ---

def test_syndrome_of_zero_word(k33_code):
    assert classical_syndrome(k33_code, BitVector(3, 0)) == set()


def test_syndrome_path_single_flip(path_code):
    assert classical_syndrome(path_code, BitVector.from_dense([1, 0])) == {0}


def test_syndrome_k33_two_flips_cancel(k33_code):
    assert classical_syndrome(k33_code, BitVector.from_dense([1, 1, 0])) == set()


# --- envelope finder ---

def test_find_empty_syndrome(path_code):
    res = find_classical(path_code, set(), Fraction(0))
    assert res.envelope == set() and res.iterations == 0


def test_find_path_hand_trace(path_code):
    # threshold h = 1; bit 0 qualifies first, its check is already suspicious,
    # then bit 1 qualifies too.
    res = find_classical(path_code, {0}, Fraction(0))
    assert res.envelope == {0, 1}
    assert [t[0] for t in res.trace] == [0, 1]
    assert res.iterations == 2


def test_find_single_bit_error_on_audited_expander(k44_code):
    profile = audit_expansion(k44_code.graph, "left", 3)
    eps = profile.worst_up_to()
    assert eps == Fraction(1, 6) and eps < Fraction(1, 3)
    bound = 1 / (1 - 3 * eps)  # envelope-size claim for admissible errors
    for v in range(k44_code.n):
        word = BitVector.from_support(k44_code.n, [v])
        res = find_classical(k44_code, classical_syndrome(k44_code, word), eps)
        assert v in res.envelope
        assert len(res.envelope) <= bound
        assert res.envelope == {v}  # h = 3 and distinct bits share at most 1 check


def test_find_result_invariants():
    rng = random.Random(11)
    g = gen_biregular(20, 2, 4, seed=3)
    code = ClassicalCode(g)
    for _ in range(40):
        word = BitVector(20, rng.getrandbits(20))
        syn = classical_syndrome(code, word)
        res = find_classical(code, syn, Fraction(1, 5))
        assert res.suspicious == syn | neighbors(g, "left", res.envelope)
        assert res.iterations == len(res.envelope)
        # monotone growth along the trace
        sizes = [(t[2], t[3]) for t in res.trace]
        assert sizes == sorted(sizes)


def test_find_is_deterministic(k44_code):
    syn = classical_syndrome(k44_code, BitVector.from_dense([1, 1, 0, 0, 0, 0, 0, 0]))
    a = find_classical(k44_code, syn, Fraction(1, 6))
    b = find_classical(k44_code, syn, Fraction(1, 6))
    assert a == b


def test_find_rejects_bad_epsilon(path_code):
    with pytest.raises(ValueError):
        find_classical(path_code, set(), Fraction(1, 2))


# --- erasure decoding ---

def test_erase_nothing_returns_same_word(k33_code):
    word = BitVector.from_dense([1, 1, 0])
    assert erase_decode_classical(k33_code, word, set()) == word


def test_erase_path_single_bit_forced(path_code):
    # codewords are {00, 11}; with w1 = 1 the erased w0 is forced to 1
    word = BitVector.from_dense([0, 1])
    out = erase_decode_classical(path_code, word, {0})
    assert out == BitVector.from_dense([1, 1])


def test_erase_underdetermined_returns_none(k33_code):
    # codewords of the all-ones-check code: even weight; erasing two bits of a
    # codeword leaves two completions
    out = erase_decode_classical(k33_code, BitVector.from_dense([0, 0, 0]), {0, 1})
    assert out is None


def test_erase_inconsistent_raises(path_code):
    with pytest.raises(DecodeFailure):
        erase_decode_classical(path_code, BitVector.from_dense([1, 0]), set())


def test_erase_matches_brute_force_nearest_codeword():
    # On a small audited code, any erasure pattern with a unique completion
    # must be decoded back to the original codeword (brute-force oracle).
    g = gen_biregular(12, 3, 6, seed=4)
    code = ClassicalCode(g)
    h = code.parity_matrix()
    codewords = [w for w in range(1 << 12) if all(
        ((row & w).bit_count() & 1) == 0 for row in h.row_bits
    )]
    rng = random.Random(5)
    tested_unique = 0
    for _ in range(120):
        w = rng.choice(codewords)
        erased = set(rng.sample(range(12), rng.randint(1, 4)))
        visible_mask = ((1 << 12) - 1) ^ sum(1 << v for v in erased)
        completions = [cw for cw in codewords if (cw & visible_mask) == (w & visible_mask)]
        word = BitVector(12, w & visible_mask)
        got = erase_decode_classical(code, word, erased)
        if len(completions) == 1:
            tested_unique += 1
            assert got is not None and got.bits == w
        else:
            assert got is None
    assert tested_unique > 20  # the oracle actually exercised the unique branch


def test_erase_peeling_handles_chain():
    # A pure peeling cascade: checks of degree 2 form a path, erasures resolve
    # one by one from the known end.
    g = gen_biregular(2, 1, 2, seed=0)
    code = ClassicalCode(g)
    out = erase_decode_classical(code, BitVector.from_dense([0, 0]), {1})
    assert out == BitVector.from_dense([0, 0])
