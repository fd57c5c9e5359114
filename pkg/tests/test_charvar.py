import random

import pytest
from hypothesis import given, settings, strategies as st

from multicurves import charvar as cv
from multicurves.charvar import (
    DEFAULT_PRIME,
    Mat2,
    Prng,
    RankDeficientError,
    ValidationError,
    commutator,
    commutator_trace_formula,
    dim_fil,
    eval_multicurve,
    eval_word,
    express_in_basis,
    fricke_rhs,
    lemma_product,
    lemma_sum,
    rank_mod_p,
    random_sl2,
    random_tuple,
    solve_mod_p,
    symmetric_residue,
    verify_fricke,
    verify_singular_products,
    verify_trace_identities,
    vogt,
    word_matrix,
)
from multicurves.diagrams import Multicurve, enumerate_reduced, extract_multicurve
from multicurves.genfun import series_coeffs
from multicurves.polygraph import H_gf_m
from multicurves.surface import genus_zero, inverse, make_sig

P = DEFAULT_PRIME
seeds = st.integers(0, 2**32)


def sl2(seed, p=P):
    return random_sl2(Prng(seed, 99), p)


def test_mat_basics():
    a = Mat2(1, 2, 3, 4, 7)
    assert a.det == (4 - 6) % 7
    assert a @ a.adj == Mat2.identity(7).scale(a.det)
    assert (a + a.adj).is_zero() is False
    assert Mat2.zero(7).is_zero()
    assert cv.mat_op("mul", a, Mat2.identity(7)) == a


def test_prng_deterministic_and_stream_separated():
    a = [Prng(5, 1).next_u64() for _ in range(3)]
    assert a[0] == a[1] == a[2]
    g = Prng(5, 1)
    seq = [g.next_u64() for _ in range(3)]
    assert len(set(seq)) == 3
    assert Prng(5, 2).next_u64() != seq[0]
    assert Prng(6, 1).next_u64() != seq[0]
    with pytest.raises(ValueError):
        Prng(0).below(0)


def test_prng_below_range():
    g = Prng(1)
    vals = [g.below(10) for _ in range(500)]
    assert set(vals) == set(range(10))


@given(seeds)
def test_random_sl2_has_det_one(seed):
    assert sl2(seed).det == 1


def test_word_matrix_uses_adjugate_inverse():
    mats = random_tuple(2, 3, 0)
    w = (1, 2, -1, -2)
    assert word_matrix(w + inverse(w), mats) == Mat2.identity(P)
    with pytest.raises(IndexError):
        word_matrix((3,), mats)


@given(seeds, st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8))
def test_trace_is_class_function(seed, word):
    mats = random_tuple(3, seed, 0)
    w = tuple(word)
    assert eval_word(w, mats) == eval_word(inverse(w), mats)
    if w:
        assert eval_word(w[1:] + w[:1], mats) == eval_word(w, mats)
    assert eval_word((1,) + w + (-1,), mats) == eval_word(w, mats)


def test_empty_multicurve_evaluates_to_one():
    assert eval_multicurve(Multicurve(), random_tuple(2, 0, 0)) == 1


def test_eval_multicurve_is_product():
    for gn in [(0, 4), (1, 2)]:
        s = make_sig(*gn)
        mats = random_tuple(s.m, 11, 4)
        for d in enumerate_reduced(s, 3):
            mc = extract_multicurve(d)
            prod = 1
            for c in mc.components:
                prod = prod * eval_word(c.canon, mats) % P
            assert eval_multicurve(mc, mats) == prod


def test_rank_and_solve():
    p = 101
    A = [[1, 2], [2, 4], [0, 1]]
    assert rank_mod_p(A, p) == 2
    assert rank_mod_p([[0, 0]], p) == 0
    assert solve_mod_p(A, [5, 10, 2], p) == [1, 2]
    with pytest.raises(ValidationError):
        solve_mod_p(A, [5, 11, 2], p)
    with pytest.raises(RankDeficientError):
        solve_mod_p([[1, 2], [2, 4]], [1, 2], p)


def test_symmetric_residue():
    assert symmetric_residue(P - 1, P) == -1
    assert symmetric_residue(3, P) == 3


@pytest.mark.parametrize("m,r,expected", [(2, 0, 1), (2, 2, 7), (3, 2, 13)])
def test_dim_fil_examples(m, r, expected):
    assert dim_fil(genus_zero(m), r) == expected


def test_dim_fil_needs_enough_samples():
    with pytest.raises(ValueError):
        dim_fil(genus_zero(2), 3, samples=5)


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_dim_fil_matches_hilbert_series(seed):
    for m, rmax in [(2, 4), (3, 2)]:
        expected = series_coeffs(H_gf_m(m), rmax)
        assert [dim_fil(genus_zero(m), r, seed=seed) for r in range(rmax + 1)] == expected


def test_dim_fil_same_for_equal_rank():
    ranks = [dim_fil(make_sig(*gn), 3, seed=9) for gn in [(0, 3), (1, 1)]]
    assert ranks == [13, 13]


def test_dim_fil_monotone():
    s = genus_zero(2)
    dims = [dim_fil(s, r, seed=4) for r in range(5)]
    assert dims == sorted(dims)


def test_expansion_examples():
    s = genus_zero(2)
    e = express_in_basis((1, -2), s)
    assert e.coeffs == {Multicurve.of((1,), (2,)): 1, Multicurve.of((1, 2)): -1}
    e = express_in_basis((1, 1), s)
    assert e.coeffs == {Multicurve(): -2, Multicurve.of((1,), (1,)): 1}
    assert express_in_basis((1,), s).coeffs == {Multicurve.of((1,)): 1}
    assert all(v == 0 for v in e.residual) and e.validated_on == 10


def test_expansion_rejects_foreign_generators():
    with pytest.raises(IndexError):
        express_in_basis((3,), genus_zero(2))


def test_expansion_needs_enough_samples():
    with pytest.raises(ValueError):
        express_in_basis((1, 2), genus_zero(2), samples=3)


def test_expansion_seed_independent():
    rng = random.Random(0)
    s = genus_zero(3)
    for _ in range(10):
        w = tuple(rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(1, 4)))
        assert express_in_basis(w, s, seed=1).coeffs == express_in_basis(w, s, seed=2).coeffs


def test_fricke_at_identity():
    one = Mat2.identity(P)
    assert commutator(one, one).tr == fricke_rhs(one, one) == 2


def test_lemma_sum_at_identity():
    one = Mat2.identity(P)
    assert lemma_sum(one, one, one) == (4, 4)


def test_singular_examples():
    z = Mat2.zero(P)
    assert commutator(z, z).is_zero()
    n = Mat2(0, 1, 0, 0, P)
    assert (n @ n).is_zero() and commutator(n, n).is_zero()


@pytest.mark.parametrize("fn", [verify_fricke, verify_trace_identities, verify_singular_products])
def test_identity_suites(fn):
    reports = fn(P, 300, 1)
    assert reports and all(r.passed and r.trials >= 300 for r in reports)
    assert all(r.to_json()["pass"] for r in reports)


def test_identity_suite_small_prime():
    for fn in (verify_fricke, verify_trace_identities, verify_singular_products):
        assert all(r.passed for r in fn(10007, 200, 3))


def test_singular_sampler_hits_both_sides():
    prng = Prng(0, 3)
    outcomes = set()
    for _ in range(200):
        a, b = cv._singular_pair(prng, P)
        assert a.det == 0 and b.det == 0
        outcomes.add(commutator(a, b).is_zero())
    assert outcomes == {True, False}


def test_report_records_failures():
    rep = cv.CheckReport("x")
    rep.record(True)
    rep.record(False, lambda: "bad")
    assert not rep.passed and rep.failures == 1 and rep.examples == ["bad"]


def test_checker_detects_wrong_identity():
    # a deliberately wrong right-hand side must be caught
    a, b = sl2(1), sl2(2)
    assert commutator(a, b).tr != (fricke_rhs(a, b) + 1) % P


@settings(max_examples=50)
@given(seeds)
def test_general_commutator_trace(seed):
    g = Prng(seed, 5)
    a, b = cv.random_mat(g), cv.random_mat(g)
    assert commutator(a, b).tr == commutator_trace_formula(a, b)


@settings(max_examples=50)
@given(seeds)
def test_three_and_four_variable_identities(seed):
    g = Prng(seed, 6)
    a, b, c, d = (random_sl2(g) for _ in range(4))
    assert len(set(lemma_sum(a, b, c))) == 1
    assert len(set(lemma_product(a, b, c))) == 1
    assert len(set(vogt(a, b, c, d))) == 1
