import numpy as np
import pytest

from sdrs.mcsim import (BudgetError, CodebookSpec, ExperimentResult, _ml, decoder_channels,
                        error_vs_n, generate_codebook, message_count, simulate_successive,
                        table_from_csv, table_to_csv)
from sdrs.prob import ProbVec, bsc, identity_channel, mix_joint, msb_channel, broken_typewriter
from sdrs.ratesplit import RatePair, make_split

U4 = ProbVec.uniform(range(4))
U2 = ProbVec.uniform((0, 1))


def test_message_count():
    assert message_count(8, 0.5) == 16
    assert message_count(16, 0.2708) == 20
    assert message_count(3, 0) == 1


def test_budget_error_names_requirement():
    spec = CodebookSpec.unsplit(24, 1.0, U2, budget=1000)
    with pytest.raises(BudgetError) as ei:
        generate_codebook(spec)
    assert ei.value.required == 2 ** 24 and "1000" in str(ei.value)


def test_spec_validation():
    with pytest.raises(ValueError):
        CodebookSpec.unsplit(0, 0.5, U2)
    with pytest.raises(ValueError):
        CodebookSpec.unsplit(4, 0.5, U2, seed=-1)


def test_single_codeword_codebook():
    spec = CodebookSpec(1, RatePair(0, 0), make_split(U4, 0.5), seed=5)
    cb = generate_codebook(spec)
    assert cb.xa.shape == (1, 1) and cb.xb.shape == (1, 1)
    f = spec.split.f
    (w,) = cb.codeword(0, 0)
    assert w == f(spec.split.p_a.support[cb.xa[0, 0]], spec.split.p_b.support[cb.xb[0, 0]])
    r = simulate_successive(broken_typewriter(), spec, trials=200, seed=1)
    assert r.err_a == r.err_b == r.err_any == 0.0


def test_codebook_determinism():
    spec = CodebookSpec(12, RatePair(0.3, 0.5), make_split(U4, 0.5), seed=99)
    a, b = generate_codebook(spec), generate_codebook(spec)
    assert np.array_equal(a.xa, b.xa) and np.array_equal(a.xb, b.xb)
    c = generate_codebook(CodebookSpec(12, RatePair(0.3, 0.5), make_split(U4, 0.5), seed=100))
    assert not np.array_equal(a.xb, c.xb)


def test_symbol_frequency_within_three_sigma():
    split = make_split(U4, 0.5)
    spec = CodebookSpec(10_000, RatePair(0, 0), split, seed=3)
    cb = generate_codebook(spec)
    n = spec.n
    for counts_of, p in ((cb.xa[0], split.p_a.probs), (cb.xb[0], split.p_b.probs)):
        freq = np.bincount(counts_of, minlength=len(p))
        sigma = np.sqrt(n * p * (1 - p))
        assert np.all(np.abs(freq - n * p) <= 3 * sigma)


def test_noiseless_channel_decodes_perfectly():
    spec = CodebookSpec.unsplit(8, 0.5, U2, seed=0)
    cb = generate_codebook(spec)
    assert len({tuple(r) for r in cb.xb}) == spec.M_b  # distinct codewords on this seed
    r = simulate_successive(identity_channel((0, 1)), spec, trials=500, seed=4)
    assert r.err_any == 0.0


def test_zero_rate_never_errs():
    tmpl = CodebookSpec.unsplit(8, 0.0, U2)
    for _, r in error_vs_n(bsc(0.11), tmpl, [4, 8, 12], trials=300, seed=2):
        assert r.err_any == 0.0


def test_effective_channel_matches_marginalization():
    for ch in (broken_typewriter(), msb_channel()):
        split = make_split(U4, 0.37)
        eff_a, eff_b = decoder_channels(ch, split)
        j = mix_joint(split.p_a, split.p_b, split.f, ch).table
        pa = j.sum(axis=(1, 2))
        pb = j.sum(axis=(0, 2))
        ya = j.sum(axis=1) / pa[:, None]
        yb = j.sum(axis=0) / pb[:, None]
        ok_a, ok_b = pa > 0, pb > 0
        assert np.allclose(eff_a.matrix[ok_a], ya[ok_a], atol=1e-12, rtol=0)
        assert np.allclose(eff_b.matrix[ok_b], yb[ok_b], atol=1e-12, rtol=0)


def brute_ml(codebook, V):
    out = []
    for t in range(V.shape[0]):
        best, arg = -np.inf, 0
        for m, word in enumerate(codebook):
            s = sum(V[t, i, word[i]] for i in range(len(word)))
            if s > best:
                best, arg = s, m
        out.append(arg)
    return np.array(out)


def test_ml_matches_brute_force_with_ties():
    rng = np.random.default_rng(8)
    for _ in range(20):
        M, n, q, T = 12, 5, 3, 40
        cb = rng.integers(0, q, size=(M, n))
        cb[5] = cb[2]  # exact duplicate: lower index must win
        # dyadic log-likelihoods make ties exact in any summation order
        V = rng.integers(-6, 1, size=(T, n, q)).astype(float) / 4
        V[rng.random(V.shape) < 0.1] = -np.inf
        assert np.array_equal(_ml(cb, q, V), brute_ml(cb, V))


def test_ml_all_impossible_picks_first():
    cb = np.array([[0, 1], [1, 0]])
    V = np.full((1, 2, 2), -np.inf)
    assert _ml(cb, 2, V).tolist() == [0]


def test_trial_determinism_and_seed_sensitivity():
    spec = CodebookSpec.unsplit(12, 0.5, U2, seed=1)
    a = simulate_successive(bsc(0.11), spec, trials=400, seed=7)
    b = simulate_successive(bsc(0.11), spec, trials=400, seed=7)
    c = simulate_successive(bsc(0.11), spec, trials=400, seed=8)
    assert a == b and a != c


def test_result_invariants():
    spec = CodebookSpec(12, RatePair(0.25, 0.6), make_split(U4, 0.5), seed=2)
    for order in ("ab", "ba"):
        r = simulate_successive(msb_channel(), spec, order=order, trials=300, seed=3)
        for v in (r.err_a, r.err_b, r.err_any):
            assert 0 <= v <= 1
        assert r.err_any >= max(r.err_a, r.err_b) - r.ci95
    with pytest.raises(ValueError):
        simulate_successive(msb_channel(), spec, order="xy")
    with pytest.raises(ValueError):
        simulate_successive(msb_channel(), spec, trials=0)


def test_ci95_formula():
    r = ExperimentResult(100, 0.1, 0.5, 0.5)
    assert r.half_width("a") == pytest.approx(1.96 * np.sqrt(0.09 / 100))
    assert r.ci95 == pytest.approx(1.96 * 0.05)


def test_error_vs_n_csv_round_trip():
    tmpl = CodebookSpec.unsplit(8, 0.25, U2, seed=1)
    rows = error_vs_n(bsc(0.11), tmpl, [8, 16], trials=200, seed=7)
    text = table_to_csv(rows)
    assert text == table_to_csv(error_vs_n(bsc(0.11), tmpl, [8, 16], trials=200, seed=7))
    back = table_from_csv(text)
    assert [r["n"] for r in back] == [8, 16]
    for (n, r), d in zip(rows, back):
        assert d["err_any"] == pytest.approx(r.err_any, abs=1e-6)
        assert d["ci95"] == pytest.approx(r.ci95, abs=1e-6)


def test_error_vs_n_checks_budget_up_front():
    tmpl = CodebookSpec.unsplit(8, 1.0, U2, budget=2 ** 10)
    with pytest.raises(BudgetError):
        error_vs_n(bsc(0.11), tmpl, [8, 16], trials=10)
