import math
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sdrs.prob import (Channel, JointDist, MixFunction, ProbVec, ValidationError,
                       broken_typewriter, compose, conditional_mutual_information, entropy,
                       identity_channel, mix_joint, msb_channel, mutual_information)


def brute_mi(cells, a_idx, b_idx):
    """I(A;B) from a dict {tuple: prob}, summing p log p/(p_a p_b) directly."""
    pa, pb, pab = defaultdict(float), defaultdict(float), defaultdict(float)
    for key, p in cells.items():
        ka = tuple(key[i] for i in a_idx)
        kb = tuple(key[i] for i in b_idx)
        pa[ka] += p
        pb[kb] += p
        pab[ka, kb] += p
    return sum(p * math.log2(p / (pa[ka] * pb[kb])) for (ka, kb), p in pab.items() if p > 0)


def cells_of(j: JointDist):
    return {idx: float(j.table[idx]) for idx in np.ndindex(j.table.shape)}


def random_joint(rng, shape, names):
    t = rng.random(shape) ** 3
    t[rng.random(shape) < 0.2] = 0.0
    t.flat[0] += 1e-3
    t /= t.sum()
    return JointDist(names, tuple(tuple(range(s)) for s in shape), t)


@pytest.mark.parametrize("p, h", [([0.5, 0.5], 1.0), ([1.0, 0.0], 0.0), ([0.25] * 4, 2.0)])
def test_entropy_examples(p, h):
    assert entropy(p) == pytest.approx(h, abs=1e-15)


@pytest.mark.parametrize("bad", [[0.6, 0.6], [1.2, -0.2], [0.5, 0.5 - 1e-9]])
def test_entropy_rejects_invalid(bad):
    with pytest.raises(ValidationError):
        entropy(bad)


def test_probvec_rejects_duplicate_labels():
    with pytest.raises(ValidationError):
        ProbVec((0, 0), [0.5, 0.5])


def test_channel_rows_must_be_stochastic():
    with pytest.raises(ValidationError, match="row 1"):
        Channel((0, 1), (0, 1), [[1, 0], [0.5, 0.6]])


def test_compose_identity():
    j = compose(ProbVec.uniform((0, 1)), identity_channel((0, 1)))
    assert np.array_equal(j.table, np.diag([0.5, 0.5]))


def test_compose_broken_typewriter():
    j = compose(ProbVec.uniform(range(4)), broken_typewriter())
    nz = j.table[j.table > 0]
    assert len(nz) == 8
    assert np.allclose(nz, 1 / 8, rtol=0, atol=1e-15)


def test_compose_point_mass_returns_row():
    ch = broken_typewriter()
    j = compose(ProbVec.point_mass(range(4), 2), ch)
    assert np.array_equal(j.table[2], ch.row(2))
    assert j.table[[0, 1, 3]].sum() == 0


def test_compose_support_mismatch():
    with pytest.raises(ValidationError):
        compose(ProbVec.uniform((0, 1)), broken_typewriter())


def test_compose_marginal_is_input():
    rng = np.random.default_rng(4)
    p = rng.dirichlet(np.ones(4))
    j = compose(ProbVec(range(4), p), broken_typewriter())
    assert np.allclose(j.marginal("X").table, p, atol=1e-12)


def test_example_channels():
    bt = broken_typewriter()
    assert bt.row(0).tolist() == [0.5, 0.5, 0, 0]
    assert bt.row(3).tolist() == [0.5, 0, 0, 0.5]
    assert np.allclose(bt.matrix.sum(axis=1), 1)
    m = msb_channel()
    assert m.row(1)[0] == 1 and m.row(2)[1] == 1
    assert np.all(m.matrix.max(axis=1) == 1) and np.all((m.matrix == 0) | (m.matrix == 1))


def test_one_bit_through_both_example_channels():
    u = ProbVec.uniform(range(4))
    assert mutual_information(compose(u, broken_typewriter()), "X", "Y") == pytest.approx(1, abs=1e-12)
    assert mutual_information(compose(u, msb_channel()), "X", "Y") == pytest.approx(1, abs=1e-12)


def test_product_joint_has_zero_information():
    t = np.outer([0.2, 0.8], [0.1, 0.3, 0.6])
    j = JointDist(("A", "B"), ((0, 1), (0, 1, 2)), t)
    assert mutual_information(j, "A", "B") == 0.0


def test_unknown_axis():
    j = compose(ProbVec.uniform((0, 1)), identity_channel((0, 1)))
    with pytest.raises(KeyError):
        mutual_information(j, "X", "Z")


def test_overlapping_axes_rejected():
    j = random_joint(np.random.default_rng(0), (2, 2, 2), ("A", "B", "C"))
    with pytest.raises(ValueError):
        conditional_mutual_information(j, "A", "B", ("B", "C"))


def test_marginal_reorders_axes():
    j = random_joint(np.random.default_rng(1), (2, 3, 4), ("A", "B", "C"))
    m = j.marginal(("C", "A"))
    assert m.axes == ("C", "A")
    assert np.allclose(m.table, j.table.sum(axis=1).T)


def test_product_joint_roundtrip():
    pa, pb = np.array([0.3, 0.7]), np.array([0.2, 0.5, 0.3])
    j = JointDist(("A", "B"), ((0, 1), (0, 1, 2)), np.outer(pa, pb))
    re = np.outer(j.marginal("A").table, j.marginal("B").table)
    assert np.allclose(re, j.table, atol=1e-12)


def test_mi_against_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(50):
        j = random_joint(rng, (3, 2, 4), ("A", "B", "C"))
        cells = cells_of(j)
        assert mutual_information(j, "A", ("B", "C")) == pytest.approx(
            brute_mi(cells, (0,), (1, 2)), abs=1e-10)
        assert mutual_information(j, "C", "B") == pytest.approx(brute_mi(cells, (2,), (1,)), abs=1e-10)


def test_cmi_with_independent_condition():
    rng = np.random.default_rng(3)
    ab = random_joint(rng, (3, 3), ("A", "B")).table
    t = ab[:, :, None] * np.array([0.4, 0.6])[None, None, :]
    j = JointDist(("A", "B", "C"), ((0, 1, 2), (0, 1, 2), (0, 1)), t)
    assert conditional_mutual_information(j, "A", "B", "C") == pytest.approx(
        mutual_information(j, "A", "B"), abs=1e-12)


def test_cmi_is_average_of_slices():
    rng = np.random.default_rng(5)
    j = random_joint(rng, (3, 2, 3), ("A", "B", "C"))
    expected = 0.0
    for c in range(3):
        pc = j.table[:, :, c].sum()
        cells = {(a, b): j.table[a, b, c] / pc for a in range(3) for b in range(2)}
        expected += pc * brute_mi(cells, (0,), (1,))
    assert conditional_mutual_information(j, "A", "B", "C") == pytest.approx(expected, abs=1e-10)


def test_tiny_negative_clamped():
    # identical axes copies give H(A)+H(B)-H(A,B) with rounding noise around H(A)
    t = np.diag([1 / 3, 1 / 3, 1 / 3])
    j = JointDist(("A", "B"), ((0, 1, 2), (0, 1, 2)), t)
    assert mutual_information(j, "A", "B") >= 0


def test_mix_joint_projection_and_independence():
    pa = ProbVec((0, 1, 2), [0.2, 0.3, 0.5])
    pb = ProbVec(range(4), [0.1, 0.2, 0.3, 0.4])
    f = MixFunction.from_callable(lambda a, b: b, pa.support, pb.support)
    j = mix_joint(pa, pb, f, broken_typewriter())
    assert mutual_information(j, "Xa", "Y") == pytest.approx(0, abs=1e-12)
    assert mutual_information(j, "Xa", "Xb") == pytest.approx(0, abs=1e-12)


def test_mix_joint_output_outside_support():
    pa = ProbVec((0, 1), [0.5, 0.5])
    f = MixFunction.from_callable(lambda a, b: a + b + 5, pa.support, pa.support)
    with pytest.raises(ValidationError):
        mix_joint(pa, pa, f, identity_channel((0, 1)))


def test_mix_function_must_be_total():
    with pytest.raises(ValidationError):
        MixFunction((0, 1), (0, 1), ((0, 1), (1,)))


@st.composite
def split_triples(draw):
    na, nb, nx, ny = (draw(st.integers(1, 4)) for _ in range(4))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    pa = ProbVec(range(na), rng.dirichlet(np.ones(na)))
    pb = ProbVec(range(nb), rng.dirichlet(np.ones(nb)))
    table = rng.integers(0, nx, size=(na, nb))
    f = MixFunction(pa.support, pb.support, table.tolist())
    ch = Channel(range(nx), range(ny), rng.dirichlet(np.ones(ny) * 0.5, size=nx))
    return pa, pb, f, ch


@settings(max_examples=200, deadline=None)
@given(split_triples())
def test_information_identities(triple):
    pa, pb, f, ch = triple
    j = mix_joint(pa, pb, f, ch)
    cmi = conditional_mutual_information
    i_xy = mutual_information(j, ("Xa", "Xb"), "Y")
    assert mutual_information(j, "Xa", "Y") + cmi(j, "Xb", "Y", "Xa") == pytest.approx(i_xy, abs=1e-10)
    assert mutual_information(j, "Xb", "Y") + cmi(j, "Xa", "Y", "Xb") == pytest.approx(i_xy, abs=1e-10)
    assert mutual_information(j, "Xb", ("Y", "Xa")) == pytest.approx(cmi(j, "Xb", "Y", "Xa"), abs=1e-10)
    # data processing equality through the deterministic mix
    px = np.zeros(len(ch.input_support))
    for i, a in enumerate(pa.support):
        for k, b in enumerate(pb.support):
            px[ch.input_support.index(f(a, b))] += pa.probs[i] * pb.probs[k]
    px /= px.sum()
    direct = mutual_information(compose(ProbVec(ch.input_support, px), ch), "X", "Y")
    assert direct == pytest.approx(i_xy, abs=1e-10)
    for k in ("Xa", "Xb", "Y"):
        assert j.entropy(k) >= 0
