"""
Finite-blocklength random coding with successive ML decoding.

Codebooks and trials draw their randomness from Philox streams keyed by
``(seed, stream id)``; the draw for message ``m`` at position ``i`` sits at a
fixed offset ``m * n + i`` of its stream, so results depend only on the
inputs and the seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .prob import Channel, MixFunction, ProbVec, ValidationError, effective_channel
from .ratesplit import RatePair, SplitSpec

DEFAULT_BUDGET = 2 ** 20
_CHUNK_CELLS = 1 << 22  # gathered log-likelihood cells per decoding chunk

_TIE_DECIMALS = 9

_STREAM_A, _STREAM_B, _STREAM_TRIALS = 0, 1, 2


class BudgetError(ValueError):
    def __init__(self, required, budget):
        super().__init__(f"codebook needs {required} codeword pairs, budget is {budget}")
        self.required = required
        self.budget = budget


def message_count(n: int, rate: float) -> int:
    # the relative nudge keeps exact powers of two from rounding down
    return max(1, math.floor(2.0 ** (n * rate) * (1 + 1e-12)))


def unsplit_spec(p_x: ProbVec) -> SplitSpec:
    """A single-message code as a split with a constant first component."""
    f = MixFunction.from_callable(lambda _, xb: xb, (0,), p_x.support)
    return SplitSpec(ProbVec((0,), [1.0]), p_x, f)


@dataclass(frozen=True)
class CodebookSpec:
    n: int
    rates: RatePair
    split: SplitSpec
    seed: int = 0
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @classmethod
    def unsplit(cls, n, rate, p_x, seed=0, budget=DEFAULT_BUDGET) -> "CodebookSpec":
        return cls(n, RatePair(0.0, rate), unsplit_spec(p_x), seed, budget)

    @property
    def M_a(self) -> int:
        return message_count(self.n, self.rates.R_a)

    @property
    def M_b(self) -> int:
        return message_count(self.n, self.rates.R_b)


def _stream(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed, stream], dtype=np.uint64)))


def _sample(p: np.ndarray, u: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(p)
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(p) - 1)


@dataclass(frozen=True, eq=False)
class Codebook:
    spec: CodebookSpec
    xa: np.ndarray  # (M_a, n) indices into p_a.support
    xb: np.ndarray  # (M_b, n) indices into p_b.support

    def codeword(self, ma: int, mb: int) -> tuple:
        s = self.spec.split
        sa, sb = s.p_a.support, s.p_b.support
        return tuple(s.f(sa[i], sb[k]) for i, k in zip(self.xa[ma], self.xb[mb]))


def generate_codebook(spec: CodebookSpec) -> Codebook:
    M_a, M_b = spec.M_a, spec.M_b
    if M_a * M_b > spec.budget:
        raise BudgetError(M_a * M_b, spec.budget)
    ua = _stream(spec.seed, _STREAM_A).random((M_a, spec.n))
    ub = _stream(spec.seed, _STREAM_B).random((M_b, spec.n))
    xa = _sample(spec.split.p_a.probs, ua)
    xb = _sample(spec.split.p_b.probs, ub)
    xa.setflags(write=False)
    xb.setflags(write=False)
    return Codebook(spec, xa, xb)


@dataclass(frozen=True)
class ExperimentResult:
    trials: int
    err_a: float
    err_b: float
    err_any: float

    def half_width(self, which="any") -> float:
        """95% normal-approximation half-width for ``err_a``, ``err_b`` or ``err_any``."""
        p = getattr(self, f"err_{which}")
        return 1.96 * math.sqrt(p * (1 - p) / self.trials)

    @property
    def ci95(self) -> float:
        """Widest of the three stage half-widths."""
        return max(self.half_width(w) for w in ("a", "b", "any"))


def decoder_channels(ch: Channel, split: SplitSpec):
    """Stage-one effective channels ``p(y|x_a)`` and ``p(y|x_b)``."""
    return (effective_channel(split.p_b, split.f, ch, keep="a"),
            effective_channel(split.p_a, split.f, ch, keep="b"))


def _log(m: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(m)


def _ml(codebook: np.ndarray, n_sym: int, V: np.ndarray) -> np.ndarray:
    """ML index per trial.

    ``V[t, i, s]`` is the log-likelihood of symbol ``s`` at position ``i`` in
    trial ``t``; codeword scores are sums over positions, computed as one-hot
    products with impossible transitions tracked separately so that they score
    exactly ``-inf``.
    """
    M, n = codebook.shape
    T = V.shape[0]
    onehot = np.zeros((M, n * n_sym))
    onehot[np.arange(M)[:, None], np.arange(n) * n_sym + codebook] = 1.0
    V = V.reshape(T, n * n_sym)
    impossible = np.isneginf(V)
    finite = np.where(impossible, 0.0, V)
    step = max(1, _CHUNK_CELLS // M)
    out = np.empty(T, dtype=np.intp)
    for s in range(0, T, step):
        score = finite[s:s + step] @ onehot.T
        bad = impossible[s:s + step].astype(float) @ onehot.T
        # BLAS summation order is not fixed; rounding restores exact ties
        score = np.round(score, _TIE_DECIMALS)
        score[bad > 0] = -np.inf
        # argmax returns the first maximum: ties go to the lowest index
        out[s:s + step] = np.argmax(score, axis=1)
    return out


def simulate_successive(ch: Channel, spec: CodebookSpec, order: str = "ab",
                        trials: int = 1000, seed: int = 0) -> ExperimentResult:
    """Send uniform message pairs and decode them one after the other.

    The first stage decodes its message against the single-user channel with
    the other component averaged out; the second stage decodes the remaining
    message given the first-stage decision. Second-stage errors are counted
    even when the first stage erred.
    """
    if order not in ("ab", "ba"):
        raise ValueError("order must be 'ab' or 'ba'")
    if trials < 1:
        raise ValueError("trials must be positive")
    split = spec.split
    fidx = split.f.index_table(ch.input_support)
    if fidx.shape != (len(split.p_a), len(split.p_b)):
        raise ValidationError("mix function does not match the split supports")
    cb = generate_codebook(spec)
    M_a, M_b, n = spec.M_a, spec.M_b, spec.n

    u = _stream(seed, _STREAM_TRIALS).random((trials, n + 2))
    ma = np.minimum((u[:, 0] * M_a).astype(np.intp), M_a - 1)
    mb = np.minimum((u[:, 1] * M_b).astype(np.intp), M_b - 1)
    x = fidx[cb.xa[ma], cb.xb[mb]]  # (trials, n) channel input indices
    cum = np.cumsum(ch.matrix, axis=1)
    y = np.minimum((u[:, 2:, None] >= cum[x]).sum(axis=-1), len(ch.output_support) - 1)

    eff_a, eff_b = decoder_channels(ch, split)
    log_ch = _log(ch.matrix)

    if order == "ab":
        first_cb, log_eff, second_cb = cb.xa, _log(eff_a.matrix), cb.xb
    else:
        first_cb, log_eff, second_cb = cb.xb, _log(eff_b.matrix), cb.xa

    # stage 1: V[t, i, s] = log p_eff(y_ti | s)
    m1 = _ml(first_cb, log_eff.shape[0], log_eff.T[y])
    known = first_cb[m1]  # (trials, n) decided component symbols
    # stage 2: the input symbol is f(known, s) or f(s, known)
    mix = fidx if order == "ab" else fidx.T
    xin = mix[known]  # (trials, n, |second support|)
    m2 = _ml(second_cb, mix.shape[1], log_ch[xin, y[:, :, None]])
    ha, hb = (m1, m2) if order == "ab" else (m2, m1)
    ea, eb = ha != ma, hb != mb
    return ExperimentResult(trials, float(ea.mean()), float(eb.mean()), float((ea | eb).mean()))


def error_vs_n(ch: Channel, template: CodebookSpec, n_list, trials: int, seed: int = 0,
               order: str = "ab") -> list:
    """``[(n, ExperimentResult), ...]`` for each block length, same seeds throughout."""
    specs = [replace(template, n=int(n)) for n in n_list]
    for s in specs:
        if s.M_a * s.M_b > s.budget:
            raise BudgetError(s.M_a * s.M_b, s.budget)
    return [(s.n, simulate_successive(ch, s, order, trials, seed)) for s in specs]


def table_to_csv(rows) -> str:
    lines = ["n,err_a,err_b,err_any,ci95"]
    for n, r in rows:
        lines.append(f"{n},{r.err_a:.6f},{r.err_b:.6f},{r.err_any:.6f},{r.ci95:.6f}")
    return "\n".join(lines) + "\n"


def table_from_csv(text: str) -> list:
    rows = [ln for ln in text.splitlines() if ln.strip()]
    if rows[0] != "n,err_a,err_b,err_any,ci95":
        raise ValueError("unexpected header")
    out = []
    for ln in rows[1:]:
        n, a, b, e, c = ln.split(",")
        out.append({"n": int(n), "err_a": float(a), "err_b": float(b),
                    "err_any": float(e), "ci95": float(c)})
    return out
