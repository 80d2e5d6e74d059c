"""
Exact finite-alphabet probability algebra.

Distributions, channels and dense joint tables, together with entropy and
(conditional) mutual information in bits. Everything here is immutable once
built; the arrays held by the dataclasses are marked read-only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

MASS_TOL = 1e-12
CLAMP_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when a distribution, channel or joint table is malformed."""


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _check_labels(labels, what):
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValidationError(f"{what} labels are not distinct: {labels}")
    if not labels:
        raise ValidationError(f"{what} is empty")
    return labels


def _check_mass(p: np.ndarray, what: str):
    if not np.all(np.isfinite(p)):
        raise ValidationError(f"{what} has non-finite weights")
    if np.any(p < 0):
        raise ValidationError(f"{what} has a negative weight (min {p.min():.3g})")
    s = p.sum()
    if abs(s - 1.0) > MASS_TOL:
        raise ValidationError(f"{what} has total mass {s!r}, expected 1")


@dataclass(frozen=True, eq=False)
class ProbVec:
    """Probability vector over an ordered alphabet."""

    support: tuple
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "support", _check_labels(self.support, "support"))
        p = _frozen(self.probs)
        if p.shape != (len(self.support),):
            raise ValidationError(
                f"probs has shape {p.shape}, support has {len(self.support)} symbols")
        _check_mass(p, "distribution")
        object.__setattr__(self, "probs", p)

    def __len__(self):
        return len(self.support)

    def __getitem__(self, label):
        return float(self.probs[self.index(label)])

    def index(self, label) -> int:
        try:
            return self.support.index(label)
        except ValueError:
            raise KeyError(label) from None

    @classmethod
    def uniform(cls, support: Iterable[Hashable]) -> "ProbVec":
        support = tuple(support)
        return cls(support, np.full(len(support), 1.0 / len(support)))

    @classmethod
    def point_mass(cls, support: Iterable[Hashable], label) -> "ProbVec":
        support = tuple(support)
        p = np.zeros(len(support))
        p[support.index(label)] = 1.0
        return cls(support, p)

    def survival(self) -> np.ndarray:
        """``G[k] = P(X >= support[k])`` under the support order."""
        return np.cumsum(self.probs[::-1])[::-1]

    def to_dict(self) -> dict:
        return {"support": list(self.support), "probs": self.probs.tolist()}


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic transition matrix, ``matrix[i, j] = p(y_j | x_i)``."""

    input_support: tuple
    output_support: tuple
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "input_support",
                           _check_labels(self.input_support, "input support"))
        object.__setattr__(self, "output_support",
                           _check_labels(self.output_support, "output support"))
        m = _frozen(self.matrix)
        shape = (len(self.input_support), len(self.output_support))
        if m.shape != shape:
            raise ValidationError(f"matrix has shape {m.shape}, expected {shape}")
        for i, row in enumerate(m):
            _check_mass(row, f"row {i} of channel")
        object.__setattr__(self, "matrix", m)

    def row(self, x) -> np.ndarray:
        return self.matrix[self.input_support.index(x)]

    def to_dict(self) -> dict:
        return {"support_in": list(self.input_support),
                "support_out": list(self.output_support),
                "rows": self.matrix.tolist()}


@dataclass(frozen=True, eq=False)
class JointDist:
    """Dense joint table over named axes.

    ``table`` has one array dimension per entry of ``axes``; ``supports[k]`` lists
    the labels along dimension ``k``.
    """

    axes: tuple
    supports: tuple
    table: np.ndarray

    def __post_init__(self):
        axes = _check_labels(self.axes, "axis")
        supports = tuple(_check_labels(s, f"support of {a!r}")
                         for a, s in zip(axes, self.supports))
        if len(supports) != len(axes):
            raise ValidationError("one support per axis is required")
        t = _frozen(self.table)
        if t.shape != tuple(len(s) for s in supports):
            raise ValidationError(f"table shape {t.shape} does not match supports")
        _check_mass(t.ravel(), "joint table")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "supports", supports)
        object.__setattr__(self, "table", t)

    def _dims(self, names) -> tuple:
        names = _as_axes(names)
        out = []
        for a in names:
            if a not in self.axes:
                raise KeyError(f"unknown axis {a!r}; have {self.axes}")
            out.append(self.axes.index(a))
        return tuple(out)

    def marginal(self, names) -> "JointDist":
        """Joint of the listed axes, in the order given."""
        dims = self._dims(names)
        drop = tuple(d for d in range(len(self.axes)) if d not in dims)
        t = self.table.sum(axis=drop)
        # sum() keeps remaining dims in ascending order; reorder to request
        kept = sorted(dims)
        t = np.transpose(t, [kept.index(d) for d in dims])
        return JointDist(tuple(self.axes[d] for d in dims),
                         tuple(self.supports[d] for d in dims), t)

    def entropy(self, names=None) -> float:
        t = self.table if names is None else self.marginal(names).table
        return _entropy_bits(t.ravel())


def _as_axes(names) -> tuple:
    if isinstance(names, str):
        return (names,)
    return tuple(names)


def _entropy_bits(p: np.ndarray) -> float:
    p = p[p > 0]
    return max(0.0, float(-(p * np.log2(p)).sum()))


def _clamp(v: float) -> float:
    if v < 0:
        if v < -CLAMP_TOL:
            # larger negatives mean the table was not a valid joint
            raise ArithmeticError(f"negative information quantity {v!r}")
        return 0.0
    return v


def entropy(p: ProbVec | Sequence[float]) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    if not isinstance(p, ProbVec):
        p = ProbVec(tuple(range(len(p))), p)
    return _entropy_bits(p.probs)


def compose(p_x: ProbVec, ch: Channel, names=("X", "Y")) -> JointDist:
    """Joint of input and output, ``p(x, y) = p(x) p(y|x)``."""
    if p_x.support != ch.input_support:
        raise ValidationError("distribution support does not match channel input support")
    return JointDist(tuple(names), (p_x.support, ch.output_support),
                     p_x.probs[:, None] * ch.matrix)


def mutual_information(j: JointDist, a, b) -> float:
    """I(A;B) in bits; ``a`` and ``b`` are axis names or tuples of names."""
    a, b = _as_axes(a), _as_axes(b)
    if set(a) & set(b):
        raise ValueError(f"axis sets overlap: {a} and {b}")
    j._dims(a + b)
    return _clamp(j.entropy(a) + j.entropy(b) - j.entropy(a + b))


def conditional_mutual_information(j: JointDist, a, b, c) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)."""
    a, b, c = _as_axes(a), _as_axes(b), _as_axes(c)
    if set(a) & set(b) or set(a) & set(c) or set(b) & set(c):
        raise ValueError(f"axis sets must be disjoint: {a}, {b}, {c}")
    if not c:
        return mutual_information(j, a, b)
    j._dims(a + b + c)
    return _clamp(j.entropy(a + c) + j.entropy(b + c)
                  - j.entropy(a + b + c) - j.entropy(c))


@dataclass(frozen=True, eq=False)
class MixFunction:
    """Total map ``(x_a, x_b) -> x`` stored as a label table."""

    support_a: tuple
    support_b: tuple
    table: tuple  # table[i][k] = f(support_a[i], support_b[k])

    def __post_init__(self):
        object.__setattr__(self, "support_a", _check_labels(self.support_a, "support_a"))
        object.__setattr__(self, "support_b", _check_labels(self.support_b, "support_b"))
        tbl = tuple(tuple(r) for r in self.table)
        if len(tbl) != len(self.support_a) or any(len(r) != len(self.support_b) for r in tbl):
            raise ValidationError("mix table must cover every (x_a, x_b) pair")
        object.__setattr__(self, "table", tbl)

    @classmethod
    def from_callable(cls, f: Callable, support_a, support_b) -> "MixFunction":
        support_a, support_b = tuple(support_a), tuple(support_b)
        return cls(support_a, support_b,
                   tuple(tuple(f(xa, xb) for xb in support_b) for xa in support_a))

    def __call__(self, xa, xb):
        return self.table[self.support_a.index(xa)][self.support_b.index(xb)]

    def index_table(self, target_support) -> np.ndarray:
        """``out[i, k]`` = position of ``f(a_i, b_k)`` in ``target_support``."""
        target = tuple(target_support)
        try:
            return np.array([[target.index(x) for x in row] for row in self.table], dtype=np.intp)
        except ValueError:
            raise ValidationError("mix function output outside channel input support") from None


def mix_joint(p_a: ProbVec, p_b: ProbVec, f: MixFunction, ch: Channel,
              names=("Xa", "Xb", "Y")) -> JointDist:
    """Joint of (X_a, X_b, Y) with ``p(x_a) p(x_b) p(y | f(x_a, x_b))``."""
    if p_a.support != f.support_a or p_b.support != f.support_b:
        raise ValidationError("component supports do not match the mix function")
    idx = f.index_table(ch.input_support)
    t = p_a.probs[:, None, None] * p_b.probs[None, :, None] * ch.matrix[idx]
    return JointDist(tuple(names), (p_a.support, p_b.support, ch.output_support), t)


def effective_channel(p_other: ProbVec, f: MixFunction, ch: Channel, keep="a") -> Channel:
    """Single-user channel seen by one component with the other averaged out.

    ``keep="a"`` gives ``p(y|x_a) = sum_b p(x_b) p(y | f(x_a, x_b))``.
    """
    idx = f.index_table(ch.input_support)
    rows = ch.matrix[idx]  # (|A|, |B|, |Y|)
    if keep == "a":
        m = np.einsum("b,aby->ay", p_other.probs, rows)
        sup = f.support_a
    elif keep == "b":
        m = np.einsum("a,aby->by", p_other.probs, rows)
        sup = f.support_b
    else:
        raise ValueError("keep must be 'a' or 'b'")
    return Channel(sup, ch.output_support, m)


# -- concrete channels -------------------------------------------------------

def broken_typewriter(q: int = 4) -> Channel:
    """Input i goes to output i or i+1 mod q with probability 1/2 each."""
    m = np.zeros((q, q))
    for i in range(q):
        m[i, i] += 0.5
        m[i, (i + 1) % q] += 0.5
    return Channel(tuple(range(q)), tuple(range(q)), m)


def msb_channel() -> Channel:
    """Deterministic map from {0,1,2,3} to its most significant bit."""
    m = np.zeros((4, 2))
    m[[0, 1], 0] = 1.0
    m[[2, 3], 1] = 1.0
    return Channel((0, 1, 2, 3), (0, 1), m)


def bsc(p: float) -> Channel:
    return Channel((0, 1), (0, 1), [[1 - p, p], [p, 1 - p]])


def identity_channel(support) -> Channel:
    support = tuple(support)
    return Channel(support, support, np.eye(len(support)))
