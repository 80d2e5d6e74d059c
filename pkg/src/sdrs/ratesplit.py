"""
Rate-splitting codebooks and successive decodability.

A split codebook sends ``f(x_a, x_b)`` symbol by symbol, where the two component
codebooks are drawn independently from ``p_a`` and ``p_b``. Whether a receiver
can peel the two messages off one at a time depends on the mutual-information
bundle collected in :class:`SplitAnalysis`, not only on ``I(X;Y)``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .prob import (Channel, MixFunction, ProbVec, ValidationError,
                   broken_typewriter, compose, conditional_mutual_information,
                   mix_joint, msb_channel, mutual_information)

# Example 1 reference values are 6-digit truncations; verdicts are evaluated
# this far below them so the truncation direction cannot flip the outcome.
RATE_GUARD = 1e-6


@dataclass(frozen=True)
class SplitSpec:
    p_a: ProbVec
    p_b: ProbVec
    f: MixFunction
    epsilon: Optional[float] = None


@dataclass(frozen=True)
class RatePair:
    R_a: float
    R_b: float

    def __post_init__(self):
        if self.R_a < 0 or self.R_b < 0:
            raise ValueError(f"rates must be nonnegative, got ({self.R_a}, {self.R_b})")

    @property
    def total(self) -> float:
        return self.R_a + self.R_b


@dataclass(frozen=True)
class SplitAnalysis:
    """Mutual informations (bits per channel use) of a split codebook at one receiver."""

    i_a_y: float
    i_b_y_given_a: float
    i_b_y: float
    i_a_y_given_b: float
    i_x_y: float
    i_b_ya: float
    i_a_yb: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DecodeVerdict:
    order_ab_ok: bool
    order_ba_ok: bool
    any_strategy_possible: bool
    binding_constraints: list = field(default_factory=list)
    margins: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"order_ab_ok": self.order_ab_ok,
                "order_ba_ok": self.order_ba_ok,
                "any_strategy_possible": self.any_strategy_possible,
                "binding_constraints": [list(c) for c in self.binding_constraints],
                "margins": dict(self.margins)}


def _from_survival(G: np.ndarray) -> np.ndarray:
    p = G - np.append(G[1:], 0.0)
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def min_split(p_x: ProbVec, epsilon: float):
    """Split ``p_x`` into two independent components whose minimum is ``X``.

    Component ``U`` equals an ``X``-distributed draw with probability
    ``epsilon`` and the largest symbol otherwise, so its survival function is
    ``G_U = 1 - epsilon + epsilon * G``. The other component takes
    ``G_V = G / G_U`` so that ``P(min(U, V) >= x) = G(x)``.

    Returns
    -------
    (p_U, p_V, f) with ``f = min`` under the support order.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    G = p_x.survival()
    G[0] = 1.0
    G_u = 1.0 - epsilon + epsilon * G
    with np.errstate(divide="ignore", invalid="ignore"):
        G_v = np.where(G_u > 0, G / G_u, 1.0)
    # G_u can only vanish on a zero-probability tail at epsilon = 1
    G_v = np.where(G_u > 0, G_v, 1.0)
    sup = p_x.support
    order = {x: k for k, x in enumerate(sup)}
    f = MixFunction.from_callable(lambda u, v: u if order[u] <= order[v] else v, sup, sup)
    return ProbVec(sup, _from_survival(G_u)), ProbVec(sup, _from_survival(G_v)), f


def make_split(p_x: ProbVec, epsilon: float) -> SplitSpec:
    p_u, p_v, f = min_split(p_x, epsilon)
    return SplitSpec(p_u, p_v, f, epsilon)


def split_quantities(spec: SplitSpec, ch: Channel) -> SplitAnalysis:
    j = mix_joint(spec.p_a, spec.p_b, spec.f, ch)
    cmi = conditional_mutual_information
    return SplitAnalysis(
        i_a_y=mutual_information(j, "Xa", "Y"),
        i_b_y_given_a=cmi(j, "Xb", "Y", "Xa"),
        i_b_y=mutual_information(j, "Xb", "Y"),
        i_a_y_given_b=cmi(j, "Xa", "Y", "Xb"),
        i_x_y=mutual_information(j, ("Xa", "Xb"), "Y"),
        i_b_ya=mutual_information(j, "Xb", ("Y", "Xa")),
        i_a_yb=mutual_information(j, "Xa", ("Y", "Xb")),
    )


def successive_decodable(analysis: SplitAnalysis, rates: RatePair) -> DecodeVerdict:
    """Check both successive orders and the joint-decoding region.

    Margins are ``bound - rate`` in bits; ``binding_constraints`` lists the ones
    that are not strictly satisfied, tightest first. A zero rate needs no
    decoding and always passes.
    """
    a, Ra, Rb = analysis, rates.R_a, rates.R_b
    margins = {
        "ab:R_a<I(Xa;Y)": a.i_a_y - Ra,
        "ab:R_b<I(Xb;Y|Xa)": a.i_b_y_given_a - Rb,
        "ba:R_b<I(Xb;Y)": a.i_b_y - Rb,
        "ba:R_a<I(Xa;Y|Xb)": a.i_a_y_given_b - Ra,
        "any:R_a<I(Xa;Y,Xb)": a.i_a_yb - Ra,
        "any:R_b<I(Xb;Y,Xa)": a.i_b_ya - Rb,
        "any:R_a+R_b<I(X;Y)": a.i_x_y - (Ra + Rb),
    }

    def ok(name, rate):
        return rate == 0 or margins[name] > 0

    ab = ok("ab:R_a<I(Xa;Y)", Ra) and ok("ab:R_b<I(Xb;Y|Xa)", Rb)
    ba = ok("ba:R_b<I(Xb;Y)", Rb) and ok("ba:R_a<I(Xa;Y|Xb)", Ra)
    joint = (ok("any:R_a<I(Xa;Y,Xb)", Ra) and ok("any:R_b<I(Xb;Y,Xa)", Rb)
             and ok("any:R_a+R_b<I(X;Y)", Ra + Rb))
    binding = sorted(((k, v) for k, v in margins.items() if v <= 0), key=lambda kv: kv[1])
    return DecodeVerdict(ab, ba, joint or ab or ba, binding, margins)


def sweep_epsilon(p_x: ProbVec, channels: Sequence[Channel], grid: int, executor=None):
    """Evaluate the min split at ``grid`` evenly spaced epsilons in [0, 1].

    Returns a list of ``(epsilon, [SplitAnalysis per channel])`` ordered by
    epsilon. ``executor`` may be any ``concurrent.futures`` executor.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    eps = [k / (grid - 1) for k in range(grid)]

    def row(e):
        spec = make_split(p_x, e)
        return e, [split_quantities(spec, ch) for ch in channels]

    if executor is None:
        return [row(e) for e in eps]
    return list(executor.map(row, eps))


# -- the two-receiver counterexample -----------------------------------------

EXAMPLE1_EPSILON = 0.5
EXAMPLE1_RATES = (0.270838, 0.729161)

# (key, receiver, field, relation, reference value)
EXAMPLE1_BOUNDS = (
    ("I(Xa;Y1)", 1, "i_a_y", ">", 0.270838),
    ("I(Xb;Y1|Xa)", 1, "i_b_y_given_a", ">", 0.729161),
    ("I(Xa;Y2)", 2, "i_a_y", "<", 0.311279),
    ("I(Xb;Y2|Xa)", 2, "i_b_y_given_a", "<", 0.688722),
    ("I(Xb;Y2)", 2, "i_b_y", "<", 0.459148),
    ("I(Xa;Y2|Xb)", 2, "i_a_y_given_b", "<", 0.540853),
)


@dataclass
class Claim:
    name: str
    confirmed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    relation: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Example1Report:
    epsilon: float
    rates: RatePair
    p_a: ProbVec
    p_b: ProbVec
    i_x_y1: float
    i_x_y2: float
    receiver1: SplitAnalysis
    receiver2: SplitAnalysis
    verdict1: DecodeVerdict
    verdict2: DecodeVerdict
    claims: list
    subscript_note: dict

    @property
    def all_confirmed(self) -> bool:
        return all(c.confirmed for c in self.claims)

    def refuted(self) -> list:
        return [c for c in self.claims if not c.confirmed]

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "rates": {"R_a": self.rates.R_a, "R_b": self.rates.R_b},
            "p_a": self.p_a.to_dict(),
            "p_b": self.p_b.to_dict(),
            "i_x_y1": self.i_x_y1,
            "i_x_y2": self.i_x_y2,
            "receiver1": self.receiver1.to_dict(),
            "receiver2": self.receiver2.to_dict(),
            "verdict1": self.verdict1.to_dict(),
            "verdict2": self.verdict2.to_dict(),
            "claims": [c.to_dict() for c in self.claims],
            "subscript_note": dict(self.subscript_note),
            "all_confirmed": self.all_confirmed,
        }


def example1_report(epsilon: float = EXAMPLE1_EPSILON, rates=EXAMPLE1_RATES,
                    guard: float = RATE_GUARD) -> Example1Report:
    """Rebuild the broken-typewriter / MSB counterexample and check every bound.

    The ``>`` and ``<`` bounds are accepted within ``guard`` of the reference
    (truncated) value. Verdicts use the reference rates reduced by ``guard``.
    """
    p_x = ProbVec.uniform(range(4))
    ch1, ch2 = broken_typewriter(), msb_channel()
    spec = make_split(p_x, epsilon)
    rx = {1: split_quantities(spec, ch1), 2: split_quantities(spec, ch2)}
    i1 = mutual_information(compose(p_x, ch1), "X", "Y")
    i2 = mutual_information(compose(p_x, ch2), "X", "Y")

    claims = [Claim("I(X;Y1)=1", abs(i1 - 1) < 1e-10, i1, 1.0, "="),
              Claim("I(X;Y2)=1", abs(i2 - 1) < 1e-10, i2, 1.0, "=")]
    for key, r, fld, rel, bound in EXAMPLE1_BOUNDS:
        v = getattr(rx[r], fld)
        ok = v > bound - guard if rel == ">" else v < bound + guard
        claims.append(Claim(f"{key}{rel}{bound}", bool(ok), v, bound, rel))

    rp = RatePair(max(rates[0] - guard, 0.0), max(rates[1] - guard, 0.0))
    v1 = successive_decodable(rx[1], rp)
    v2 = successive_decodable(rx[2], rp)
    claims += [
        Claim("Rx1 decodes a then b", v1.order_ab_ok),
        Claim("Rx2 a then b: m_a decodable", v2.margins["ab:R_a<I(Xa;Y)"] > 0),
        Claim("Rx2 a then b fails on m_b", not v2.order_ab_ok
              and v2.margins["ab:R_b<I(Xb;Y|Xa)"] < 0),
        Claim("Rx2 b then a fails", not v2.order_ba_ok),
        Claim("Rx2 cannot decode by any strategy: R_b > I(Xb;Y2,Xa)",
              not v2.any_strategy_possible and v2.margins["any:R_b<I(Xb;Y,Xa)"] < 0),
    ]
    # The m_b bound for receiver 1 is sometimes quoted with Y2; only Y1 fits.
    note = {"bound": "I(Xb;Y2|Xa) > 0.729161",
            "value_with_Y1": rx[1].i_b_y_given_a,
            "value_with_Y2": rx[2].i_b_y_given_a,
            "matches": "Y1" if rx[1].i_b_y_given_a > 0.729161 - guard
            and not rx[2].i_b_y_given_a > 0.729161 - guard else "neither"}
    return Example1Report(epsilon, rp, spec.p_a, spec.p_b, i1, i2, rx[1], rx[2],
                          v1, v2, claims, note)
