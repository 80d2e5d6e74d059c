"""
Switch-based four-way split of sender 2's message.

The four sub-codebooks of sender 2 occupy disjoint position classes chosen by
two i.i.d. switches, ``S_h`` (left/right) and ``S_v`` (top/bottom)::

            S_h = l   S_h = r
    S_v = t   m2a       m2b
    S_v = b   m2c       m2d

Receiver 1 decodes ``(m2a, m2b) -> m1 -> (m2c, m2d)``, receiver 2 decodes
``(m2a, m2c) -> m1 -> (m2b, m2d)``. Switch sequences are known to everyone
and the rate caps use their expected position fractions.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .prob import (Channel, JointDist, ProbVec, ValidationError,
                   conditional_mutual_information, mutual_information)

PARTS = ("a", "b", "c", "d")
RATE_TOL = 1e-12


@dataclass(frozen=True)
class SwitchSpec:
    p_h: float  # P(S_h = l)
    p_v: float  # P(S_v = t)

    def __post_init__(self):
        if not (0 <= self.p_h <= 1 and 0 <= self.p_v <= 1):
            raise ValueError("switch probabilities must lie in [0, 1]")


@dataclass(frozen=True)
class GridRates:
    R2a: float = 0.0
    R2b: float = 0.0
    R2c: float = 0.0
    R2d: float = 0.0
    R1: float = 0.0

    def __post_init__(self):
        if min(asdict(self).values()) < 0:
            raise ValueError("rates must be nonnegative")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class DiscreteIC:
    """Two senders, two receivers; each receiver's channel has pair inputs ``(x1, x2)``."""

    p_x1: ProbVec
    p_x2: ProbVec
    ch1: Channel
    ch2: Channel

    def __post_init__(self):
        pairs = tuple(itertools.product(self.p_x1.support, self.p_x2.support))
        for name, ch in (("ch1", self.ch1), ("ch2", self.ch2)):
            if tuple(map(tuple, ch.input_support)) != pairs:
                raise ValidationError(
                    f"{name} input support must be the product of the sender supports, "
                    f"in row-major order")

    def joint(self, receiver: int) -> JointDist:
        ch = self.ch1 if receiver == 1 else self.ch2
        n1, n2 = len(self.p_x1), len(self.p_x2)
        rows = ch.matrix.reshape(n1, n2, -1)
        t = self.p_x1.probs[:, None, None] * self.p_x2.probs[None, :, None] * rows
        return JointDist(("X1", "X2", "Y"),
                         (self.p_x1.support, self.p_x2.support, ch.output_support), t)

    def letter_info(self, receiver: int) -> dict:
        """Per-letter mutual informations at one receiver."""
        j = self.joint(receiver)
        return {"I(X2;Y)": mutual_information(j, "X2", "Y"),
                "I(X2;Y|X1)": conditional_mutual_information(j, "X2", "Y", "X1"),
                "I(X1;Y)": mutual_information(j, "X1", "Y"),
                "I(X1;Y|X2)": conditional_mutual_information(j, "X1", "Y", "X2")}

    def to_dict(self) -> dict:
        d = {"p_x1": self.p_x1.to_dict(), "p_x2": self.p_x2.to_dict(),
             "ch1": self.ch1.to_dict(), "ch2": self.ch2.to_dict()}
        for k in ("ch1", "ch2"):
            d[k]["support_in"] = [list(p) for p in d[k]["support_in"]]
        return d


def stage_fractions(sw: SwitchSpec):
    """Expected fraction of positions carried by parts a, b, c, d."""
    h, v = sw.p_h, sw.p_v
    return (v * h, v * (1 - h), (1 - v) * h, (1 - v) * (1 - h))


@dataclass(frozen=True)
class StageCap:
    receiver: int
    stage: int
    message: str  # "R2a" ... "R2d" or "R1"
    fraction: float
    letter_info: float
    cap: float

    @property
    def name(self) -> str:
        return f"{self.message} vs Rx{self.receiver}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["name"] = self.name
        return d


# (stage, parts decoded) per receiver, before and after m1; within a stage parts go in
# alphabetical order, which leaves the caps unchanged as the parts occupy
# disjoint positions.
_ORDER = {1: ((1, ("a", "b")), (3, ("c", "d"))),
          2: ((1, ("a", "c")), (3, ("b", "d")))}


def stage_constraints(ic: DiscreteIC, sw: SwitchSpec) -> list:
    """Rate cap of every message at every stage of both receivers, in decode order."""
    frac = dict(zip(PARTS, stage_fractions(sw)))
    out = []
    for rx in (1, 2):
        info = ic.letter_info(rx)
        (s1, first), (s3, last) = _ORDER[rx]
        for p in first:
            out.append(StageCap(rx, s1, f"R2{p}", frac[p], info["I(X2;Y)"],
                                frac[p] * info["I(X2;Y)"]))
        # m1 sees X2 known on the positions of the parts already decoded
        known = sum(frac[p] for p in first)
        cap1 = known * info["I(X1;Y|X2)"] + (1 - known) * info["I(X1;Y)"]
        out.append(StageCap(rx, 2, "R1", 1.0, cap1, cap1))
        for p in last:
            out.append(StageCap(rx, s3, f"R2{p}", frac[p], info["I(X2;Y|X1)"],
                                frac[p] * info["I(X2;Y|X1)"]))
    return out


def caps_by_receiver(table) -> dict:
    return {rx: {c.message: c.cap for c in table if c.receiver == rx} for rx in (1, 2)}


@dataclass
class FeasibilityReport:
    checks: list
    first_failure: dict = field(default_factory=dict)  # receiver -> (name, margin) or None

    @property
    def feasible(self) -> bool:
        return all(v is None for v in self.first_failure.values())

    def to_dict(self) -> dict:
        return {"feasible": self.feasible,
                "first_failure": {f"Rx{k}": (None if v is None else {"name": v[0], "margin": v[1]})
                                  for k, v in self.first_failure.items()},
                "checks": self.checks}


def feasibility_check(ic: DiscreteIC, sw: SwitchSpec, rates: GridRates) -> FeasibilityReport:
    """Check every rate against its cap, stage by stage, at both receivers.

    A rate equal to its cap counts as achievable (closure of the region).
    """
    table = stage_constraints(ic, sw)
    r = rates.to_dict()
    checks, first = [], {1: None, 2: None}
    for c in table:
        rate = r[c.message]
        margin = c.cap - rate
        ok = rate == 0 or margin >= -RATE_TOL
        checks.append({"name": c.name, "stage": c.stage, "rate": rate,
                       "cap": c.cap, "margin": margin, "ok": ok})
        if not ok and first[c.receiver] is None:
            first[c.receiver] = (c.name, margin)
    return FeasibilityReport(checks, first)


def receiver_rates(ic: DiscreteIC, sw: SwitchSpec, receiver: int) -> GridRates:
    """Every rate set at one receiver's cap."""
    caps = caps_by_receiver(stage_constraints(ic, sw))[receiver]
    return GridRates(**caps)


def common_rates(ic: DiscreteIC, sw: SwitchSpec, slack: float = 0.0) -> GridRates:
    """Componentwise minimum of the two receivers' caps, less ``slack``."""
    caps = caps_by_receiver(stage_constraints(ic, sw))
    return GridRates(**{k: max(min(caps[1][k], caps[2][k]) - slack, 0.0) for k in caps[1]})


# -- demo fixture ------------------------------------------------------------

def _random_channel(rng, n_in, n_out):
    rows = np.round(rng.dirichlet(np.ones(n_out), size=n_in), 3)
    rows[:, -1] = 1.0 - rows[:, :-1].sum(axis=1)
    return rows


def random_binary_ic(rng) -> DiscreteIC:
    px1 = ProbVec((0, 1), [0.5, 0.5])
    px2 = ProbVec((0, 1), [0.5, 0.5])
    pairs = tuple(itertools.product((0, 1), (0, 1)))
    ch1 = Channel(pairs, (0, 1), _random_channel(rng, 4, 2))
    ch2 = Channel(pairs, (0, 1), _random_channel(rng, 4, 2))
    return DiscreteIC(px1, px2, ch1, ch2)


def search_fixture(seed: int = 2011, min_gap: float = 0.1, max_tries: int = 10_000):
    """First seed-indexed random binary IC where receiver 1 is the bottleneck for m2b.

    Accepts when ``I(X2;Y2|X1) - I(X2;Y1) >= min_gap`` (receiver 2 supports a
    larger m2b than receiver 1 can decode first) and ``I(X2;Y2) <= I(X2;Y1)``
    (so m2a, set for receiver 2, still passes at receiver 1).
    Returns ``(index, ic)``.
    """
    for k in range(max_tries):
        ic = random_binary_ic(np.random.default_rng([seed, k]))
        i1, i2 = ic.letter_info(1), ic.letter_info(2)
        if i2["I(X2;Y|X1)"] - i1["I(X2;Y)"] >= min_gap and i2["I(X2;Y)"] <= i1["I(X2;Y)"]:
            return k, ic
    raise RuntimeError("no fixture found")
