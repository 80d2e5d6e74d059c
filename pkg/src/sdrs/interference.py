"""
Rate regions of the two-user Gaussian interference channel.

Receiver ``j`` observes ``sum_i g_ij x_i + z_j`` with ``E x_i^2 <= P_i`` and
``E z_j^2 = N_j``. Two regions are built:

* the capacity region under strong interference, i.e. the intersection of
  the MAC regions seen by the two receivers (:func:`hk_strong_region`);
* the region reachable by rate splitting with successive decoding, where
  sender 1's split is tuned for receiver 2 and sender 2's for receiver 1,
  and every rate must respect both receivers (:func:`sdrs_region`).

Splits are realized by superposing independent Gaussian components, and
undecoded components are treated as noise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import shapely
from shapely.geometry import Point, Polygon

CONTAIN_TOL = 1e-9


def gaussian_capacity(snr):
    """``0.5 * log2(1 + snr)`` bits per real channel use."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0):
        raise ValueError("snr must be nonnegative")
    out = 0.5 * np.log2(1.0 + snr)
    return float(out) if out.ndim == 0 else out


C = gaussian_capacity


@dataclass(frozen=True)
class GaussianIC:
    P1: float
    P2: float
    N1: float
    N2: float
    g11: float
    g12: float
    g21: float
    g22: float

    def __post_init__(self):
        for name in ("P1", "P2", "N1", "N2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def figure1(cls) -> "GaussianIC":
        """P = 2 at both senders, N = (0.35, 0.3), direct gain^2 0.3, cross 0.6."""
        return cls(P1=2.0, P2=2.0, N1=0.35, N2=0.3,
                   g11=np.sqrt(0.3), g12=np.sqrt(0.6), g21=np.sqrt(0.6), g22=np.sqrt(0.3))

    def mirrored(self) -> "GaussianIC":
        """Swap the labels of the two sender/receiver pairs."""
        return GaussianIC(self.P2, self.P1, self.N2, self.N1,
                          self.g22, self.g21, self.g12, self.g11)

    def to_dict(self) -> dict:
        return {k: float(getattr(self, k)) for k in
                ("P1", "P2", "N1", "N2", "g11", "g12", "g21", "g22")}


@dataclass(frozen=True)
class PowerSplit:
    beta: float
    gamma: float

    def __post_init__(self):
        if not (0 <= self.beta <= 1 and 0 <= self.gamma <= 1):
            raise ValueError("beta and gamma must lie in [0, 1]")


@dataclass(frozen=True)
class RateQuadruple:
    R1a: float
    R1b: float
    R2a: float
    R2b: float

    @property
    def R1(self):
        return self.R1a + self.R1b

    @property
    def R2(self):
        return self.R2a + self.R2b


class RateRegion:
    """Convex, downward-closed polygon of rate pairs.

    ``boundary`` is an ``(k, 2)`` array of vertices in counter-clockwise order
    starting at the origin.
    """

    def __init__(self, boundary, label="", grid=None):
        b = np.asarray(boundary, dtype=float).reshape(-1, 2)
        if np.any(b < -CONTAIN_TOL):
            raise ValueError("rate region vertices must be nonnegative")
        b = np.clip(b, 0.0, None)
        b.setflags(write=False)
        self.boundary = b
        self.label = label
        self.grid = grid

    def __repr__(self):
        return f"RateRegion({self.label!r}, {len(self.boundary)} vertices)"

    @classmethod
    def from_points(cls, pts, label="", grid=None) -> "RateRegion":
        """Time-sharing closure: hull of the points, their axis projections and 0."""
        pts = np.clip(np.asarray(pts, dtype=float).reshape(-1, 2), 0.0, None)
        proj = np.concatenate([pts, pts * [1, 0], pts * [0, 1], [[0.0, 0.0]]])
        return cls(_hull_vertices(proj), label, grid)

    @property
    def polygon(self):
        return _geometry(self.boundary)

    def contains(self, point, tol=CONTAIN_TOL) -> bool:
        return self.polygon.distance(Point(point)) <= tol

    def distance(self, point) -> float:
        return float(self.polygon.distance(Point(point)))

    def mirror(self) -> "RateRegion":
        return RateRegion.from_points(self.boundary[:, ::-1], self.label, self.grid)

    def area(self) -> float:
        return float(self.polygon.area)

    def sample_boundary(self, count=512) -> np.ndarray:
        """Vertices plus ``count`` points evenly spaced by arc length."""
        b = self.boundary
        if len(b) == 1:
            return b.copy()
        ring = np.vstack([b, b[:1]])
        seg = np.diff(ring, axis=0)
        lens = np.hypot(seg[:, 0], seg[:, 1])
        cum = np.concatenate([[0.0], np.cumsum(lens)])
        s = np.linspace(0.0, cum[-1], count, endpoint=False)
        k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(seg) - 1)
        t = np.where(lens[k] > 0, (s - cum[k]) / np.where(lens[k] > 0, lens[k], 1), 0.0)
        return np.vstack([b, ring[k] + t[:, None] * seg[k]])


def _geometry(b: np.ndarray):
    if len(b) >= 3:
        return Polygon(b)
    return shapely.multipoints(b).convex_hull


def _hull_vertices(pts: np.ndarray) -> np.ndarray:
    hull = shapely.multipoints(pts).convex_hull
    if isinstance(hull, Point):
        return np.array([[hull.x, hull.y]])
    if hull.geom_type == "LineString":
        v = np.array(hull.coords)
    else:
        hull = shapely.geometry.polygon.orient(hull, 1.0)
        v = np.array(hull.exterior.coords)[:-1]
    v = _drop_collinear(v)
    start = int(np.argmin(np.hypot(v[:, 0], v[:, 1])))
    return np.roll(v, -start, axis=0)


def _drop_collinear(v: np.ndarray, tol=1e-15) -> np.ndarray:
    if len(v) < 3:
        return v
    keep = []
    n = len(v)
    for i in range(n):
        a, b, c = v[i - 1], v[i], v[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if abs(cross) > tol:
            keep.append(i)
    return v[keep]


def strong_interference_check(ic: GaussianIC) -> bool:
    """Each receiver hears the interferer at least as well as its own receiver does."""
    return bool(ic.g12 ** 2 / ic.N2 >= ic.g11 ** 2 / ic.N1
                and ic.g21 ** 2 / ic.N1 >= ic.g22 ** 2 / ic.N2)


def mac_bounds(ic: GaussianIC):
    """Per-receiver (R1, R2, R1+R2) MAC bounds, as a 2x3 array."""
    s11, s21 = ic.g11 ** 2 * ic.P1 / ic.N1, ic.g21 ** 2 * ic.P2 / ic.N1
    s12, s22 = ic.g12 ** 2 * ic.P1 / ic.N2, ic.g22 ** 2 * ic.P2 / ic.N2
    return np.array([[C(s11), C(s21), C(s11 + s21)],
                     [C(s12), C(s22), C(s12 + s22)]])


def hk_strong_region(ic: GaussianIC) -> RateRegion:
    if not strong_interference_check(ic):
        raise ValueError("HK region computation only supported in the strong-interference regime")
    a1, a2, s = mac_bounds(ic).min(axis=0)
    pts = [(0, 0), (a1, 0), (a1, min(a2, s - a1)), (min(a1, s - a2), a2), (0, a2)]
    return RateRegion.from_points(pts, label="HK (strong interference)")


def _sdrs_caps(ic: GaussianIC, beta, gamma):
    """Both caps of every sub-rate, vectorized over ``beta`` and ``gamma``.

    Receiver 1 decodes 2a, 1a, 1b, 2b in that order; receiver 2 decodes
    1a, 2a, 2b, 1b.
    """
    P1a, P1b = beta * ic.P1, (1 - beta) * ic.P1
    P2a, P2b = gamma * ic.P2, (1 - gamma) * ic.P2
    h11, h12, h21, h22 = ic.g11 ** 2, ic.g12 ** 2, ic.g21 ** 2, ic.g22 ** 2
    N1, N2 = ic.N1, ic.N2
    # receiver 1
    r1_2a = C(h21 * P2a / (N1 + h11 * ic.P1 + h21 * P2b))
    r1_1a = C(h11 * P1a / (N1 + h11 * P1b + h21 * P2b))
    r1_1b = C(h11 * P1b / (N1 + h21 * P2b))
    r1_2b = C(h21 * P2b / N1)
    # receiver 2
    r2_1a = C(h12 * P1a / (N2 + h12 * P1b + h22 * ic.P2))
    r2_2a = C(h22 * P2a / (N2 + h12 * P1b + h22 * P2b))
    r2_2b = C(h22 * P2b / (N2 + h12 * P1b))
    r2_1b = C(h12 * P1b / N2)
    return {"R1a": (r2_1a, r1_1a), "R1b": (r2_1b, r1_1b),
            "R2a": (r1_2a, r2_2a), "R2b": (r1_2b, r2_2b)}


def sdrs_constraints(ic: GaussianIC, split: PowerSplit) -> RateQuadruple:
    """Largest sub-rates decodable at both receivers for one power split."""
    caps = _sdrs_caps(ic, split.beta, split.gamma)
    return RateQuadruple(**{k: float(min(a, b)) for k, (a, b) in caps.items()})


def sdrs_corners(ic: GaussianIC, grid: int, include_mirror: bool = False) -> np.ndarray:
    """Raw ``(R1, R2)`` corner cloud over a ``grid x grid`` lattice of splits.

    Rows are ordered by cell index (beta major). With ``include_mirror`` the
    scheme with the two pairs' roles exchanged is appended.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    t = np.linspace(0.0, 1.0, grid)
    beta, gamma = np.meshgrid(t, t, indexing="ij")
    caps = _sdrs_caps(ic, beta.ravel(), gamma.ravel())
    q = {k: np.minimum(a, b) for k, (a, b) in caps.items()}
    pts = np.column_stack([q["R1a"] + q["R1b"], q["R2a"] + q["R2b"]])
    if include_mirror:
        pts = np.vstack([pts, sdrs_corners(ic.mirrored(), grid)[:, ::-1]])
    return pts


def sdrs_region(ic: GaussianIC, grid: int = 201, include_mirror: bool = False) -> RateRegion:
    pts = sdrs_corners(ic, grid, include_mirror)
    label = "SD+RS" + (" (both labelings)" if include_mirror else "")
    return RateRegion.from_points(pts, label=label, grid=grid)


@dataclass(frozen=True)
class RegionComparison:
    contained: bool
    max_gap: float
    witness: tuple
    inner_area: float
    outer_area: float

    def to_dict(self) -> dict:
        return {"contained": self.contained, "max_gap": self.max_gap,
                "witness": list(self.witness), "inner_area": self.inner_area,
                "outer_area": self.outer_area}


def region_compare(inner: RateRegion, outer: RateRegion, samples: int = 512) -> RegionComparison:
    """Containment of ``inner`` in ``outer`` and the worst boundary shortfall.

    ``max_gap`` is the largest distance from a sampled point of the outer
    boundary to the inner region; ``witness`` is that outer point.
    """
    contained = all(outer.contains(v) for v in inner.boundary)
    pts = outer.sample_boundary(samples)
    d = shapely.distance(inner.polygon, shapely.points(pts))
    k = int(np.argmax(d))
    return RegionComparison(contained, float(d[k]), (float(pts[k, 0]), float(pts[k, 1])),
                            inner.area(), outer.area())


# -- serialization -----------------------------------------------------------

def region_to_csv(region: RateRegion) -> str:
    lines = ["R1,R2"] + [f"{r1:.12g},{r2:.12g}" for r1, r2 in region.boundary]
    return "\n".join(lines) + "\n"


def region_from_csv(text: str, label="") -> RateRegion:
    rows = [ln for ln in text.splitlines() if ln.strip()]
    if not rows or rows[0].replace(" ", "") != "R1,R2":
        raise ValueError("expected header 'R1,R2'")
    pts = [tuple(float(v) for v in ln.split(",")) for ln in rows[1:]]
    return RateRegion(pts, label=label)


def regions_svg(regions, width=480, height=400, margin=48) -> str:
    """Standalone SVG with one closed polyline per region and a legend."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    allpts = np.vstack([r.boundary for r in regions])
    xmax = max(float(allpts[:, 0].max()), 1e-12) * 1.05
    ymax = max(float(allpts[:, 1].max()), 1e-12) * 1.05
    pw, ph = width - 2 * margin, height - 2 * margin

    def xy(p):
        return (margin + p[0] / xmax * pw, height - margin - p[1] / ymax * ph)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
           f'y2="{height - margin}" stroke="black"/>',
           f'<line x1="{margin}" y1="{height - margin}" x2="{margin}" y2="{margin}" stroke="black"/>',
           f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle" '
           f'font-size="13">R1 (bits/use)</text>',
           f'<text x="14" y="{height / 2:.1f}" text-anchor="middle" font-size="13" '
           f'transform="rotate(-90 14 {height / 2:.1f})">R2 (bits/use)</text>',
           f'<text x="{width - margin}" y="{height - margin + 16}" text-anchor="end" '
           f'font-size="11">{xmax:.3f}</text>',
           f'<text x="{margin - 4}" y="{margin + 4}" text-anchor="end" font-size="11">{ymax:.3f}</text>']
    for i, r in enumerate(regions):
        c = colors[i % len(colors)]
        ring = np.vstack([r.boundary, r.boundary[:1]])
        pts = " ".join("{:.2f},{:.2f}".format(*xy(p)) for p in ring)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{c}" stroke-width="2"/>')
        ly = margin + 16 * i
        out.append(f'<line x1="{width - margin - 150}" y1="{ly}" x2="{width - margin - 130}" '
                   f'y2="{ly}" stroke="{c}" stroke-width="2"/>')
        out.append(f'<text x="{width - margin - 125}" y="{ly + 4}" font-size="12">'
                   f'{r.label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["GaussianIC", "PowerSplit", "RateQuadruple", "RateRegion", "RegionComparison",
           "gaussian_capacity", "strong_interference_check", "mac_bounds", "hk_strong_region",
           "sdrs_constraints", "sdrs_corners", "sdrs_region", "region_compare",
           "region_to_csv", "region_from_csv", "regions_svg"]
