"""Compact subsets of the critical strip and sup-norm distances.

The strip is D = { s : 1/2 < Re s < 1 }.  Supported compacta are closed
disks and axis-aligned rectangles whose closures lie strictly inside D;
both have connected complements by construction.  Sup norms over a
compact set are approximated by deterministic sampling (boundary points
dominate by the maximum principle for the analytic error function); the
sampled value is a lower bound on the true sup, and ``inflated_sup``
provides the documented Lipschitz inflation when an upper bracket is
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CompactSet",
    "TargetPolynomial",
    "SupNormEstimate",
    "sample_points",
    "sup_distance",
    "inflated_sup",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CompactSet:
    """A disk or axis-aligned rectangle with closure strictly inside D.

    ``kind`` is "disk" (center, radius) or "rectangle" (corner_lo,
    corner_hi with componentwise lo <= hi).  Degenerate rectangles
    (a segment or a single point) are allowed.
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    corner_lo: complex = 0j
    corner_hi: complex = 0j
    boundary_samples: int = 256
    interior_samples: int = 64

    def __post_init__(self):
        if self.boundary_samples < 1 or self.interior_samples < 0:
            raise ValueError("need boundary_samples >= 1 and interior_samples >= 0")
        if self.kind == "disk":
            if self.radius <= 0.0:
                raise ValueError("disk radius must be positive")
            lo = self.center.real - self.radius
            hi = self.center.real + self.radius
        elif self.kind == "rectangle":
            if (
                self.corner_lo.real > self.corner_hi.real
                or self.corner_lo.imag > self.corner_hi.imag
            ):
                raise ValueError("rectangle corners must satisfy lo <= hi componentwise")
            lo = self.corner_lo.real
            hi = self.corner_hi.real
        else:
            raise ValueError(f"unknown shape kind: {self.kind!r}")
        if not (0.5 < lo and hi < 1.0):
            raise ValueError(
                f"closure leaves the strip 1/2 < Re s < 1: Re range [{lo}, {hi}]"
            )

    @staticmethod
    def disk(center: complex, radius: float,
             boundary_samples: int = 256, interior_samples: int = 64) -> "CompactSet":
        return CompactSet(
            kind="disk", center=center, radius=radius,
            boundary_samples=boundary_samples, interior_samples=interior_samples,
        )

    @staticmethod
    def rectangle(corner_lo: complex, corner_hi: complex,
                  boundary_samples: int = 256, interior_samples: int = 64) -> "CompactSet":
        return CompactSet(
            kind="rectangle", corner_lo=corner_lo, corner_hi=corner_hi,
            boundary_samples=boundary_samples, interior_samples=interior_samples,
        )

    def mesh_width(self) -> float:
        """Coarse bound on the distance from any set point to its nearest sample."""
        if self.kind == "disk":
            arc = 2.0 * math.pi * self.radius / self.boundary_samples
            ring = self.radius / math.sqrt(max(self.interior_samples, 1))
            return max(arc, ring)
        w = self.corner_hi.real - self.corner_lo.real
        h = self.corner_hi.imag - self.corner_lo.imag
        per = 2.0 * (w + h)
        if per == 0.0:
            return 0.0
        g = math.ceil(math.sqrt(max(self.interior_samples, 1)))
        return max(per / self.boundary_samples, math.hypot(w, h) / g)


def sample_points(k: CompactSet) -> np.ndarray:
    """Deterministic boundary plus interior samples of a compact set.

    Disk boundary points start at angle 0 and are equally spaced
    counterclockwise; the first interior point is the center, the rest
    follow a golden-angle spiral.  Rectangle boundary points walk the
    perimeter from corner_lo; interior points are row-major cell centers
    of the smallest square grid holding interior_samples points.  A
    degenerate rectangle with zero perimeter yields its single point.
    """
    if k.kind == "disk":
        b = k.boundary_samples
        theta = 2.0 * np.pi * np.arange(b) / b
        boundary = k.center + k.radius * np.exp(1j * theta)
        inner = []
        if k.interior_samples >= 1:
            inner.append(k.center)
        for j in range(1, k.interior_samples):
            rho = k.radius * math.sqrt(j / k.interior_samples)
            ang = 2.0 * np.pi * ((j * _GOLDEN) % 1.0)
            inner.append(k.center + rho * np.exp(1j * ang))
        pts = np.concatenate([boundary, np.array(inner, dtype=complex)])
        pts.setflags(write=False)
        return pts

    lo, hi = k.corner_lo, k.corner_hi
    w = hi.real - lo.real
    h = hi.imag - lo.imag
    per = 2.0 * (w + h)
    if per == 0.0:
        pts = np.array([lo], dtype=complex)
        pts.setflags(write=False)
        return pts
    corners = [lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag)]
    lengths = [w, h, w, h]
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    boundary = np.empty(k.boundary_samples, dtype=complex)
    for i in range(k.boundary_samples):
        d = per * i / k.boundary_samples
        edge = int(np.searchsorted(cum, d, side="right")) - 1
        edge = min(edge, 3)
        frac = d - cum[edge]
        a = corners[edge]
        bpt = corners[(edge + 1) % 4]
        seg = bpt - a
        boundary[i] = a + (seg / lengths[edge]) * frac if lengths[edge] > 0 else a
    inner = []
    if k.interior_samples >= 1 and w > 0 and h > 0:
        g = math.ceil(math.sqrt(k.interior_samples))
        for j in range(k.interior_samples):
            row, col = divmod(j, g)
            inner.append(
                complex(
                    lo.real + w * (col + 0.5) / g,
                    lo.imag + h * (row + 0.5) / g,
                )
            )
    pts = np.concatenate([boundary, np.array(inner, dtype=complex)])
    pts.setflags(write=False)
    return pts


@dataclass(frozen=True)
class TargetPolynomial:
    """Polynomial target sum_k c_k (s - center)^k with degree <= 32."""

    coefficients: tuple
    center: complex = 0j

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) == 0:
            raise ValueError("need at least one coefficient")
        if len(coeffs) > 33:
            raise ValueError(f"degree {len(coeffs) - 1} exceeds 32")

    def __call__(self, z):
        w = np.asarray(z) - self.center
        out = np.zeros_like(w, dtype=complex)
        for c in reversed(self.coefficients):
            out = out * w + c
        return out

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class SupNormEstimate:
    """Max sampled modulus; a lower bound on the true sup norm."""

    value: float
    argmax_point: complex
    samples_used: int


def sup_distance(values, target: TargetPolynomial, points) -> SupNormEstimate:
    """max_i |values[i] - target(points[i])| over paired samples."""
    values = np.asarray(values, dtype=complex)
    points = np.asarray(points, dtype=complex)
    if values.shape != points.shape or values.size < 1:
        raise ValueError(
            f"values/points length mismatch: {values.shape} vs {points.shape}"
        )
    diffs = np.abs(values - target(points))
    i = int(np.argmax(diffs))
    return SupNormEstimate(float(diffs[i]), complex(points[i]), int(values.size))


def inflated_sup(estimate: SupNormEstimate, lipschitz_bound: float, mesh_width: float) -> float:
    """Upper bracket: sampled sup plus |f'| bound times mesh width."""
    return estimate.value + lipschitz_bound * mesh_width
