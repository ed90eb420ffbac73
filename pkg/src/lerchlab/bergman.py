"""Bergman-space machinery on domains inside the critical strip.

For a domain U with closure in D = {1/2 < Re s < 1} this module computes

* the area inner product  <f, g> = integral_U f(s) conj(g(s)) dsigma dt,
  by tensor Gauss-Legendre quadrature (rectangles) or a polar tensor rule
  (disks); elements are polynomials of degree <= 32, which are dense in
  the Bergman space and integrate exactly at the default order;
* the Laplace-type transform  Delta(z) = integral_U e^(-s z) conj(g(s)),
* norms of the series elements  v_n(s) = e(lam n) (n+alpha)^(-s), whose
  squared norm integral_U (n+alpha)^(-2 sigma) is independent of lam;
* geometric phase sums  phi(theta, t) = sum_{0<=n<=floor(t)} e(theta n)
  in closed form (theta not an integer);
* windowed sums over integers with n+alpha in [e^y, e^(y + B y^(-2m))]:

      S1 = sum* sum_j |Delta_j(log(n+alpha))|^2,
      S2 = sum_{k != l} sum* e((lam_l - lam_k) n)
                         Delta_k(log(n+alpha)) conj(Delta_l(log(n+alpha))),
      S  = sum* |sum_j e(lam_j n) Delta_j(log(n+alpha))|,

  together with the exact decomposition sum*|...|^2 = S1 + S2 which is
  re-checked on every call; and a divergence diagnostic table reporting
  S(x) against the reference envelope e^(x(1-sigma2))/x^(2m) plus the
  cumulative partial sums of |<v_n, g>|.  Divergence itself is not
  decidable at finite truncation, so the table carries no pass/fail.

sigma1 and sigma2 are the exact horizontal extent of U (tightest
admissible strip).  All computations are pure; node tables are built at
construction and frozen.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ComputationError, EmptyWindowError
from .lerch import LerchParameters

__all__ = [
    "BergmanDomain",
    "BergmanElement",
    "TupleElement",
    "DeltaTransform",
    "inner_product",
    "delta_transform",
    "delta_values",
    "vn_norm_sq",
    "vn_norm_sq_batch",
    "phi_pair_sum",
    "WindowedSums",
    "windowed_sums",
    "DiagnosticRow",
    "DivergenceReport",
    "divergence_diagnostic",
    "delta_decay_bound",
]

_WINDOW_CAP = 1e8
_CHUNK = 512


@dataclass(frozen=True)
class BergmanDomain:
    """Disk or axis-aligned rectangle with closure strictly inside D.

    ``order`` is the Gauss-Legendre order per axis (radial order for
    disks, which also use 2*order+1 uniform angles).  Nodes and weights
    are precomputed, immutable, and exact for polynomial integrands up
    to the degrees produced by degree-32 elements at the default order.
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    corner_lo: complex = 0j
    corner_hi: complex = 0j
    order: int = 40

    def __post_init__(self):
        if self.order < 8:
            raise ValueError("quadrature order must be >= 8")
        if self.kind == "disk":
            if self.radius <= 0.0:
                raise ValueError("disk radius must be positive")
            lo = self.center.real - self.radius
            hi = self.center.real + self.radius
        elif self.kind == "rectangle":
            if (
                self.corner_lo.real >= self.corner_hi.real
                or self.corner_lo.imag >= self.corner_hi.imag
            ):
                raise ValueError("rectangle must have positive width and height")
            lo = self.corner_lo.real
            hi = self.corner_hi.real
        else:
            raise ValueError(f"unknown domain kind: {self.kind!r}")
        if not (0.5 < lo and hi < 1.0):
            raise ValueError(
                f"closure leaves the strip 1/2 < Re s < 1: Re range [{lo}, {hi}]"
            )
        nodes, weights = self._build_rule()
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_weights", weights)

    @staticmethod
    def disk(center: complex, radius: float, order: int = 40) -> "BergmanDomain":
        return BergmanDomain(kind="disk", center=center, radius=radius, order=order)

    @staticmethod
    def rectangle(corner_lo: complex, corner_hi: complex, order: int = 40) -> "BergmanDomain":
        return BergmanDomain(
            kind="rectangle", corner_lo=corner_lo, corner_hi=corner_hi, order=order
        )

    def _build_rule(self):
        x, w = np.polynomial.legendre.leggauss(self.order)
        if self.kind == "rectangle":
            a, b = self.corner_lo.real, self.corner_hi.real
            c, d = self.corner_lo.imag, self.corner_hi.imag
            xs = 0.5 * (b - a) * x + 0.5 * (a + b)
            ws = 0.5 * (b - a) * w
            xt = 0.5 * (d - c) * x + 0.5 * (c + d)
            wt = 0.5 * (d - c) * w
            nodes = (xs[:, None] + 1j * xt[None, :]).ravel()
            weights = (ws[:, None] * wt[None, :]).ravel()
            return nodes, weights
        # polar tensor rule: GL in radius (area weight rho folded in),
        # uniform angles exact for harmonics below 2*order+1
        rho = 0.5 * self.radius * (x + 1.0)
        wr = 0.5 * self.radius * w * rho
        n_theta = 2 * self.order + 1
        theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
        wt = 2.0 * np.pi / n_theta
        nodes = (self.center + rho[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = np.broadcast_to(wr[:, None] * wt, (self.order, n_theta)).ravel().copy()
        return nodes, weights

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def sigma1(self) -> float:
        """Left edge of the horizontal extent."""
        if self.kind == "disk":
            return self.center.real - self.radius
        return self.corner_lo.real

    @property
    def sigma2(self) -> float:
        """Right edge of the horizontal extent."""
        if self.kind == "disk":
            return self.center.real + self.radius
        return self.corner_hi.real

    @property
    def area(self) -> float:
        if self.kind == "disk":
            return math.pi * self.radius**2
        return (self.corner_hi.real - self.corner_lo.real) * (
            self.corner_hi.imag - self.corner_lo.imag
        )

    def with_order(self, order: int) -> "BergmanDomain":
        if self.kind == "disk":
            return BergmanDomain.disk(self.center, self.radius, order)
        return BergmanDomain.rectangle(self.corner_lo, self.corner_hi, order)


@dataclass(frozen=True)
class BergmanElement:
    """Polynomial element sum_k c_k (s - center)^k, degree <= 32."""

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
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def sup_on(self, domain: BergmanDomain, boundary_samples: int = 4096) -> float:
        """Sampled sup of |g| over U (boundary suffices by the maximum principle)."""
        if self.is_zero:
            return 0.0
        if domain.kind == "disk":
            theta = 2.0 * np.pi * np.arange(boundary_samples) / boundary_samples
            pts = domain.center + domain.radius * np.exp(1j * theta)
        else:
            lo, hi = domain.corner_lo, domain.corner_hi
            w = hi.real - lo.real
            h = hi.imag - lo.imag
            per = 2.0 * (w + h)
            d = per * np.arange(boundary_samples) / boundary_samples
            pts = np.empty(boundary_samples, dtype=complex)
            corners = [lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag)]
            lengths = [w, h, w, h]
            cum = np.concatenate([[0.0], np.cumsum(lengths)])
            for i, dd in enumerate(d):
                e = min(int(np.searchsorted(cum, dd, side="right")) - 1, 3)
                a = corners[e]
                b = corners[(e + 1) % 4]
                pts[i] = a + (b - a) * ((dd - cum[e]) / lengths[e])
        return float(np.max(np.abs(self(pts))))


@dataclass(frozen=True)
class TupleElement:
    """Tuple (g_1, ..., g_m) of Bergman elements, m >= 1."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) < 1:
            raise ValueError("tuple element needs at least one component")

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.components)


@dataclass(frozen=True)
class DeltaTransform:
    """Delta(z) = integral_U e^(-s z) conj(g(s)) dsigma dt for one element."""

    element: BergmanElement
    domain: BergmanDomain


def inner_product(f: BergmanElement, g: BergmanElement, u: BergmanDomain) -> complex:
    """Area inner product <f, g>; conjugate-linear in g."""
    s = u.nodes
    return complex(np.sum(u.weights * f(s) * np.conj(g(s))))


def delta_transform(d: DeltaTransform, z: complex) -> complex:
    """Quadrature value of Delta(z) at one point."""
    s = d.domain.nodes
    vals = np.exp(-s * z) * np.conj(d.element(s))
    return complex(np.sum(d.domain.weights * vals))


def delta_values(element: BergmanElement, domain: BergmanDomain, zs) -> np.ndarray:
    """Delta(z) over an array of transform points (chunked quadrature)."""
    return _delta_matrix((element,), domain, np.asarray(zs, dtype=complex))[0]


def _delta_matrix(components, domain: BergmanDomain, zs: np.ndarray) -> np.ndarray:
    """Delta_j(zs) for every component j; shares the node exponentials."""
    s = domain.nodes
    wconj = [domain.weights * np.conj(g(s)) for g in components]
    out = np.empty((len(components), zs.size), dtype=complex)
    for lo in range(0, zs.size, _CHUNK):
        hi = min(lo + _CHUNK, zs.size)
        ez = np.exp(-np.outer(s, zs[lo:hi]))
        for j, wc in enumerate(wconj):
            out[j, lo:hi] = wc @ ez
    return out


def vn_norm_sq(n: int, p: LerchParameters, u: BergmanDomain) -> float:
    """integral_U |(n+alpha)^(-s)|^2 = integral_U (n+alpha)^(-2 Re s); lam-free."""
    if n < 0:
        raise ValueError("n must be >= 0")
    sig = u.nodes.real
    return float(np.sum(u.weights * (n + p.alpha) ** (-2.0 * sig)))


def vn_norm_sq_batch(ns, p: LerchParameters, u: BergmanDomain) -> np.ndarray:
    """vn_norm_sq over an integer array, vectorized through unique node abscissas."""
    ns = np.asarray(ns, dtype=np.float64)
    sig, inv = np.unique(u.nodes.real, return_inverse=True)
    wsig = np.zeros(sig.size)
    np.add.at(wsig, inv, u.weights)
    lu = np.log(ns + p.alpha)
    out = np.empty(ns.size)
    for lo in range(0, ns.size, 1 << 16):
        hi = min(lo + (1 << 16), ns.size)
        out[lo:hi] = np.exp(np.outer(lu[lo:hi], -2.0 * sig)) @ wsig
    return out


def _reduced_multiple(theta: float, k: int, modulus: int, divisor: int) -> float:
    """Exact (theta * k / divisor) mod modulus for dyadic-rational theta.

    theta as a float is num/den with den a power of two, so the
    reduction is exact in integer arithmetic; this keeps the closed-form
    phase sum faithful to the brute-force sum even for k ~ 1e4.
    """
    num, den = theta.as_integer_ratio()
    den *= divisor
    return (num * k % (modulus * den)) / den


def phi_pair_sum(theta: float, t: float) -> complex:
    """Closed-form geometric sum sum_{n=0..floor(t)} e(theta n), theta not in Z.

    Dirichlet-kernel form e(theta N/2) sin(pi theta (N+1)) / sin(pi theta)
    with exact dyadic reduction of the large phase arguments.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    dist = abs(theta - round(theta))
    if dist < 1e-12:
        raise ValueError(
            f"theta={theta} is an integer within 1e-12; the sum grows linearly"
        )
    theta = theta - math.floor(theta)  # e(theta n) is 1-periodic in theta
    n_top = int(math.floor(t))
    pre = _reduced_multiple(theta, n_top, 1, 2)  # theta*N/2 mod 1
    arg = _reduced_multiple(theta, n_top + 1, 2, 1)  # theta*(N+1) mod 2
    return complex(
        np.exp(2j * np.pi * pre) * math.sin(np.pi * arg) / math.sin(np.pi * theta)
    )


def _window_range(alpha: float, x: float, m_exp: int, scale: float):
    """Integer range with n+alpha in [e^x, e^(x + scale * x^(-2 m_exp))]."""
    if x <= 0.0:
        raise ValueError("window position x must be positive")
    if scale <= 0.0:
        raise ValueError("window scale must be positive")
    lo = math.exp(x)
    if lo > _WINDOW_CAP:
        raise ValueError(f"window start e^x={lo:.3e} exceeds desk-scale cap {_WINDOW_CAP:.0e}")
    hi = math.exp(x + scale * x ** (-2 * m_exp))
    n_lo = max(int(math.ceil(lo - alpha)), 0)
    n_hi = int(math.floor(hi - alpha))
    if n_lo > n_hi:
        raise EmptyWindowError(
            f"no integer n has n+alpha in [{lo:.6g}, {hi:.6g}] (x={x})"
        )
    return n_lo, n_hi


def _check_params(g: TupleElement, p_list) -> float:
    if len(p_list) != g.m:
        raise ValueError("one parameter pair per tuple component is required")
    alpha = p_list[0].alpha
    if any(p.alpha != alpha for p in p_list):
        raise ValueError("all components must share one alpha")
    lams = [p.lam for p in p_list]
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            if abs(lams[i] - lams[j]) < 1e-12:
                raise ValueError(f"lambdas must be distinct: {lams[i]} vs {lams[j]}")
    return alpha


@dataclass(frozen=True)
class WindowedSums:
    """Windowed sums and the internally verified square decomposition."""

    s1: float
    s2: complex
    s: float
    sq_sum: float
    n_lo: int
    n_hi: int


def windowed_sums(
    g: TupleElement,
    p_list,
    u: BergmanDomain,
    x: float,
    window_exponent: int,
    window_scale: float,
) -> WindowedSums:
    """S1, S2 and S over the window, with the identity sum*|.|^2 = S1 + S2.

    The identity is algebraic; it is recomputed from the two sides and
    must agree to 1e-9 relative on every call, otherwise the quadrature
    backend is inconsistent and ComputationError is raised.
    """
    alpha = _check_params(g, p_list)
    n_lo, n_hi = _window_range(alpha, x, window_exponent, window_scale)
    ns = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    logs = np.log(ns + alpha)
    deltas = _delta_matrix(g.components, u, logs)
    lams = [p.lam for p in p_list]
    phases = np.stack([np.exp(2j * np.pi * np.mod(lam * ns, 1.0)) for lam in lams])

    s1 = float(np.sum(np.abs(deltas) ** 2))
    combined = np.sum(phases * deltas, axis=0)
    sq_sum = float(np.sum(np.abs(combined) ** 2))
    s_val = float(np.sum(np.abs(combined)))

    s2 = 0.0 + 0.0j
    m = g.m
    for k in range(m):
        for l in range(m):
            if k == l:
                continue
            cross_phase = np.exp(2j * np.pi * np.mod((lams[l] - lams[k]) * ns, 1.0))
            s2 += np.sum(cross_phase * deltas[k] * np.conj(deltas[l]))

    resid = abs(sq_sum - (s1 + s2))
    scale = max(abs(sq_sum), abs(s1), 1e-30)
    if resid > 1e-9 * scale:
        raise ComputationError(
            f"square decomposition violated: |sq - (S1+S2)| = {resid:.3e} "
            f"against scale {scale:.3e}"
        )
    return WindowedSums(s1, complex(s2), s_val, sq_sum, n_lo, int(n_hi))


@dataclass(frozen=True)
class DiagnosticRow:
    """One grid point of the divergence diagnostic table."""

    x: float
    s: float
    s1: float
    abs_s2: float
    envelope: float
    cum_sum: float
    window_empty: bool = False


@dataclass(frozen=True)
class DivergenceReport:
    """Diagnostic table; divergence is not decidable at finite truncation."""

    rows: tuple
    sigma2: float
    m: int

    CSV_COLUMNS = ("x", "S", "S1", "|S2|", "envelope", "cum_sum")

    def to_csv(self) -> str:
        lines = [",".join(self.CSV_COLUMNS)]
        for r in self.rows:
            lines.append(
                ",".join(
                    "%.17g" % v
                    for v in (r.x, r.s, r.s1, r.abs_s2, r.envelope, r.cum_sum)
                )
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "sigma2": self.sigma2,
            "m": self.m,
            "rows": [
                {
                    "x": r.x,
                    "S": r.s,
                    "S1": r.s1,
                    "abs_S2": r.abs_s2,
                    "envelope": r.envelope,
                    "cum_sum": r.cum_sum,
                    "window_empty": r.window_empty,
                }
                for r in self.rows
            ],
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def divergence_diagnostic(
    g: TupleElement,
    p_list,
    u: BergmanDomain,
    x_grid,
    window_scale: float = 1.0,
    window_exponent: int | None = None,
) -> DivergenceReport:
    """Windowed sums, reference envelope and cumulative |<v_n, g>| per x.

    The envelope is e^(x(1-sigma2))/x^(2m) with sigma2 the right edge of
    U.  ``cum_sum`` accumulates |sum_j e(lam_j n) Delta_j(log(n+alpha))|
    over all n up to the window end.  Empty windows are recorded per
    grid point (NaN sums) rather than aborting the table.
    """
    alpha = _check_params(g, p_list)
    m = g.m
    m_exp = m if window_exponent is None else window_exponent
    lams = [p.lam for p in p_list]
    xs = sorted(float(v) for v in x_grid)
    sigma2 = u.sigma2

    rows = []
    cursor = 0
    cum = 0.0

    def advance(upto: int):
        nonlocal cursor, cum
        step = 1 << 16
        while cursor <= upto:
            hi = min(cursor + step - 1, upto)
            ns = np.arange(cursor, hi + 1, dtype=np.float64)
            deltas = _delta_matrix(g.components, u, np.log(ns + alpha))
            phases = np.stack(
                [np.exp(2j * np.pi * np.mod(lam * ns, 1.0)) for lam in lams]
            )
            cum += float(np.sum(np.abs(np.sum(phases * deltas, axis=0))))
            cursor = hi + 1

    for x in xs:
        envelope = math.exp(x * (1.0 - sigma2)) / x ** (2 * m)
        try:
            ws = windowed_sums(g, p_list, u, x, m_exp, window_scale)
        except EmptyWindowError:
            n_hi = int(math.floor(math.exp(x) - alpha))
            advance(max(n_hi, cursor - 1))
            rows.append(
                DiagnosticRow(x, math.nan, math.nan, math.nan, envelope, cum, True)
            )
            continue
        advance(ws.n_hi)
        rows.append(
            DiagnosticRow(x, ws.s, ws.s1, abs(ws.s2), envelope, cum, False)
        )
    return DivergenceReport(tuple(rows), sigma2, m)


def delta_decay_bound(element: BergmanElement, domain: BergmanDomain, x: float) -> float:
    """Explicit-constant decay envelope area(U) * sup|g| * e^(sigma1) * e^(-sigma1 x).

    Valid for every real transform point t in [x, x+1] since
    |e^(-s t)| <= e^(-sigma1 x) there; the e^(sigma1) factor absorbs the
    window offset.
    """
    s1 = domain.sigma1
    return domain.area * element.sup_on(domain) * math.exp(s1) * math.exp(-s1 * x)
