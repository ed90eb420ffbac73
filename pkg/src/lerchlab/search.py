"""Vertical shift scans for simultaneous approximation, and the dense-image probe.

A joint target is m compact sets K_j with target polynomials f_j and m
Lerch parameter pairs sharing one alpha with pairwise distinct lambdas.
The scan walks tau over the uniform grid {0, step, ..., tau_max} and
records

    D(tau) = max_j max_{p in samples(K_j)} |L(p + i tau; alpha, lam_j) - f_j(p)|,

merging consecutive sub-epsilon grid points into step-width hit
intervals.  The reported density hit_measure / tau_max is a finite-range
estimate; no asymptotic claim is attached to it.  Grid distances are
computed by the vertical-line sweep engine (one nonuniform FFT per
component and sample point), which makes the 2e6-point production grids
a matter of seconds per sweep; optional refinement polishes the best
grid minima with golden-section steps of the certified scalar evaluator.

The probe scans t for the derivative vector

    h(t) = (L(sigma+it), L'(sigma+it), ..., L^(N-1)(sigma+it))_{j=1..m}

and reports the grid point closest to a requested target vector in the
max norm.

Scans are data-parallel over (component, sample point) tasks; partial
results merge by elementwise max, which is exact and order-independent,
so serial and parallel runs produce identical reports.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .lerch import LerchParameters, StripPoint, eval_continued
from .strip import CompactSet, TargetPolynomial, sample_points, sup_distance
from .vline import line_derivatives, line_values

__all__ = [
    "JointTarget",
    "ScanConfig",
    "DensityReport",
    "joint_distance",
    "scan",
    "scan_distances",
    "report_from_distances",
    "dense_image_probe",
    "ProbeResult",
    "golden_section",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class JointTarget:
    """m pairs (K_j, f_j) with parameters sharing alpha, distinct lambdas."""

    components: tuple
    params: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        pars = tuple(self.params)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "params", pars)
        if len(comps) < 1:
            raise ValueError("need at least one component")
        if len(comps) != len(pars):
            raise ValueError("one parameter pair per component is required")
        alpha = pars[0].alpha
        if any(p.alpha != alpha for p in pars):
            raise ValueError("all components must share one alpha")
        lams = [p.lam for p in pars]
        for i in range(len(lams)):
            for j in range(i + 1, len(lams)):
                if abs(lams[i] - lams[j]) < 1e-9:
                    raise ValueError(
                        f"lambdas must be distinct (gap >= 1e-9): "
                        f"{lams[i]} vs {lams[j]}"
                    )
        for k, f in comps:
            if not isinstance(k, CompactSet) or not isinstance(f, TargetPolynomial):
                raise ValueError("components must be (CompactSet, TargetPolynomial) pairs")
        object.__setattr__(
            self, "_samples", tuple(sample_points(k) for k, _ in comps)
        )
        object.__setattr__(
            self,
            "_target_values",
            tuple(np.asarray(f(pts), dtype=complex)
                  for (_, f), pts in zip(comps, self._samples)),
        )

    @property
    def m(self) -> int:
        return len(self.components)

    def samples(self, j: int) -> np.ndarray:
        return self._samples[j]

    def target_values(self, j: int) -> np.ndarray:
        return self._target_values[j]


@dataclass(frozen=True)
class ScanConfig:
    """Grid extent, step, threshold and the refinement switch.

    The default step 0.05 resolves hit intervals whose width
    epsilon / sup|dL/ds| exceeds it; the scan prints a sampled
    derivative bound so the choice can be audited per experiment.
    """

    tau_max: float
    epsilon: float
    tau_step: float = 0.05
    refine: bool = False

    def __post_init__(self):
        if self.tau_step <= 0.0:
            raise ValueError("tau_step must be positive")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.tau_max < self.tau_step:
            raise ValueError("tau_max must be at least tau_step")

    @property
    def n_grid(self) -> int:
        return int(math.floor(self.tau_max / self.tau_step + 1e-9)) + 1


@dataclass(frozen=True)
class DensityReport:
    """Hit intervals and the finite-range density estimate of a scan."""

    hit_intervals: tuple
    hit_measure: float
    density: float
    best_tau: float
    best_distance: float
    epsilon: float
    tau_max: float
    tau_step: float
    n_grid: int
    n_hits: int

    def to_json_dict(self) -> dict:
        return {
            "hit_intervals": [[lo, hi] for lo, hi in self.hit_intervals],
            "hit_measure": self.hit_measure,
            "density": self.density,
            "best_tau": self.best_tau,
            "best_distance": self.best_distance,
            "epsilon": self.epsilon,
            "tau_max": self.tau_max,
            "tau_step": self.tau_step,
            "n_grid": self.n_grid,
            "n_hits": self.n_hits,
        }


def joint_distance(tau: float, tgt: JointTarget, target_abs_err: float = 1e-8) -> float:
    """max_j sup-distance of L(. + i tau) to f_j over the sampled K_j."""
    worst = 0.0
    for j in range(tgt.m):
        pts = tgt.samples(j)
        vals = np.array(
            [
                eval_continued(
                    StripPoint(pt.real, pt.imag + tau), tgt.params[j], target_abs_err
                ).value
                for pt in pts
            ],
            dtype=complex,
        )
        est = sup_distance(vals, tgt.components[j][1], pts)
        worst = max(worst, est.value)
    return worst


def _sweep_task(args):
    """One (component, sample point) sweep; returns its distance array."""
    alpha, lam, pt, f_val, step, n_grid, engine_target = args
    p = LerchParameters(alpha, lam)
    sweep = line_values(p, complex(pt), step, n_grid, engine_target)
    return np.abs(sweep.values - f_val)


def _task_list(tgt: JointTarget, cfg: ScanConfig, engine_target: float):
    tasks = []
    for j in range(tgt.m):
        p = tgt.params[j]
        pts = tgt.samples(j)
        fvals = tgt.target_values(j)
        for pt, fv in zip(pts, fvals):
            tasks.append(
                (p.alpha, p.lam, complex(pt), complex(fv),
                 cfg.tau_step, cfg.n_grid, engine_target)
            )
    return tasks


def scan_distances(
    tgt: JointTarget,
    cfg: ScanConfig,
    threads: int = 1,
    engine_target: float = 1e-7,
) -> np.ndarray:
    """D(tau) on the grid; elementwise-max merge makes the result
    independent of task order and of the serial/parallel split."""
    tasks = _task_list(tgt, cfg, engine_target)
    out = None
    if threads <= 1:
        for task in tasks:
            d = _sweep_task(task)
            out = d if out is None else np.maximum(out, d)
        return out
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for d in pool.map(_sweep_task, tasks):
            out = d if out is None else np.maximum(out, d)
    return out


def report_from_distances(
    distances: np.ndarray, cfg: ScanConfig
) -> DensityReport:
    """Assemble hit intervals and density from a distance trace.

    Each grid hit contributes a step-width interval centered on its grid
    point, clipped to [0, tau_max]; consecutive hits merge.
    """
    h = cfg.tau_step
    hits = distances < cfg.epsilon
    idx = np.flatnonzero(hits)
    intervals = []
    measure = 0.0
    if idx.size:
        breaks = np.flatnonzero(np.diff(idx) > 1)
        starts = np.concatenate([[0], breaks + 1])
        ends = np.concatenate([breaks, [idx.size - 1]])
        for a, b in zip(starts, ends):
            lo = float(max(int(idx[a]) * h - 0.5 * h, 0.0))
            hi = float(min(int(idx[b]) * h + 0.5 * h, cfg.tau_max))
            intervals.append((lo, hi))
            measure += hi - lo
    density = measure / cfg.tau_max
    g_best = int(np.argmin(distances))
    return DensityReport(
        hit_intervals=tuple(intervals),
        hit_measure=measure,
        density=density,
        best_tau=g_best * h,
        best_distance=float(distances[g_best]),
        epsilon=cfg.epsilon,
        tau_max=cfg.tau_max,
        tau_step=cfg.tau_step,
        n_grid=cfg.n_grid,
        n_hits=int(idx.size),
    )


def golden_section(f, a: float, b: float, iters: int = 40):
    """Golden-section minimization on [a, b]; returns (x_best, f_best)."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _local_minima(distances: np.ndarray) -> np.ndarray:
    d = distances
    n = d.size
    if n == 1:
        return np.array([0])
    left_ok = np.empty(n, dtype=bool)
    right_ok = np.empty(n, dtype=bool)
    left_ok[0] = True
    left_ok[1:] = d[1:] <= d[:-1]
    right_ok[-1] = True
    right_ok[:-1] = d[:-1] <= d[1:]
    return np.flatnonzero(left_ok & right_ok)


def scan(
    tgt: JointTarget,
    cfg: ScanConfig,
    threads: int = 1,
    engine_target: float = 1e-7,
    refine_cap: int = 50,
    refine_iters: int = 40,
) -> DensityReport:
    """Full scan: grid distances, hit intervals, density, optional refine.

    Refinement applies golden-section minimization of the certified
    scalar distance around the ``refine_cap`` lowest grid local minima
    and replaces best_tau/best_distance when an improvement is found.
    """
    distances = scan_distances(tgt, cfg, threads, engine_target)
    report = report_from_distances(distances, cfg)
    if not cfg.refine:
        return report
    minima = _local_minima(distances)
    order = np.argsort(distances[minima], kind="stable")
    chosen = minima[order[:refine_cap]]
    h = cfg.tau_step
    best_tau, best_d = report.best_tau, report.best_distance
    for g in chosen:
        a = max(g * h - h, 0.0)
        b = min(g * h + h, cfg.tau_max)
        x, fx = golden_section(
            lambda tau: joint_distance(tau, tgt), a, b, refine_iters
        )
        if fx < best_d:
            best_tau, best_d = x, fx
    return dataclasses.replace(report, best_tau=best_tau, best_distance=best_d)


@dataclass(frozen=True)
class ProbeResult:
    """Best grid point of a dense-image probe."""

    t_best: float
    distance: float
    n_hits: int
    n_grid: int


def dense_image_probe(
    params,
    sigma: float,
    n_derivs: int,
    target_vector,
    epsilon: float,
    t_max: float,
    t_step: float,
    engine_target: float = 1e-7,
) -> ProbeResult:
    """Scan t for the derivative vector closest to target_vector (max norm).

    The vector stacks (L, L', ..., L^(N-1)) per parameter pair in order;
    requires 1/2 < sigma < 1, N >= 1 and m*N targets.  Derivatives along
    the grid come from circle-node line sweeps.
    """
    params = tuple(params)
    if not params:
        raise ValueError("need at least one parameter pair")
    if not (0.5 < sigma < 1.0):
        raise ValueError(f"probe requires 1/2 < sigma < 1, got {sigma}")
    if n_derivs < 1:
        raise ValueError("need at least one derivative order")
    target_vector = np.asarray(target_vector, dtype=complex)
    if target_vector.size != len(params) * n_derivs:
        raise ValueError(
            f"target vector needs m*N = {len(params) * n_derivs} entries, "
            f"got {target_vector.size}"
        )
    n_grid = int(math.floor(t_max / t_step + 1e-9)) + 1
    worst = None
    for j, p in enumerate(params):
        derivs = line_derivatives(p, sigma, t_step, n_grid, n_derivs, engine_target)
        for k in range(n_derivs):
            d = np.abs(derivs[k] - target_vector[j * n_derivs + k])
            worst = d if worst is None else np.maximum(worst, d)
    g = int(np.argmin(worst))
    return ProbeResult(
        t_best=g * t_step,
        distance=float(worst[g]),
        n_hits=int(np.count_nonzero(worst < epsilon)),
        n_grid=n_grid,
    )
