"""Random phase sequences and the truncated random series.

A point of the phase torus is a sequence omega(n) of unit-modulus
complex numbers; the product of uniform angle measures is realized by
i.i.d. angles drawn from a counter-based generator (Philox keyed by the
seed), so phases[n] is reproducible in isolation and independent of
traversal order.  The truncated model is

    L_N(s; alpha, lam; omega) = sum_{n<N} e(lam*n) * omega(n) * (n+alpha)^(-s),

meaningful for sigma > 1/2 where the infinite random series converges
for almost every phase choice; ``tail_estimate`` supplies the L2 cutoff
bound used to pick N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lerch import LerchParameters, StripPoint, series_terms

__all__ = [
    "PhaseSequence",
    "RandomSeriesConfig",
    "sample_phases",
    "phase_at",
    "eval_random_series",
    "tail_estimate",
]


@dataclass(frozen=True)
class PhaseSequence:
    """Unit-modulus phases omega(0..n-1) drawn from seed."""

    phases: np.ndarray
    seed: int
    n: int

    def __post_init__(self):
        phases = np.asarray(self.phases, dtype=complex)
        object.__setattr__(self, "phases", phases)
        if len(phases) != self.n:
            raise ValueError("phase count does not match n")
        if self.n > 0 and float(np.max(np.abs(np.abs(phases) - 1.0))) > 1e-14:
            raise ValueError("phases must have unit modulus within 1e-14")
        phases.setflags(write=False)


@dataclass(frozen=True)
class RandomSeriesConfig:
    """Truncation length and Lerch parameters for the random model."""

    n: int
    params: LerchParameters

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("truncation must be >= 1")


def sample_phases(seed: int, n: int) -> PhaseSequence:
    """Deterministic i.i.d. uniform phases from a counter-based generator."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gen = np.random.Generator(np.random.Philox(key=seed))
    angles = gen.random(n)
    return PhaseSequence(np.exp(2j * np.pi * angles), seed, n)


def phase_at(seed: int, n: int) -> complex:
    """phases[n] of sample_phases(seed, ...) regenerated in isolation.

    Philox counters advance in 128-bit blocks of four 64-bit outputs and
    one uniform double consumes one output, so position n is one
    advance(n // 4) plus at most three discarded draws.
    """
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(n // 4)
    gen = np.random.Generator(bitgen)
    if n % 4:
        gen.random(n % 4)
    return complex(np.exp(2j * np.pi * gen.random()))


def eval_random_series(s: StripPoint, cfg: RandomSeriesConfig, omega: PhaseSequence) -> complex:
    """Truncated random series sum_{n<N} e(lam n) omega(n) (n+alpha)^(-s).

    Requires sigma > 1/2 and omega to provide at least cfg.n phases.
    With identity phases this reproduces the plain partial sum exactly
    (same term code path and summation order).
    """
    if s.sigma <= 0.5:
        raise ValueError(f"random series needs sigma > 1/2, got {s.sigma}")
    if omega.n < cfg.n:
        raise ValueError(
            f"truncation mismatch: config wants {cfg.n} terms, sequence has {omega.n}"
        )
    p = cfg.params
    z = s.to_complex()
    # chunking mirrors the plain partial sum so identity phases match it bitwise
    chunk = 1 << 20
    total = 0.0 + 0.0j
    for lo in range(0, cfg.n, chunk):
        hi = min(lo + chunk, cfg.n)
        terms = series_terms(z, p.alpha, p.lam, lo, hi)
        total += np.sum(terms * omega.phases[lo:hi])
    return complex(total)


def tail_estimate(cfg: RandomSeriesConfig, s: StripPoint) -> float:
    """L2 tail bound (sum_{n>=N}(n+alpha)^(-2 sigma))^(1/2), sigma > 1/2.

    Integral comparison gives sum_{n>=N}(n+alpha)^(-2s) <=
    (N-1+alpha)^(1-2s)/(2s-1).
    """
    if s.sigma <= 0.5:
        raise ValueError(f"tail estimate needs sigma > 1/2, got {s.sigma}")
    sig2 = 2.0 * s.sigma
    n = cfg.n
    a = cfg.params.alpha
    return float(np.sqrt((n - 1.0 + a) ** (1.0 - sig2) / (sig2 - 1.0)))
