"""Analytic continuation: identities, overlap, conjugation, honesty."""

import numpy as np
import pytest

from lerchlab.errors import ConvergenceError, PoleError
from lerchlab.lerch import LerchParameters, StripPoint, eval_continued, eval_series

from support.oracles import eta_combination_ref, hurwitz_em_oracle, lerch_ref, zeta_ref

# zeta(3/4) from the extended-precision oracle (mpmath, 30 digits)
ZETA_075 = -3.4412853869452229


def test_zeta_at_three_quarters():
    res = eval_continued(StripPoint(0.75, 0.0), LerchParameters(1.0, 1.0), 1e-10)
    assert abs(res.value - ZETA_075) <= 1e-9
    # the independent doubled-order Euler-Maclaurin oracle agrees
    assert abs(hurwitz_em_oracle(0.75, 0.0, 1.0) - ZETA_075) < 1e-12


def test_overlap_with_series():
    s = StripPoint(1.5, 0.0)
    p = LerchParameters(1.0, 1.0)
    a = eval_series(s, p, 200000)
    b = eval_continued(s, p, 1e-12)
    assert abs(a.value - b.value) <= a.abs_error_bound + b.abs_error_bound


def test_twisted_point_self_consistency():
    """Same value from the production run and from a doubled-cutoff,
    refined-quadrature run; cross-checked against mpmath."""
    s = StripPoint(0.75, 2.0)
    p = LerchParameters(1.0 / np.pi, 1.0 / 3.0)
    res = eval_continued(s, p, 1e-10)

    from lerchlab.lerch import _abel_plana_tail, _main_sum

    m2 = 2 * res.terms_used
    main, _, _ = _main_sum(s.to_complex(), p.alpha, p.lam, m2)
    tail, _, _ = _abel_plana_tail(s.to_complex(), p.alpha, p.lam, m2, 1e-14, refine=2)
    assert abs(res.value - (main + tail)) <= 1e-9

    ref = lerch_ref(0.75, 2.0, p.alpha, p.lam)
    assert abs(res.value - ref) <= 1e-10


def test_riemann_reduction():
    """lam = alpha = 1 reduces to the Riemann zeta-function."""
    rng = np.random.default_rng(3)
    p = LerchParameters(1.0, 1.0)
    for _ in range(10):
        sigma = float(rng.choice([0.55, 0.75, 1.5, 2.0]))
        t = float(rng.uniform(-30, 30))
        if abs(complex(sigma, t) - 1) <= 0.1:
            continue
        res = eval_continued(StripPoint(sigma, t), p, 1e-10)
        assert abs(res.value - zeta_ref(sigma, t)) <= 1e-9


def test_eta_identity():
    """L(s; 1, 1/2) = (1 - 2^(1-s)) zeta(s)."""
    p = LerchParameters(1.0, 0.5)
    for sigma, t in [(0.55, 3.0), (0.75, -11.0), (1.5, 0.0), (2.0, 29.0)]:
        res = eval_continued(StripPoint(sigma, t), p, 1e-10)
        assert abs(res.value - eta_combination_ref(sigma, t)) <= 1e-9


def test_conjugation_symmetry():
    """conj(L(s; alpha, lam)) = L(conj(s); alpha, 1 - lam) for 0 < lam < 1."""
    for sigma, t, alpha, lam in [
        (0.75, 4.0, 1.0 / np.pi, 0.3),
        (0.6, -9.0, 0.5, 0.25),
        (1.3, 17.0, 0.9, 2.0 / 3.0),
    ]:
        a = eval_continued(StripPoint(sigma, t), LerchParameters(alpha, lam), 1e-12)
        b = eval_continued(StripPoint(sigma, -t), LerchParameters(alpha, 1.0 - lam), 1e-12)
        assert abs(np.conj(a.value) - b.value) <= 1e-10


def test_pole_reported_not_evaluated():
    p = LerchParameters(0.3, 1.0)
    with pytest.raises(PoleError):
        eval_continued(StripPoint(1.0, 0.0), p, 1e-8)
    with pytest.raises(PoleError):
        eval_continued(StripPoint(1.0005, 0.0), p, 1e-8)
    # just outside the exclusion radius it evaluates
    res = eval_continued(StripPoint(1.002, 0.0), p, 1e-8)
    assert np.isfinite(res.value)


def test_sigma_domain():
    with pytest.raises(ValueError):
        eval_continued(StripPoint(0.0, 3.0), LerchParameters(1.0, 0.5), 1e-8)
    with pytest.raises(ValueError):
        eval_continued(StripPoint(0.5, 3.0), LerchParameters(1.0, 0.5), 0.0)


def test_nonconvergence_reported():
    """lambda essentially on top of an integer makes the twisted tail
    unreachable at desk scale; the failure is reported, not silent."""
    with pytest.raises(ConvergenceError):
        eval_continued(StripPoint(0.75, 30.0), LerchParameters(0.5, 1e-12), 1e-9)


def test_error_honesty_sample():
    """Realized error <= reported bound at every sampled point."""
    rng = np.random.default_rng(11)
    for _ in range(30):
        sigma = float(rng.uniform(0.55, 2.5))
        t = float(rng.uniform(-30, 30))
        alpha = float(rng.uniform(0.1, 1.0))
        lam = float(rng.choice([1.0, 0.5, rng.uniform(0.05, 0.95)]))
        if lam == 1.0 and abs(complex(sigma, t) - 1) < 0.2:
            continue
        res = eval_continued(StripPoint(sigma, t), LerchParameters(alpha, lam), 1e-9)
        ref = lerch_ref(sigma, t, alpha, lam)
        assert abs(res.value - ref) <= res.abs_error_bound
        assert res.abs_error_bound <= 1e-9
