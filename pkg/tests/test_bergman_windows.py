"""Windowed sums, the square decomposition, and the divergence diagnostic."""

import math

import numpy as np
import pytest

from lerchlab.bergman import (
    BergmanDomain,
    BergmanElement,
    TupleElement,
    divergence_diagnostic,
    windowed_sums,
)
from lerchlab.errors import EmptyWindowError
from lerchlab.lerch import LerchParameters

from support.oracles import delta_rect_closed

RECT = BergmanDomain.rectangle(0.6 + 0j, 0.9 + 1j)
ONE = BergmanElement((1.0,))
ALPHA = 1.0 / np.pi
P13 = LerchParameters(ALPHA, 1.0 / 3.0)
P23 = LerchParameters(ALPHA, 2.0 / 3.0)


def brute_windowed(lams, x, scale, m_exp):
    """Independent loop over the window using the closed-form transform."""
    lo = math.exp(x)
    hi = math.exp(x + scale * x ** (-2 * m_exp))
    n_lo = max(int(math.ceil(lo - ALPHA)), 0)
    n_hi = int(math.floor(hi - ALPHA))
    s1 = 0.0
    s2 = 0.0 + 0.0j
    s = 0.0
    sq = 0.0
    for n in range(n_lo, n_hi + 1):
        w = math.log(n + ALPHA)
        deltas = [delta_rect_closed(RECT.corner_lo, RECT.corner_hi, w) for _ in lams]
        phases = [np.exp(2j * np.pi * ((lam * n) % 1.0)) for lam in lams]
        inner = sum(ph * d for ph, d in zip(phases, deltas))
        s1 += sum(abs(d) ** 2 for d in deltas)
        s += abs(inner)
        sq += abs(inner) ** 2
        for k in range(len(lams)):
            for l in range(len(lams)):
                if k != l:
                    s2 += (
                        np.exp(2j * np.pi * (((lams[l] - lams[k]) * n) % 1.0))
                        * deltas[k]
                        * np.conj(deltas[l])
                    )
    return s1, s2, s, sq, n_lo, n_hi


def test_single_component_has_no_cross_terms():
    ws = windowed_sums(TupleElement((ONE,)), [P13], RECT, 5.0, 1, 1.0)
    assert ws.s2 == 0
    assert abs(ws.sq_sum - ws.s1) <= 1e-12 * ws.s1


def test_zero_element_gives_zero_sums():
    zero = BergmanElement((0.0,))
    ws = windowed_sums(TupleElement((zero, zero)), [P13, P23], RECT, 5.0, 1, 1.0)
    assert ws.s1 == 0 and ws.s2 == 0 and ws.s == 0


def test_two_component_fixture_matches_bruteforce():
    """The pinned two-component window at x = 5, unit scale."""
    g = TupleElement((ONE, ONE))
    ws = windowed_sums(g, [P13, P23], RECT, 5.0, 1, 1.0)
    s1b, s2b, sb, sqb, n_lo, n_hi = brute_windowed([P13.lam, P23.lam], 5.0, 1.0, 1)
    assert (ws.n_lo, ws.n_hi) == (n_lo, n_hi)
    assert abs(ws.s1 - s1b) <= 1e-10 * s1b
    assert abs(ws.s - sb) <= 1e-10 * sb
    assert abs(ws.sq_sum - sqb) <= 1e-10 * sqb
    assert abs(ws.s2 - s2b) <= 1e-10 * max(abs(s2b), s1b)
    # the square decomposition holds on the brute side too
    assert abs(sqb - (s1b + s2b.real)) <= 1e-9 * sqb


def test_empty_window_reported():
    # exponent 2 at x = 5 gives a width-0.24 window with no integer inside
    with pytest.raises(EmptyWindowError):
        windowed_sums(TupleElement((ONE, ONE)), [P13, P23], RECT, 5.0, 2, 1.0)


def test_window_cap():
    with pytest.raises(ValueError):
        windowed_sums(TupleElement((ONE,)), [P13], RECT, 19.0, 1, 1.0)


def test_duplicate_lambdas_rejected():
    with pytest.raises(ValueError):
        windowed_sums(TupleElement((ONE, ONE)), [P13, P13], RECT, 5.0, 1, 1.0)


def test_mismatched_alpha_rejected():
    other = LerchParameters(0.5, 2.0 / 3.0)
    with pytest.raises(ValueError):
        windowed_sums(TupleElement((ONE, ONE)), [P13, other], RECT, 5.0, 1, 1.0)


def test_diagnostic_zero_element():
    zero = BergmanElement((0.0,))
    rep = divergence_diagnostic(TupleElement((zero,)), [P13], RECT, [4.0, 5.0, 6.0])
    for row in rep.rows:
        assert row.s == 0 and row.s1 == 0 and row.cum_sum == 0
        assert row.envelope > 0


def test_diagnostic_cumulative_increases():
    rep = divergence_diagnostic(TupleElement((ONE,)), [P13], RECT, [4.0, 5.0, 6.0, 7.0])
    cums = [row.cum_sum for row in rep.rows]
    assert all(b > a for a, b in zip(cums, cums[1:]))
    assert all(not row.window_empty for row in rep.rows)


def test_diagnostic_envelope_column():
    rep = divergence_diagnostic(TupleElement((ONE,)), [P13], RECT, [5.0])
    row = rep.rows[0]
    assert abs(row.envelope - math.exp(5.0 * (1.0 - 0.9)) / 5.0**2) <= 1e-12


def test_decay_slope_regression():
    """|Delta(log u)| follows ~u^(-0.6) on u in [1e2, 1e4]: the log-log
    regression slope over 25 log-spaced samples sits in [-0.65, -0.55]
    (closed-form transform oracle)."""
    u = np.exp(np.linspace(np.log(1e2), np.log(1e4), 25))
    vals = np.array(
        [abs(delta_rect_closed(RECT.corner_lo, RECT.corner_hi, math.log(x))) for x in u]
    )
    slope = np.polyfit(np.log(u), np.log(vals), 1)[0]
    assert -0.65 <= slope <= -0.55
    # and the quadrature transform reproduces the oracle on this range
    from lerchlab.bergman import delta_values

    quad = np.abs(delta_values(ONE, RECT, np.log(u)))
    assert np.max(np.abs(quad - vals) / vals) <= 1e-9


def test_report_serialization():
    rep = divergence_diagnostic(TupleElement((ONE,)), [P13], RECT, [5.0, 6.0])
    csv = rep.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "x,S,S1,|S2|,envelope,cum_sum"
    assert len(lines) == 3
    payload = rep.to_json()
    assert '"rows"' in payload and '"sigma2"' in payload
