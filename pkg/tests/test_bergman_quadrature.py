"""Inner products, Delta transforms, and element norms on Bergman domains."""

import math

import numpy as np
import pytest

from lerchlab.bergman import (
    BergmanDomain,
    BergmanElement,
    DeltaTransform,
    delta_decay_bound,
    delta_transform,
    delta_values,
    inner_product,
    vn_norm_sq,
    vn_norm_sq_batch,
)
from lerchlab.lerch import LerchParameters

from support.oracles import delta_rect_closed

DISK = BergmanDomain.disk(0.75 + 0.2j, 0.05)
RECT = BergmanDomain.rectangle(0.6 + 0j, 0.9 + 1j)
ONE = BergmanElement((1.0,))


def test_disk_area():
    one = BergmanElement((1.0,), DISK.center)
    assert abs(inner_product(one, one, DISK) - math.pi * 0.05**2) <= 1e-10


def test_monomial_orthogonality():
    one = BergmanElement((1.0,), DISK.center)
    lin = BergmanElement((0.0, 1.0), DISK.center)
    assert abs(inner_product(one, lin, DISK)) <= 1e-10


def test_linear_selfproduct():
    lin = BergmanElement((0.0, 1.0), DISK.center)
    assert abs(inner_product(lin, lin, DISK) - math.pi * 0.05**4 / 2.0) <= 1e-9


def test_hermitian_symmetry():
    rng = np.random.default_rng(8)
    for _ in range(5):
        f = BergmanElement(tuple(rng.standard_normal(4) + 1j * rng.standard_normal(4)), DISK.center)
        g = BergmanElement(tuple(rng.standard_normal(3) + 1j * rng.standard_normal(3)), DISK.center)
        a = inner_product(f, g, DISK)
        b = inner_product(g, f, DISK)
        assert abs(a - np.conj(b)) <= 1e-12 * max(1.0, abs(a))


def test_positivity_on_basis():
    """The Gram matrix of monomials up to degree 8 is positive definite."""
    basis = [
        BergmanElement(tuple([0.0] * k + [1.0]), RECT.corner_lo + 0.15 + 0.5j)
        for k in range(9)
    ]
    gram = np.array([[inner_product(f, g, RECT) for g in basis] for f in basis])
    assert np.max(np.abs(gram - gram.conj().T)) <= 1e-13
    eigs = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    assert np.min(eigs) > 0
    for f in basis:
        v = inner_product(f, f, RECT)
        assert abs(v.imag) <= 1e-12 and v.real > 0


def test_quadrature_order_stability():
    """Doubling the order leaves degree-<=8 inner products unchanged."""
    rng = np.random.default_rng(21)
    coeffs = tuple(rng.standard_normal(9) + 1j * rng.standard_normal(9))
    f = BergmanElement(coeffs, 0.75 + 0.5j)
    for dom in (RECT, BergmanDomain.disk(0.75 + 0.2j, 0.05, order=16)):
        v1 = inner_product(f, f, dom)
        v2 = inner_product(f, f, dom.with_order(2 * dom.order))
        assert abs(v1 - v2) <= 1e-12 * max(1.0, abs(v1))


def test_delta_matches_separable_closed_form():
    d = DeltaTransform(ONE, RECT)
    rng = np.random.default_rng(30)
    for _ in range(50):
        z = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
        if abs(z) < 0.5:
            continue
        got = delta_transform(d, z)
        want = delta_rect_closed(RECT.corner_lo, RECT.corner_hi, z)
        assert abs(got - want) <= 1e-9 * abs(want)


def test_delta_at_zero_is_inner_product_with_one():
    g = BergmanElement((0.3 + 0.1j, 1.0 - 0.5j), 0.75 + 0.5j)
    d = DeltaTransform(g, RECT)
    # Delta(0) = integral conj(g) = <1, g>
    want = inner_product(ONE, g, RECT)
    assert abs(delta_transform(d, 0.0) - want) <= 1e-12


def test_delta_modulus_bound_real_axis():
    d = DeltaTransform(ONE, RECT)
    z = 20.0
    assert abs(delta_transform(d, z)) <= RECT.area * math.exp(-0.6 * 20.0)


def test_delta_values_vectorized_consistent():
    zs = np.array([0.5, 1.0 + 2j, 3.0 - 1j, 7.0])
    d = DeltaTransform(ONE, RECT)
    vec = delta_values(ONE, RECT, zs)
    for z, v in zip(zs, vec):
        assert abs(v - delta_transform(d, complex(z))) <= 1e-14


def test_vn_unit_base_is_area():
    p = LerchParameters(1.0, 1.0)
    assert abs(vn_norm_sq(0, p, RECT) - RECT.area) <= 1e-13


def test_vn_bounded_by_left_edge():
    p = LerchParameters(1.0 / np.pi, 0.5)
    for n in (1, 5, 100, 10**4):
        v = vn_norm_sq(n, p, RECT)
        assert v <= RECT.area * (n + p.alpha) ** (-2 * RECT.sigma1) * (1 + 1e-12)


def test_vn_partial_sums_converge():
    p = LerchParameters(1.0 / np.pi, 0.5)
    n1, n2 = 10**5, 2 * 10**5
    tail = vn_norm_sq_batch(np.arange(n1 + 1, n2 + 1), p, RECT)
    diff = float(np.sum(tail))
    bound = n1 ** (1.0 - 2 * RECT.sigma1) / (2 * RECT.sigma1 - 1.0) * RECT.area
    assert diff < bound


def test_vn_batch_matches_scalar():
    p = LerchParameters(0.7, 0.3)
    ns = np.array([0, 3, 17, 240])
    batch = vn_norm_sq_batch(ns, p, DISK)
    for n, v in zip(ns, batch):
        assert abs(v - vn_norm_sq(int(n), p, DISK)) <= 1e-13


def test_decay_envelope_with_explicit_constant():
    """|Delta(t)| <= area * sup|g| * e^(sigma1) * e^(-sigma1 t) on t in [x, x+1]."""
    d = DeltaTransform(ONE, RECT)
    for t in np.arange(5.0, 30.5, 0.5):
        assert abs(delta_transform(d, float(t))) <= delta_decay_bound(ONE, RECT, float(t))


def test_domain_validation():
    with pytest.raises(ValueError):
        BergmanDomain.rectangle(0.5 + 0j, 0.9 + 1j)  # touches the strip edge
    with pytest.raises(ValueError):
        BergmanDomain.disk(0.75 + 0j, 0.05, order=4)  # order too small
    with pytest.raises(ValueError):
        BergmanElement(tuple([1.0] * 34))  # degree over 32
