import numpy as np
import pytest

from kgwall.grid import (
    Spectrum, forward, frac_half_norm, frac_laplacian_apply, inverse,
    make_grid,
)
from kgwall.diagnostics import l2_norm


@pytest.mark.parametrize("length, n", [(100, 9999), (100, 2), (0, 10),
                                       (-1, 10), (100, 10.5)])
def test_make_grid_rejects(length, n):
    with pytest.raises(ValueError):
        make_grid(length, n)


def test_wall_grid_hits_integer_positions(wall_grid):
    assert wall_grid.dx == pytest.approx(0.01, rel=1e-15)
    assert wall_grid.x[4000] == 40.0
    assert wall_grid.x[5000] == 50.0
    assert wall_grid.index_of(40.0) == 4000


def test_grid_arrays_are_read_only(torus):
    with pytest.raises(ValueError):
        torus.x[0] = 1.0


def test_transform_round_trip(torus):
    field = np.random.default_rng(0).standard_normal(torus.n)
    spectrum = forward(field, torus)
    assert isinstance(spectrum, Spectrum)
    assert np.max(np.abs(spectrum.to_field() - field)) < 1e-12


def test_parseval(torus):
    field = np.random.default_rng(1).standard_normal(torus.n)
    assert forward(field, torus).norm() == pytest.approx(
        l2_norm(field, torus), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_frac_laplacian_of_a_mode(torus, alpha):
    k = 3
    field = np.cos(k * torus.x)
    result = frac_laplacian_apply(field, alpha, torus)
    expected = k ** (2 * alpha) * field
    assert np.max(np.abs(result - expected)) < 1e-10 * k ** (2 * alpha)


def test_laplacian_is_minus_second_derivative(torus):
    field = np.sin(2 * torus.x) + 0.5 * np.cos(5 * torus.x)
    second = -4 * np.sin(2 * torus.x) - 12.5 * np.cos(5 * torus.x)
    result = frac_laplacian_apply(field, 1.0, torus)
    assert np.max(np.abs(result + second)) < 1e-10


def test_constants_are_in_the_kernel(torus):
    result = frac_laplacian_apply(np.full(torus.n, 3.0), 0.7, torus)
    assert np.max(np.abs(result)) < 1e-12


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_frac_half_norm_of_a_mode(torus, alpha):
    k = 4
    value = frac_half_norm(np.cos(k * torus.x), alpha, torus)
    assert value == pytest.approx(k ** alpha * np.sqrt(np.pi), rel=1e-10)


def test_alpha_must_be_positive(torus):
    with pytest.raises(ValueError):
        frac_laplacian_apply(np.zeros(torus.n), 0.0, torus)
    with pytest.raises(ValueError):
        frac_half_norm(np.zeros(torus.n), -1.0, torus)


def test_length_mismatch(torus):
    with pytest.raises(ValueError):
        forward(np.zeros(torus.n + 2), torus)


def test_inverse_drops_imaginary_part(torus):
    spectrum = forward(np.cos(torus.x), torus)
    field = inverse(spectrum)
    assert field.dtype == float


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_frac_laplacian_is_linear(torus, alpha):
    rng = np.random.default_rng(7)
    u, v = rng.standard_normal((2, torus.n))
    a, b = 1.7, -0.4
    combined = frac_laplacian_apply(a * u + b * v, alpha, torus)
    separate = (a * frac_laplacian_apply(u, alpha, torus)
                + b * frac_laplacian_apply(v, alpha, torus))
    assert l2_norm(combined - separate, torus) \
        <= 1e-12 * l2_norm(combined, torus)


@pytest.mark.parametrize("alpha", [0.25, 1.0, 1.75])
def test_rayleigh_quotient_of_every_mode(torus, alpha):
    for k in range(torus.n // 2 + 1):
        for field in (np.cos(k * torus.x), np.sin(k * torus.x)):
            norm2 = np.dot(field, field)
            if norm2 < 1e-12:
                continue
            quotient = np.dot(frac_laplacian_apply(field, alpha, torus),
                              field) / norm2
            assert quotient >= -1e-12
            assert quotient == pytest.approx(k ** (2 * alpha), rel=1e-9,
                                             abs=1e-9)


def test_second_order_agreement_with_central_differences():
    steps = []
    errors = []
    for n in (64, 128, 256, 512):
        grid = make_grid(2 * np.pi, n)
        field = np.exp(np.sin(grid.x))
        central = (2 * field - np.roll(field, 1)
                   - np.roll(field, -1)) / grid.dx ** 2
        spectral = frac_laplacian_apply(field, 1.0, grid)
        steps.append(grid.dx)
        errors.append(l2_norm(spectral - central, grid)
                      / l2_norm(spectral, grid))
    order = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    assert 1.8 <= order <= 2.2
    assert errors[-1] < 1e-3
