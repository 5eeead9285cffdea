import math

import numpy as np
import pytest

from expressions import differentiate, evaluate, parse
from mappings.base import GridSpec
from mappings.harmonic import evaluate_map, wirtinger_derivatives
from surfaces.enneper import (
    associated_map,
    gauss_curvature_values,
    immerse_batch,
    phi_exprs,
    sample_surface,
)
from surfaces.extremal import (
    admissible_we_data,
    extremal_closed_form,
    random_admissible_instances,
)

rng = np.random.default_rng(2024)
RANDOM_POINTS = rng.uniform(-3, 3, 100) + 1j * rng.uniform(0.05, 3, 100)


def test_wirtinger_derivatives_at_i(extremal):
    f_z, f_zbar = wirtinger_derivatives(extremal.map, 1j)
    assert f_z == pytest.approx(1)
    assert f_zbar == pytest.approx(0)


def test_potential_derivative_is_a(extremal):
    np.testing.assert_allclose(
        evaluate(differentiate(extremal.m), RANDOM_POINTS),
        evaluate(extremal.a, RANDOM_POINTS),
        rtol=1e-12,
    )


def test_height_integrand_is_phi_3(extremal):
    _, _, phi_3 = phi_exprs(extremal.we)
    np.testing.assert_allclose(
        evaluate(phi_3, RANDOM_POINTS), evaluate(extremal.t_integrand, RANDOM_POINTS), rtol=1e-12
    )


def test_associated_map_is_the_extremal_map(extremal):
    m = associated_map(extremal.we)
    np.testing.assert_allclose(
        evaluate(m.g_prime, RANDOM_POINTS),
        evaluate(extremal.map.g_prime, RANDOM_POINTS),
        rtol=1e-12,
        atol=1e-14,
    )


def test_real_part_of_potential_is_the_closed_form(extremal):
    u, _, _ = extremal_closed_form(RANDOM_POINTS)
    np.testing.assert_allclose(evaluate(extremal.m, RANDOM_POINTS).real, u, atol=1e-12)


def test_closed_form_at_2i():
    u, v, t = extremal_closed_form(2j)
    assert (float(u), float(v)) == (0.0, 2.0)
    assert float(t) == pytest.approx((3 - 2 * math.log(2)) / 4)


def test_integrated_positions_match_the_closed_form(extremal):
    positions, failures = immerse_batch(extremal.we, RANDOM_POINTS)
    assert failures == {}
    expected = np.stack(extremal_closed_form(RANDOM_POINTS), axis=1)
    np.testing.assert_allclose(positions, expected, atol=1e-8)


def test_closed_form_curvature(extremal):
    r2 = np.abs(RANDOM_POINTS) ** 2
    expected = -16 * r2 / (r2 + 1) ** 4
    actual = gauss_curvature_values(extremal.we, RANDOM_POINTS)
    np.testing.assert_allclose(actual, expected, rtol=1e-10)


def test_projection_fixes_i_and_preserves_height(extremal):
    assert evaluate_map(extremal.map, 1j) == 1j
    for z in RANDOM_POINTS[:5]:
        assert evaluate_map(extremal.map, z).imag == pytest.approx(z.imag, abs=1e-9)


def test_admissible_data_scales_the_imaginary_part():
    we = admissible_we_data(parse("0.5*(z - i)/(z + i)"), a=1j, b=2 + 3j)
    m = associated_map(we)
    assert evaluate_map(m, 1j) == 2 + 3j
    for z in (0.5 + 0.5j, -1 + 2j):
        assert evaluate_map(m, z).imag == pytest.approx(3 * z.imag, abs=1e-9)


def test_random_instances_are_deterministic():
    first = random_admissible_instances(3, seed=5)
    second = random_admissible_instances(3, seed=5)
    assert [str(we.q) for we in first] == [str(we.q) for we in second]
    assert [we.name for we in first] == ["admissible-0", "admissible-1", "admissible-2"]


def test_random_instances_respect_the_sharp_bound():
    grid = GridSpec.from_string("-3:3:40x0.05:3:40")
    points = grid.points()
    for we in random_admissible_instances(5, seed=0):
        c = we.base_value.imag / we.base.imag
        ratio = np.abs(gauss_curvature_values(we, points)) * points.imag**2
        assert np.isfinite(ratio).all()
        assert ratio.max() <= min(1.0, 1 / c**2) + 1e-9


def test_random_instances_sample_cleanly():
    grid = GridSpec.from_string("-2:2:6x0.1:2:5")
    for we in random_admissible_instances(2, seed=1):
        samples = sample_surface(we, grid)
        assert all(s.ok for s in samples)


def test_sharp_bound_on_a_wide_grid(extremal):
    points = GridSpec.from_string("-5:5:100x0.01:5:100").points()
    extremal_ratio = np.abs(gauss_curvature_values(extremal.we, points)) * points.imag**2
    assert 0.99 < extremal_ratio.max() <= 1 + 1e-6
    for we in random_admissible_instances(5, seed=0):
        ratio = np.abs(gauss_curvature_values(we, points)) * points.imag**2
        assert np.isfinite(ratio).all()
        assert ratio.max() <= 1 + 1e-6
