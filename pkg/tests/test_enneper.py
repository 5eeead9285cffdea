import math

import numpy as np
import pytest

from expressions import evaluate, parse
from integrators import PathError
from mappings.base import Domain, DomainMembershipError, GridSpec, LewyViolationError
from mappings.harmonic import dilatation
from surfaces.base import (
    AdmissibilityError,
    IndeterminateCurvatureError,
    StencilError,
    WEData,
)
from surfaces.enneper import (
    associated_map,
    check_admissible,
    conformal_factor,
    conformality_residual,
    curvature_bound,
    first_fundamental_form,
    gauss_curvature,
    gauss_curvature_dilatation,
    gauss_curvature_fd,
    gauss_curvature_values,
    immerse,
    phi,
    sample_surface,
    schober_bound,
)


def we_data(p: str, q: str, **kwargs) -> WEData:
    return WEData(p=parse(p), q=parse(q), **kwargs)


def test_phi_of_a_plane(plane):
    assert phi(plane, 2 + 1j) == pytest.approx((1, -1j, 0))


def test_phi_of_extremal_at_i(extremal):
    assert phi(extremal.we, 1j) == pytest.approx((1, -1j, 0))


@pytest.mark.parametrize(
    "p, q, z",
    [
        ("1", "z", 0.3 + 0.4j),
        ("z", "0.5", 2j),
        ("exp(z)", "(z - i)/(z + 2*i)", -1 + 0.5j),
    ],
)
def test_conformality_residual(p, q, z):
    assert conformality_residual(we_data(p, q), z) <= 1e-12


def test_conformality_residual_on_extremal(extremal):
    rng = np.random.default_rng(0)
    points = rng.uniform(-3, 3, 100) + 1j * rng.uniform(0.05, 3, 100)
    assert max(conformality_residual(extremal.we, z) for z in points) <= 1e-12


def test_immerse_at_base_is_the_base_value():
    we = we_data("1", "z/2", base=1 + 2j, base_value=3 + 4j)
    assert immerse(we, 1 + 2j) == pytest.approx((3, 4, 0))


def test_immerse_extremal(extremal):
    assert immerse(extremal.we, 1j) == pytest.approx((0, 1, 0), abs=1e-15)
    u, v, t = immerse(extremal.we, 2j)
    assert u == pytest.approx(0, abs=1e-12)
    assert v == pytest.approx(2)
    assert t == pytest.approx((3 - 2 * math.log(2)) / 4, abs=1e-10)


def test_immerse_rejects_points_off_the_halfplane(extremal):
    with pytest.raises(PathError):
        immerse(extremal.we, -1j)


def test_projection_is_the_associated_map():
    we = we_data("1 + z/4", "(z - i)/(z + 3*i)")
    m = associated_map(we)
    for z in (0.5 + 1j, -2 + 0.1j):
        assert dilatation(m, z) == pytest.approx(evaluate(we.q, z) ** 2)


@pytest.mark.parametrize(
    "p, q, z, expected",
    [
        ("1", "0", 1j, 1.0),
        ("1", "z", 0.5, 1.25),
    ],
)
def test_conformal_factor(p, q, z, expected):
    assert conformal_factor(we_data(p, q), z) == pytest.approx(expected)


def test_conformal_factor_of_extremal_at_i(extremal):
    assert conformal_factor(extremal.we, 1j) == pytest.approx(1)


def test_curvature_of_planes():
    assert gauss_curvature(we_data("1", "0"), 1j) == 0
    assert gauss_curvature(we_data("1", "0.5"), 2 + 3j) == 0


def test_curvature_examples(extremal):
    assert gauss_curvature(extremal.we, 1j) == pytest.approx(-1, abs=1e-12)
    assert gauss_curvature(we_data("1", "z"), 0) == pytest.approx(-4)


def test_curvature_needs_nonvanishing_p():
    with pytest.raises(LewyViolationError):
        gauss_curvature(we_data("z - i", "z/4"), 1j)


def test_dilatation_route_agrees(extremal):
    for z in (2j, 1 + 0.5j, -2 + 3j):
        expected = gauss_curvature(extremal.we, z)
        assert gauss_curvature_dilatation(extremal.map, z) == pytest.approx(expected, rel=1e-8)


def test_dilatation_route_is_indeterminate_where_g_prime_vanishes(extremal):
    with pytest.raises(IndeterminateCurvatureError):
        gauss_curvature_dilatation(extremal.map, 1j)
    with pytest.raises(IndeterminateCurvatureError):
        gauss_curvature_dilatation(associated_map(we_data("1", "z")), 0)


def test_fd_curvature_of_a_plane():
    assert gauss_curvature_fd(we_data("1", "0.5"), 1 + 1j) == pytest.approx(0, abs=1e-6)


def test_fd_curvature_of_extremal_at_i(extremal):
    assert gauss_curvature_fd(extremal.we, 1j) == pytest.approx(-1, abs=1e-4)


def test_fd_curvature_against_closed_form():
    z = 0.3j
    expected = -4 / (1 + abs(z) ** 2) ** 4
    assert gauss_curvature_fd(we_data("1", "z"), z) == pytest.approx(expected, abs=1e-4)


def test_fd_stencil_must_stay_in_the_halfplane(extremal):
    with pytest.raises(StencilError):
        gauss_curvature_fd(extremal.we, 1e-5j)
    with pytest.raises(StencilError):
        gauss_curvature_fd(extremal.we, 0.5j, h=0.6)


def test_curvature_values_match_scalar_route(extremal):
    points = np.array([1j, 0.5 + 0.2j, -2 + 2j])
    expected = [gauss_curvature(extremal.we, z) for z in points]
    np.testing.assert_allclose(gauss_curvature_values(extremal.we, points), expected, rtol=1e-12)


def test_curvature_bound_examples(extremal, plane):
    assert curvature_bound(extremal.we, 1j) == pytest.approx(0.25)
    assert curvature_bound(plane, 0, Domain.DISK) == pytest.approx(1)
    bound = curvature_bound(plane, 3 + 0.5j)
    assert bound > 0
    assert abs(gauss_curvature(plane, 3 + 0.5j)) <= bound


def test_curvature_is_within_four_times_the_bound(extremal):
    rng = np.random.default_rng(1)
    for z in rng.uniform(-3, 3, 25) + 1j * rng.uniform(0.05, 3, 25):
        assert abs(gauss_curvature(extremal.we, z)) <= 4 * curvature_bound(extremal.we, z) * (
            1 + 1e-12
        )


def test_schober_bound():
    assert schober_bound(1j) == 1
    assert schober_bound(2j) == 0.25
    assert schober_bound(7 + 2j) == 0.25
    with pytest.raises(DomainMembershipError):
        schober_bound(-1j)


def test_check_admissible():
    check_admissible(we_data("1", "z/4"), 1j)
    with pytest.raises(AdmissibilityError):
        check_admissible(we_data("1", "z"), 2j)
    with pytest.raises(AdmissibilityError):
        check_admissible(we_data("z - i", "0"), 1j)


def test_first_fundamental_form_is_isothermal(extremal):
    for z in (0.5 + 1j, -1 + 0.4j):
        e, f, g = first_fundamental_form(extremal.we, z)
        lam = conformal_factor(extremal.we, z)
        assert g == pytest.approx(e, rel=1e-5)
        assert abs(f) <= 1e-5 * e
        assert e == pytest.approx(lam**2, rel=1e-4)


def test_sample_surface_single_point_at_base(extremal):
    grid = GridSpec(re_min=0, re_max=0, im_min=1, im_max=1, n_re=1, n_im=1)
    (sample,) = sample_surface(extremal.we, grid)
    assert sample.ok
    assert sample.position == pytest.approx((0, 1, 0), abs=1e-15)
    assert sample.K == pytest.approx(-1)
    assert sample.ratio == pytest.approx(1)
    assert sample.sharp_bound == pytest.approx(1)


def test_sample_surface_of_extremal_attains_the_sharp_bound_near_i(extremal):
    grid = GridSpec.from_string("-3:3:50x0.05:3:50")
    samples = sample_surface(extremal.we, grid)
    assert len(samples) == grid.size
    assert all(s.ok for s in samples)
    best = max(samples, key=lambda s: s.ratio)
    assert best.ratio <= 1 + 1e-6
    assert best.ratio > 0.95
    assert abs(best.z - 1j) < 0.1
    assert all(abs(s.K_fd - s.K) <= max(1e-5, 1e-3 * abs(s.K)) for s in samples)


def test_sample_surface_row_major_order(small_grid, plane):
    samples = sample_surface(plane, small_grid)
    np.testing.assert_array_equal([s.z for s in samples], small_grid.points())
    assert samples[1].z.imag == samples[0].z.imag
    assert samples[1].z.real > samples[0].z.real


def test_sample_surface_of_a_plane(plane, small_grid):
    samples = sample_surface(plane, small_grid)
    assert all(s.K == 0 for s in samples)
    assert all(s.position[2] == 0 for s in samples)
    assert all(s.ratio == 0 for s in samples)


def test_sample_surface_flags_points_outside_the_unit_disk_image(small_grid):
    samples = sample_surface(we_data("1", "z"), small_grid)
    for s in samples:
        if abs(s.z) >= 1:
            assert not s.ok
            assert "not below 1" in s.error
        else:
            assert s.ok
    assert any(s.ok for s in samples)
