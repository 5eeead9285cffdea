import json
import logging
import math

import numpy as np
import pytest

from expressions import Const, parse
from mappings.base import DiskGridSpec, DomainMembershipError, GridSpec, HarmonicMap, MappingError
from mappings.harmonic import (
    affine_positive_part,
    df_norm,
    dilatation,
    evaluate_map,
    halfplane_diffeomorphism,
    heinz_lower_bound,
    jacobian,
    map_values,
    sense_preserving_at,
    verify_heinz,
    verify_heinz_disk,
    wirtinger_derivatives,
)
from surfaces.extremal import extremal_closed_form


def test_identity_first_order_data(identity):
    for z in (1j, -3 + 0.2j, 5 + 5j):
        assert df_norm(identity, z) == 1
        assert jacobian(identity, z) == 1
        assert dilatation(identity, z) == 0


def test_extremal_first_order_data_at_i(extremal):
    assert df_norm(extremal.map, 1j) == pytest.approx(1)
    assert jacobian(extremal.map, 1j) == pytest.approx(1)
    assert dilatation(extremal.map, 1j) == pytest.approx(0)
    assert wirtinger_derivatives(extremal.map, 1j) == pytest.approx((1, 0))


def test_extremal_df_norm_at_2i(extremal):
    # a(2i) = 5/4
    assert df_norm(extremal.map, 2j) == pytest.approx(1.25)


def test_first_order_data_reject_points_off_the_halfplane(identity):
    with pytest.raises(ValueError):
        df_norm(identity, -1j)


def test_evaluate_map_at_base(extremal, identity):
    assert evaluate_map(extremal.map, 1j) == 1j
    assert evaluate_map(identity, 1j) == 1j


def test_extremal_map_closed_form_image(extremal):
    value = evaluate_map(extremal.map, 1 + 1j)
    assert value == pytest.approx(0.5 * (1 + math.pi / 4) + 1j, abs=1e-10)


def test_map_values_follow_the_closed_form(extremal):
    points = np.array([0.5 + 0.5j, -2 + 0.1j, 3 + 2.5j, 0.01 + 4j])
    values, failures = map_values(extremal.map, points)
    assert failures == {}
    u, v, _ = extremal_closed_form(points)
    np.testing.assert_allclose(values.real, u, atol=1e-9)
    np.testing.assert_allclose(values.imag, v, atol=1e-9)


def test_map_values_record_failures(identity):
    values, failures = map_values(identity, np.array([2j, -2j]))
    assert values[0] == pytest.approx(2j)
    assert list(failures) == [1]
    assert np.isnan(values[1])


def test_closed_form_mismatch_is_logged(caplog):
    wrong = HarmonicMap(h_prime=Const(1), g_prime=Const(0), closed_form_re=parse("z + 1"))
    with caplog.at_level(logging.WARNING, logger="mappings.harmonic"):
        evaluate_map(wrong, 2 + 1j)
    assert "deviates from its closed form" in caplog.text


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (1j, 1j, 1.0),
        (2j, 1j, 0.5),
        (1 + 3j, 5 + 6j, 2.0),
    ],
)
def test_heinz_lower_bound(a, b, expected):
    assert heinz_lower_bound(a, b) == pytest.approx(expected)


def test_heinz_lower_bound_needs_halfplane_points():
    with pytest.raises(DomainMembershipError):
        heinz_lower_bound(-1j, 1j)


def test_verify_heinz_identity(identity, small_grid):
    report = verify_heinz(identity, small_grid)
    assert report.min_value == 1
    assert report.bound == 1
    assert report.passed
    assert report.samples == small_grid.size


def test_verify_heinz_extremal_on_a_fine_grid(extremal):
    grid = GridSpec(re_min=-5, re_max=5, im_min=0.01, im_max=5, n_re=100, n_im=100)
    report = verify_heinz(extremal.map, grid)
    assert report.min_value >= 1 - 1e-9
    assert report.passed
    assert not report.failures


def test_verify_heinz_reports_violations(small_grid):
    broken = HarmonicMap(h_prime=Const(0.4), g_prime=Const(0), name="broken")
    report = verify_heinz(broken, small_grid)
    assert report.min_value == pytest.approx(0.4)
    assert not report.passed
    assert len(report.violations) == small_grid.size
    assert report.to_json_dict()["violations"][0]["value"] == pytest.approx(0.4)


def test_verify_heinz_skips_points_that_are_not_sense_preserving(small_grid):
    folded = HarmonicMap(h_prime=Const(1), g_prime=Const(2), name="folded")
    report = verify_heinz(folded, small_grid)
    assert report.samples == 0
    assert len(report.failures) == small_grid.size
    assert "sense-preserving" in report.failures[0].message
    summary = report.to_json_dict()
    assert summary["min_value"] is None
    assert summary["argmin"] is None
    json.dumps(summary, allow_nan=False)


def test_verify_heinz_disk_extremal(extremal):
    report = verify_heinz_disk(extremal.map)
    assert report.bound == pytest.approx(0.5)
    assert report.min_value >= 0.5 - 1e-9
    assert report.passed


def test_verify_heinz_disk_uses_the_image_of_i():
    # f(z) = z + 1 maps i to 1 + i; |DF| is smallest at -1/2 on the disk grid
    shifted = HarmonicMap(h_prime=Const(1), g_prime=Const(0), base_a=1 + 1j, base_b=2 + 1j)
    report = verify_heinz_disk(shifted, DiskGridSpec(radius=0.5, n_radial=5, n_angular=8))
    assert report.bound == pytest.approx(0.5)
    assert report.min_value == pytest.approx(2 / 2.25)


def test_halfplane_diffeomorphism_normalization():
    a, b = 1 + 3j, 5 + 6j
    m = halfplane_diffeomorphism(a, b, affine_positive_part(1.0, 0.5), name="affine")
    assert evaluate_map(m, a) == b
    for z in (0.5j, -2 + 1j, 3 + 4j):
        assert evaluate_map(m, z).imag == pytest.approx(2 * z.imag, abs=1e-9)
        assert jacobian(m, z) > 0
        assert df_norm(m, z) >= 2 - 1e-12
    assert verify_heinz(m, GridSpec.from_string("-3:3:20x0.05:3:20")).passed


def test_halfplane_diffeomorphism_needs_positive_real_part():
    with pytest.raises(MappingError):
        halfplane_diffeomorphism(1j, 1j, Const(-1.0))
    with pytest.raises(MappingError):
        affine_positive_part(0.0, 1.0)


def test_sense_preserving_mask(extremal):
    mask = sense_preserving_at(extremal.map, np.array([1j, 2 + 0.1j, -3 + 3j]))
    assert mask.all()


def test_map_base_must_lie_in_the_halfplane():
    with pytest.raises(ValueError):
        HarmonicMap(h_prime=Const(1), g_prime=Const(0), base_a=-1j)
