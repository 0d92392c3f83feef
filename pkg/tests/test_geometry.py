import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nspradar.errors import DomainError
from nspradar.geometry import (
    AngleDeg,
    UlaGeometry,
    UraGeometry,
    linear_index,
    steering_azimuth,
    steering_elevation,
    steering_joint,
    ula_response,
)

from oracles import steering_loop

angles = st.floats(-180, 180, allow_nan=False)
sizes = st.integers(1, 12)


class TestLinearIndex:
    def test_origin(self):
        assert linear_index(1, 1, UraGeometry(5, 4)) == 1

    def test_last_element(self):
        g = UraGeometry(5, 4)
        assert linear_index(g.m_v, g.m_h, g) == 20

    def test_formula(self):
        assert linear_index(2, 3, UraGeometry(5, 4)) == 10

    @pytest.mark.parametrize("l, k", [(0, 1), (5, 1), (1, 0), (1, 6)])
    def test_out_of_range(self, l, k):
        with pytest.raises(IndexError):
            linear_index(l, k, UraGeometry(5, 4))

    def test_bijective(self):
        g = UraGeometry(6, 7)
        labels = {linear_index(l, k, g) for l in range(1, 8) for k in range(1, 7)}
        assert labels == set(range(1, g.m + 1))


class TestGeometryTypes:
    @pytest.mark.parametrize("kw", [dict(m_h=0, m_v=1), dict(m_h=1, m_v=0),
                                    dict(m_h=2, m_v=2, spacing=0.0),
                                    dict(m_h=2.5, m_v=2)])
    def test_ura_rejects(self, kw):
        with pytest.raises(DomainError):
            UraGeometry(**kw)

    def test_total_elements(self):
        assert UraGeometry(40, 25).m == 1000

    def test_ula_rejects_zero(self):
        with pytest.raises(DomainError):
            UlaGeometry(0)

    @pytest.mark.parametrize("az, el", [(181, 0), (0, 91), (float("nan"), 0)])
    def test_angle_bounds(self, az, el):
        with pytest.raises(DomainError):
            AngleDeg(az, el)


class TestSteering:
    def test_single_element(self):
        assert np.array_equal(steering_azimuth(33.0, UraGeometry(1, 1)).entries, [1])
        assert np.array_equal(steering_elevation(-12.0, UraGeometry(1, 1)).entries, [1])

    def test_broadside_all_ones(self):
        g = UraGeometry(7, 5)
        np.testing.assert_allclose(steering_azimuth(90, g).entries, np.ones(7), atol=1e-15)
        np.testing.assert_allclose(steering_elevation(90, g).entries, np.ones(5), atol=1e-15)
        np.testing.assert_allclose(steering_joint(90, 90, g).entries, np.ones(35), atol=1e-15)

    def test_two_element_endfire(self):
        a = steering_azimuth(0.0, UraGeometry(2, 1, 0.5)).entries
        np.testing.assert_allclose(a, [1, -1], atol=1e-15)

    def test_three_element_sixty_degrees(self):
        a = steering_elevation(60.0, UraGeometry(1, 3, 0.5)).entries
        np.testing.assert_allclose(a, [1, np.exp(-0.5j * np.pi), np.exp(-1j * np.pi)],
                                   atol=1e-15)

    def test_domain_tags(self):
        g = UraGeometry(2, 2)
        assert steering_azimuth(0, g).domain == "azimuth"
        assert steering_elevation(0, g).domain == "elevation"
        assert steering_joint(0, 0, g).domain == "joint"

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            steering_azimuth(float("inf"), UraGeometry(3, 3))

    def test_vectorized_columns_match_scalar(self):
        cols = ula_response([-30.0, 10.0, 75.0], 6, 0.4)
        for j, ang in enumerate([-30.0, 10.0, 75.0]):
            np.testing.assert_array_equal(cols[:, j], ula_response(ang, 6, 0.4))

    @given(angles, sizes, st.floats(0.1, 2.0))
    def test_matches_loop_oracle(self, theta, n, spacing):
        a = ula_response(theta, n, spacing)
        np.testing.assert_allclose(a, steering_loop(theta, n, spacing), atol=1e-12)

    @given(angles, angles, sizes, sizes)
    def test_unit_modulus_and_leading_one(self, theta, phi, m_h, m_v):
        g = UraGeometry(m_h, m_v)
        for sv in (steering_azimuth(theta, g), steering_elevation(phi, g),
                   steering_joint(theta, phi, g)):
            assert np.all(np.abs(np.abs(sv.entries) - 1) <= 1e-12)
            assert sv.entries[0] == 1 + 0j

    @settings(max_examples=50)
    @given(angles, angles, st.integers(1, 6), st.integers(1, 6))
    def test_joint_is_kronecker_in_linear_index_order(self, theta, phi, m_h, m_v):
        g = UraGeometry(m_h, m_v)
        a_h = steering_azimuth(theta, g)
        a_v = steering_elevation(phi, g)
        joint = steering_joint(theta, phi, g)
        for k in range(1, m_h + 1):
            for l in range(1, m_v + 1):
                assert abs(joint[linear_index(l, k, g) - 1] - a_h[k - 1] * a_v[l - 1]) <= 1e-14

    @given(st.floats(-90, 90), sizes)
    def test_conjugate_symmetry(self, theta, n):
        # cos(180 - theta) = -cos(theta)
        a = ula_response(theta, n)
        b = ula_response(180.0 - theta, n)
        np.testing.assert_allclose(b, a.conj(), atol=1e-12)
