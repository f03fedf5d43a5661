"""Velocity mapping, feasible-speed limits and path profiling."""

import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoglide.errors import NonMonotoneTime, Unreachable
from orthoglide.kinematics import DesignParams, inverse_jacobian, inverse_kinematics
from orthoglide.trajectory import (
    fd_weights,
    joint_velocity,
    max_feasible_tool_speed,
    profile_path,
    read_waypoints_csv,
    write_profile_csv,
)

L = 310.58
D = DesignParams(leg_length=L)  # default motors: 1200 mm/s, 20000 mm/s^2
U2 = L / math.sqrt(6.0)

pose_coords = st.floats(min_value=-70.0, max_value=120.0)
poses = st.tuples(pose_coords, pose_coords, pose_coords)


class TestFdWeights:
    def test_standard_stencils(self):
        h = 0.25
        w = fd_weights([-h, 0.0, h], 0.0, 1)
        assert np.allclose(w, [-1 / (2 * h), 0.0, 1 / (2 * h)])
        w2 = fd_weights([-h, 0.0, h], 0.0, 2)
        assert np.allclose(w2, np.array([1.0, -2.0, 1.0]) / h**2)
        w4 = fd_weights([0.0, h, 2 * h, 3 * h], 0.0, 2)
        assert np.allclose(w4, np.array([2.0, -5.0, 4.0, -1.0]) / h**2)

    def test_exact_on_cubic_with_uneven_nodes(self):
        nodes = np.array([0.0, 0.13, 0.31, 0.72])
        poly = lambda t: 2 * t**3 - t**2 + 0.5 * t - 4
        dpoly = lambda t: 6 * t**2 - 2 * t + 0.5
        d2poly = lambda t: 12 * t - 2
        x0 = 0.31
        assert fd_weights(nodes, x0, 1) @ poly(nodes) == pytest.approx(dpoly(x0), rel=1e-10)
        assert fd_weights(nodes, x0, 2) @ poly(nodes) == pytest.approx(d2poly(x0), rel=1e-10)

    def test_too_few_nodes(self):
        with pytest.raises(ValueError):
            fd_weights([0.0, 1.0], 0.0, 2)


class TestJointVelocity:
    def test_unit_transmission_at_origin(self):
        assert np.array_equal(joint_velocity((0, 0, 0), (1000.0, 0, 0), D), [1000.0, 0, 0])

    def test_diagonal_direction_row_sums(self):
        s = 900.0
        v = s * np.ones(3) / math.sqrt(3.0)
        for u in (-60.0, 40.0, U2):
            a = u / math.sqrt(L**2 - 2 * u * u)
            jv = joint_velocity((u, u, u), v, D)
            assert np.allclose(jv, (1 + 2 * a) * s / math.sqrt(3.0), rtol=1e-12)

    def test_zero_velocity(self):
        assert np.array_equal(joint_velocity((30.0, -20.0, 50.0), (0, 0, 0), D), np.zeros(3))

    @given(poses, st.tuples(*[st.floats(-2000.0, 2000.0)] * 3))
    @settings(max_examples=50, deadline=None)
    def test_speed_ratio_within_singular_range(self, p, v):
        v = np.asarray(v)
        nv = np.linalg.norm(v)
        if nv < 1e-6:
            return
        rho = inverse_kinematics(p, D)
        jinv = inverse_jacobian(p, rho, D)
        s = np.linalg.svd(jinv, compute_uv=False)
        ratio = np.linalg.norm(joint_velocity(p, v, D)) / nv
        assert s.min() * (1 - 1e-9) <= ratio <= s.max() * (1 + 1e-9)


class TestMaxFeasibleToolSpeed:
    def test_any_direction_at_origin(self, rng):
        for _ in range(10):
            d = rng.standard_normal(3)
            d /= np.linalg.norm(d)
            assert max_feasible_tool_speed((0, 0, 0), d, D) == pytest.approx(1200.0, rel=1e-12)

    def test_axis_direction_at_origin_is_exact(self):
        assert max_feasible_tool_speed((0, 0, 0), (1.0, 0.0, 0.0), D) == 1200.0

    def test_worst_direction_at_q2(self, rng):
        p = (U2, U2, U2)
        worst_dir = np.ones(3) / math.sqrt(3.0)  # largest-gain direction of Jinv
        got = max_feasible_tool_speed(p, worst_dir, D)
        assert got == pytest.approx(600.0, rel=1e-9)
        # oracle: sampled directions never do worse
        for _ in range(300):
            d = rng.standard_normal(3)
            d /= np.linalg.norm(d)
            assert max_feasible_tool_speed(p, d, D) >= got * (1 - 1e-12)

    def test_floor_is_vmax_over_sigma_max(self, rng):
        p = (40.0, -30.0, 80.0)
        rho = inverse_kinematics(p, D)
        smax = np.linalg.svd(inverse_jacobian(p, rho, D), compute_uv=False).max()
        floor = D.motor_vmax / smax
        for _ in range(100):
            d = rng.standard_normal(3)
            d /= np.linalg.norm(d)
            assert max_feasible_tool_speed(p, d, D) >= floor * (1 - 1e-12)

    def test_rejects_non_unit_direction(self):
        with pytest.raises(ValueError):
            max_feasible_tool_speed((0, 0, 0), (1.0, 1.0, 0.0), D)


def line_waypoints(p0, p1, speed, n):
    p0, p1 = np.asarray(p0, float), np.asarray(p1, float)
    duration = np.linalg.norm(p1 - p0) / speed
    ts = np.linspace(0.0, duration, n)
    return [(t, p0 + (p1 - p0) * (t / duration)) for t in ts]


class TestProfilePath:
    def test_stationary_pair(self):
        prof = profile_path([(0.0, (10.0, 5.0, -20.0)), (1.0, (10.0, 5.0, -20.0))], D)
        assert np.array_equal(prof.joint_velocities, np.zeros((2, 3)))
        assert np.array_equal(prof.joint_accelerations, np.zeros((2, 3)))
        assert not prof.any_flags

    def test_q1_q2_line_at_1200_flags_velocity_near_q2(self, proto):
        d = proto.design()
        wps = line_waypoints(proto.q1, proto.q2, 1200.0, 81)
        prof = profile_path(wps, d)
        assert prof.velocity_flags.any()
        # peak joint speed reaches (1 + 2 a_max) * 1200 / sqrt(3) ~ 1385.6
        peak = np.abs(prof.joint_velocities).max()
        assert peak == pytest.approx(2 * 1200.0 / math.sqrt(3.0), rel=1e-2)
        # flags sit at the Q2 end of the path, not the Q1 end
        flagged = np.where(prof.velocity_flags.any(axis=1))[0]
        assert flagged.min() > len(wps) // 2
        # oracle: finite differences track the Jacobian mapping mid-path
        k = 40
        v_exact = joint_velocity(prof.poses[k], (proto.q2 - proto.q1) / (wps[-1][0]), d)
        assert np.allclose(prof.joint_velocities[k], v_exact, rtol=1e-3)

    def test_velocity_flags_exact_threshold(self, proto):
        # the same line traversed slowly never flags
        d = proto.design()
        prof = profile_path(line_waypoints(proto.q1, proto.q2, 300.0, 41), d)
        assert not prof.velocity_flags.any()

    def test_axis_sinusoid_at_acceleration_limit(self):
        # x(t) = A sin(w t) with A w^2 = amax: on the x axis rho_1 = x - L
        # exactly, so the joint acceleration peak equals the tool peak; the
        # discrete estimate stays just under the limit, hence flag free
        amax = D.motor_amax
        freq = 4.0
        w = 2 * math.pi * freq
        A = amax / w**2
        ts = np.linspace(0.0, 1.0 / freq, 201)
        wps = [(t, (A * math.sin(w * t), 0.0, 0.0)) for t in ts]
        prof = profile_path(wps, D)
        peak = np.abs(prof.joint_accelerations).max()
        assert peak == pytest.approx(amax, rel=2e-3)
        assert peak <= amax
        assert not prof.acceleration_flags.any()
        # and x-axis joint tracks tool exactly: rho_1(t) = x(t) - L
        assert np.allclose(prof.joints[:, 0], A * np.sin(w * ts) - L, atol=1e-9)

    def test_non_monotone_time(self):
        with pytest.raises(NonMonotoneTime):
            profile_path([(0.0, (0, 0, 0)), (0.0, (1.0, 0, 0))], D)

    def test_unreachable_waypoint_reports_index(self):
        wps = [(0.0, (0.0, 0.0, 0.0)), (1.0, (0.0, 0.9 * L, 0.9 * L))]
        with pytest.raises(Unreachable) as e:
            profile_path(wps, D)
        assert "waypoint 1" in str(e.value)

    def test_needs_two_waypoints(self):
        with pytest.raises(ValueError):
            profile_path([(0.0, (0, 0, 0))], D)

    def test_fd_velocity_convergence(self):
        # halving the step should cut the midpoint error by ~4 (2nd order);
        # require at least first-order improvement as specified
        p0, p1 = np.array([-60.0, -60.0, -60.0]), np.array([110.0, 110.0, 110.0])
        speed = 500.0
        errs = []
        for n in (21, 41, 81):
            wps = line_waypoints(p0, p1, speed, n)
            prof = profile_path(wps, D)
            mid = n // 2
            v = (p1 - p0) / wps[-1][0]
            exact = joint_velocity(prof.poses[mid], v, D)
            errs.append(np.abs(prof.joint_velocities[mid] - exact).max())
        assert errs[1] <= errs[0] / 1.9
        assert errs[2] <= errs[1] / 1.9

    def test_isotropic_point_acceleration_matches_tool(self):
        # path resting at the origin with zero velocity and pure acceleration:
        # x(t) = A (1 - cos w t) has x(0) = 0, xdot(0) = 0, xddot(0) = A w^2,
        # and at the isotropic pose the joint accelerations equal the tool's
        w = 2 * math.pi
        A = 50.0
        ts = np.linspace(-0.05, 0.05, 41)
        wps = [(t, (A * (1 - math.cos(w * t)), 0.0, 0.0)) for t in ts]
        prof = profile_path(wps, D)
        mid = len(ts) // 2
        tool_acc = A * w**2
        assert np.array_equal(prof.poses[mid], [0.0, 0.0, 0.0])
        assert prof.joint_accelerations[mid, 0] == pytest.approx(tool_acc, rel=1e-3)
        assert prof.joint_accelerations[mid, 1] == pytest.approx(0.0, abs=1e-3 * tool_acc)
        assert prof.joint_accelerations[mid, 2] == pytest.approx(0.0, abs=1e-3 * tool_acc)
        # velocities match too: rho_dot = p_dot = 0 at the rest point
        assert prof.joint_velocities[mid] == pytest.approx([0, 0, 0], abs=1e-6 * A * w)


class TestCsv:
    def test_waypoint_reader(self, tmp_path):
        f = tmp_path / "wp.csv"
        f.write_text("t_s,x_mm,y_mm,z_mm\n0,0,0,0\n0.5,10,20,30\n")
        wps = read_waypoints_csv(f)
        assert wps[0][0] == 0.0
        assert np.array_equal(wps[1][1], [10.0, 20.0, 30.0])

    def test_waypoint_reader_rejects_bad_header(self, tmp_path):
        f = tmp_path / "wp.csv"
        f.write_text("time,x,y,z\n0,0,0,0\n")
        with pytest.raises(ValueError):
            read_waypoints_csv(f)

    def test_profile_writer_deterministic(self):
        wps = [(0.0, (0, 0, 0)), (0.1, (20.0, 0, 0)), (0.2, (40.0, 0, 0))]
        outs = []
        for _ in range(2):
            prof = profile_path(wps, D)
            buf = io.StringIO()
            write_profile_csv(prof, buf)
            outs.append(buf.getvalue())
        assert outs[0] == outs[1]
        header = outs[0].splitlines()[0]
        assert header.startswith("t_s,x_mm,y_mm,z_mm,rho1_mm")
        assert len(outs[0].splitlines()) == 4
