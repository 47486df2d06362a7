"""Reweighted-l1 iteration: simulation, analytic limits, failure intervals."""

import math

import numpy as np
import pytest

from logsum_prox import (
    DomainError,
    FailureCase,
    Interval,
    LimitKind,
    PreconditionError,
    ProxParams,
    RegimeError,
    StopReason,
    failure_intervals,
    irl1_predict_limit,
    irl1_simulate,
    irl1_step,
    limit_matches_prox,
    prox_scalar,
    r1,
    r1_inverse,
    r2,
    z_star,
)

P31 = ProxParams(3.0, 1.0)
P23 = ProxParams(2.0, 3.0)
ZS31 = z_star(P31).z_star  # 2.5710831932251...
SQRT3 = math.sqrt(3.0)


class TestStep:
    def test_threshold_branch(self):
        assert irl1_step(P31, 2.5, 0.0) == 0.0

    def test_linear_branch(self):
        assert irl1_step(P31, 2.5, 2.0) == pytest.approx(1.5, abs=1e-15)

    def test_fixed_point_of_r2(self):
        assert irl1_step(P31, 2.5, 1.0) == pytest.approx(1.0, abs=1e-15)
        assert r2(P31, 2.5) == 1.0


class TestSimulate:
    def test_converges_to_r2_from_above(self):
        trace = irl1_simulate(P31, 2.5, 2.0)
        assert trace.stop_reason is StopReason.TOLERANCE_MET
        assert trace.limit_estimate == pytest.approx(1.0, abs=1e-8)
        # ... even though the true prox at 2.5 is {0}
        assert prox_scalar(P31, 2.5).values == (0.0,)

    def test_zero_start_is_an_exact_fixed_point(self):
        trace = irl1_simulate(P31, 2.5, 0.0)
        assert trace.stop_reason is StopReason.FIXED_POINT_HIT
        assert trace.iterates == (0.0, 0.0)
        assert trace.limit_estimate == 0.0

    def test_zero_start_beyond_threshold(self):
        trace = irl1_simulate(P23, 5.0, 0.0)
        assert trace.limit_estimate == pytest.approx(1.0 + math.sqrt(14.0), abs=1e-8)

    def test_trace_is_bit_reproducible(self):
        trace = irl1_simulate(P31, 2.5, 2.0)
        for xk, xk1 in zip(trace.iterates, trace.iterates[1:]):
            assert xk1 == irl1_step(P31, 2.5, xk)
        again = irl1_simulate(P31, 2.5, 2.0)
        assert again.iterates == trace.iterates

    def test_tolerance_met_invariant(self):
        trace = irl1_simulate(P31, 2.5, 2.0, stop_tol=1e-10)
        assert trace.stop_reason is StopReason.TOLERANCE_MET
        assert abs(trace.iterates[-1] - trace.iterates[-2]) <= 1e-10

    def test_max_iters_recorded_not_raised(self):
        trace = irl1_simulate(P31, 2.5, 2.0, stop_tol=1e-300, max_iters=50)
        assert trace.stop_reason is StopReason.MAX_ITERS
        assert len(trace.iterates) == 51

    def test_negative_z_mirrors(self):
        pos = irl1_simulate(P31, 2.9, 1.5)
        neg = irl1_simulate(P31, -2.9, 1.5)
        assert neg.limit_estimate == -pos.limit_estimate
        assert neg.iterates == pos.iterates

    def test_monotone_while_positive(self):
        rng = np.random.default_rng(13)
        for _ in range(40):
            z = float(rng.uniform(0.0, 6.0))
            x0 = float(rng.uniform(0.0, 4.0))
            trace = irl1_simulate(P31, z, x0, max_iters=2000)
            xs = trace.iterates
            if all(x > 0 for x in xs):
                diffs = [b - a for a, b in zip(xs, xs[1:]) if b != a]
                assert all(d > 0 for d in diffs) or all(d < 0 for d in diffs)

    def test_first_step_sign_identity(self):
        # (x1 - x0)(eps + x0) = -(x0 - r1(z))(x0 - r2(z)) whenever x1 > 0
        rng = np.random.default_rng(17)
        for _ in range(200):
            lam = float(rng.uniform(0.5, 9.0))
            eps = float(rng.uniform(0.1, math.sqrt(lam) * 0.99))
            p = ProxParams(lam, eps)
            z = float(rng.uniform(p.bracket_low, p.bracket_low + 4.0))
            x0 = float(rng.uniform(0.0, 4.0))
            x1 = irl1_step(p, z, x0)
            if x1 <= 0.0:
                continue
            lhs = (x1 - x0) * (eps + x0)
            rhs = -(x0 - r1(p, z)) * (x0 - r2(p, z))
            assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_input_validation(self):
        with pytest.raises(PreconditionError):
            irl1_simulate(P31, 2.5, -0.5)
        with pytest.raises(ValueError):
            irl1_simulate(P31, 2.5, 1.0, stop_tol=0.0)


class TestPredict:
    def test_below_unstable_root_collapses(self):
        pred = irl1_predict_limit(P31, 2.5, 0.3)
        assert pred.limit == 0.0
        assert pred.classification is LimitKind.ZERO
        assert pred.justification == "conv6"
        assert r1(P31, 2.5) == 0.5  # 0.3 sits below it

    def test_exactly_on_unstable_root(self):
        pred = irl1_predict_limit(P31, 2.5, 0.5)
        assert pred.limit == 0.5
        assert pred.classification is LimitKind.R1_FIXED_POINT
        assert pred.justification == "conv6"

    def test_above_unstable_root(self):
        pred = irl1_predict_limit(P31, 2.5, 2.0)
        assert pred.limit == 1.0
        assert pred.classification is LimitKind.R2

    def test_convex_regime_collapses(self):
        pred = irl1_predict_limit(P23, 0.5, 7.0)
        assert pred.limit == 0.0
        assert pred.classification is LimitKind.ZERO
        assert pred.justification == "conv5"

    def test_zero_start_cases(self):
        pred = irl1_predict_limit(P31, 2.5, 0.0)
        assert (pred.limit, pred.justification) == (0.0, "conv2")
        pred = irl1_predict_limit(P31, 5.0, 0.0)
        assert pred.limit == pytest.approx(r2(P31, 5.0), rel=1e-15)
        assert pred.justification == "conv2"

    def test_beyond_threshold(self):
        pred = irl1_predict_limit(P31, 3.5, 1.0)
        assert pred.justification == "conv3"
        assert pred.limit == pytest.approx(r2(P31, 3.5), rel=1e-15)

    def test_below_bracket(self):
        pred = irl1_predict_limit(P31, 2.0, 5.0)
        assert (pred.limit, pred.justification) == (0.0, "conv4")

    def test_convex_inner_band_tags(self):
        p = ProxParams(4.0, 2.5)  # convex with 2*sqrt(lam) > eps
        assert irl1_predict_limit(p, 1.0, 0.5).justification == "conv4"
        assert irl1_predict_limit(p, 1.55, 0.5).justification == "conv5"

    def test_sign_carries_through(self):
        pred = irl1_predict_limit(P31, -2.9, 2.0)
        assert pred.limit == -irl1_predict_limit(P31, 2.9, 2.0).limit

    def test_agrees_with_simulation(self):
        rng = np.random.default_rng(23)
        checked = 0
        while checked < 150:
            ratio = float(rng.uniform(0.3, 3.0))
            eps = float(rng.uniform(0.3, 2.0))
            p = ProxParams((ratio * eps) ** 2, eps)
            lo = max(p.bracket_low, 0.0)
            hi = p.threshold
            band = rng.integers(0, 3)
            if band == 0 and lo > 0:
                z = float(rng.uniform(1e-3 * lo, lo * (1 - 1e-3)))
            elif band == 1 and hi - lo > 1e-2:
                w = hi - lo
                z = float(rng.uniform(lo + 1e-3 * w, hi - 1e-3 * w))
            else:
                z = float(rng.uniform(hi * (1 + 1e-3), hi + 5.0))
            x0 = float(rng.uniform(0.0, 3.0))
            if p.regime().value == "nonconvex" and lo <= z < hi:
                if abs(x0 - r1(p, z)) < 1e-6:
                    continue
            if rng.uniform() < 0.5:
                z = -z
            sim = irl1_simulate(p, z, x0)
            pred = irl1_predict_limit(p, z, x0)
            assert sim.limit_estimate == pytest.approx(pred.limit, abs=1e-8)
            checked += 1

    def test_exact_outside_critical_band(self):
        # for |z| above the threshold or below the bracket, the limit is the
        # true prox regardless of the start
        rng = np.random.default_rng(29)
        for _ in range(100):
            lam = float(rng.uniform(0.5, 9.0))
            eps = float(rng.uniform(0.2, 2.0))
            p = ProxParams(lam, eps)
            lo, hi = max(p.bracket_low, 0.0), p.threshold
            side = rng.integers(0, 2)
            if side == 0 and lo > 1e-3:
                z = float(rng.uniform(1e-4, lo * (1 - 1e-9)))
            else:
                z = float(rng.uniform(hi * (1 + 1e-9) + 1e-6, hi + 8.0))
            if rng.uniform() < 0.5:
                z = -z
            x0 = float(rng.uniform(0.0, 5.0))
            pred = irl1_predict_limit(p, z, x0)
            assert limit_matches_prox(p, z, pred.limit, tol=1e-9)


class TestR1Inverse:
    def test_maximum_of_r1(self):
        got = r1_inverse(P31, SQRT3 - 1.0)
        assert got == pytest.approx(2.0 * SQRT3 - 1.0, abs=1e-14)

    def test_zero_maps_to_threshold(self):
        assert r1_inverse(P31, 0.0) == 3.0

    def test_roundtrip(self):
        for x0 in np.linspace(0.0, SQRT3 - 1.0, 25):
            z = r1_inverse(P31, float(x0))
            assert r1(P31, z) == pytest.approx(float(x0), abs=1e-12)

    def test_consistency_with_jump_point(self):
        assert r1_inverse(P31, r1(P31, ZS31)) == pytest.approx(ZS31, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            r1_inverse(P31, SQRT3 - 1.0 + 1e-9)
        with pytest.raises(DomainError):
            r1_inverse(P31, -1.0)
        with pytest.raises(RegimeError):
            r1_inverse(P23, 0.0)

    def test_lower_bound_on_r1(self):
        # lam/z - eps < r1(z) on the critical band
        for p in (P31, ProxParams(9.0, 1.5), ProxParams(1.21, 1.0)):
            for z in np.linspace(p.bracket_low, p.threshold, 50, endpoint=False):
                assert p.lam / z - p.eps < r1(p, float(z))


class TestFailureIntervals:
    def test_convex_regime_is_exact(self):
        report = failure_intervals(P23, 9.0)
        assert report.case is FailureCase.EXACT
        assert report.intervals == ()
        assert report.z_star is None

    def test_high_start(self):
        report = failure_intervals(P31, 2.0)
        assert report.case is FailureCase.HIGH_X0
        neg, pos = report.intervals
        assert pos.lower == pytest.approx(2.0 * SQRT3 - 1.0, abs=1e-14)
        assert pos.upper == ZS31
        assert pos.lower_closed and not pos.upper_closed
        assert (neg.lower, neg.upper) == (-pos.upper, -pos.lower)
        assert not neg.lower_closed and neg.upper_closed

    def test_high_start_boundary_inclusive(self):
        assert failure_intervals(P31, SQRT3 - 1.0).case is FailureCase.HIGH_X0

    def test_mid_start(self):
        report = failure_intervals(P31, 0.5)
        assert report.case is FailureCase.MID_X0
        pos = report.intervals[1]
        assert pos.lower == 2.5  # r1_inverse(0.5) = 0.5 + 3/1.5 exactly
        assert pos.upper == ZS31

    def test_knife_edge_start(self):
        report = failure_intervals(P31, r1(P31, ZS31))
        assert report.case is FailureCase.KNIFE_EDGE_X0
        neg, pos = report.intervals
        assert pos.lower == pos.upper == ZS31
        assert pos.lower_closed and pos.upper_closed
        assert neg.lower == neg.upper == -ZS31

    def test_low_start(self):
        report = failure_intervals(P31, 0.1)
        assert report.case is FailureCase.LOW_X0
        pos = report.intervals[1]
        assert pos.lower == ZS31
        assert pos.upper == pytest.approx(0.1 + 3.0 / 1.1, abs=1e-15)
        assert not pos.lower_closed and pos.upper_closed

    def test_intervals_inside_critical_band(self):
        for x0 in (0.0, 0.1, 0.5, 2.0, 10.0):
            report = failure_intervals(P31, x0)
            for iv in report.intervals:
                assert -3.0 <= iv.lower <= iv.upper <= 3.0
                assert abs(iv.lower) >= P31.bracket_low - 1e-12
                assert abs(iv.upper) >= P31.bracket_low - 1e-12

    def test_soundness_spot_check(self):
        rng = np.random.default_rng(31)
        for x0 in (2.0, 0.1):
            report = failure_intervals(P31, x0)
            neg, pos = report.intervals
            w = pos.upper - pos.lower
            inside = rng.uniform(pos.lower + 1e-6, pos.upper - 1e-6, size=20)
            for z in inside:
                z = float(z if rng.uniform() < 0.5 else -z)
                pred = irl1_predict_limit(P31, z, x0)
                assert not limit_matches_prox(P31, z, pred.limit)
            outside = np.concatenate([
                rng.uniform(0.0, P31.bracket_low - 1e-6, size=10),
                rng.uniform(max(pos.upper + 1e-6, ZS31 + 1e-6), 6.0, size=10),
            ])
            for z in outside:
                z = float(z if rng.uniform() < 0.5 else -z)
                if any(iv.contains(z) for iv in report.intervals):
                    continue
                pred = irl1_predict_limit(P31, z, x0)
                assert limit_matches_prox(P31, z, pred.limit)


class TestInterval:
    def test_contains_respects_closures(self):
        iv = Interval(1.0, 2.0, True, False)
        assert iv.contains(1.0)
        assert iv.contains(1.5)
        assert not iv.contains(2.0)
        assert not iv.contains(0.999)

    def test_mirrored_swaps_closures(self):
        iv = Interval(1.0, 2.0, True, False)
        m = iv.mirrored()
        assert (m.lower, m.upper) == (-2.0, -1.0)
        assert not m.lower_closed and m.upper_closed
        assert str(iv) == "[1.0, 2.0)"
        assert str(m) == "(-2.0, -1.0]"
