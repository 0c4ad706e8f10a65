import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bregsim import (
    DimensionError,
    DimensionMismatchError,
    DomainError,
    ModifiedEntropy,
    NegativeEntropy,
    SquaredL2,
    TotalVariation,
    UnsupportedCostError,
    cost_by_name,
    grad_modified_entropy,
    grad_neg_entropy,
    grad_sq_l2,
    select_max_cosine_subgradient,
    subgrad_tv,
    surface_normal,
    tv_flat_positions,
)
from conftest import assert_gradcheck, central_difference

ALL_COSTS = [NegativeEntropy(), ModifiedEntropy(), TotalVariation(), SquaredL2()]


def sample_in_domain(cost, rng, n):
    """Random vector inside the cost's domain, away from awkward regions."""
    if isinstance(cost, NegativeEntropy):
        return rng.uniform(0.05, 5.0, n)
    return rng.uniform(-4.0, 4.0, n)


class TestNegativeEntropyGradient:
    def test_ones(self, kernel_backend):
        assert grad_neg_entropy([1.0, 1.0, 1.0]) == pytest.approx([1.0, 1.0, 1.0], abs=1e-15)

    def test_inverse_e(self, kernel_backend):
        assert grad_neg_entropy([1.0 / math.e]) == pytest.approx([0.0], abs=1e-15)

    def test_hand_values(self, kernel_backend):
        g = grad_neg_entropy([2.0, 0.5])
        assert g == pytest.approx([1.6931471805599454, 0.3068528194400547], abs=1e-12)
        fd = central_difference(lambda v: float(np.sum(v * np.log(v))), [2.0, 0.5])
        assert_gradcheck(g, fd)

    @pytest.mark.parametrize("bad", [[1.0, 0.0], [-1.0], [0.5, -2.0, 1.0]])
    def test_rejects_non_positive(self, bad):
        with pytest.raises(DomainError) as exc:
            grad_neg_entropy(bad)
        offending = next(i for i, v in enumerate(bad) if v <= 0)
        assert exc.value.component == offending
        assert f"component {offending}" in str(exc.value)

    def test_value(self):
        assert NegativeEntropy().value([1.0]) == 0.0
        assert NegativeEntropy().value([math.e]) == pytest.approx(math.e, rel=1e-15)


class TestModifiedEntropyGradient:
    def test_zero_is_zero(self, kernel_backend):
        assert list(grad_modified_entropy([0.0, 0.0])) == [0.0, 0.0]

    def test_hand_value(self, kernel_backend):
        # |x| + 1/e = e at x = e - 1/e, so the gradient is log(e) + 1 = 2;
        # confirmed against the finite difference of the cost.
        x = math.e - 1.0 / math.e
        f = ModifiedEntropy()
        assert grad_modified_entropy([x]) == pytest.approx([2.0], abs=1e-12)
        fd = central_difference(lambda v: f.value(v), [x])
        assert_gradcheck(grad_modified_entropy([x]), fd)

    def test_odd_symmetry(self, kernel_backend):
        x = math.e - 1.0 / math.e
        assert grad_modified_entropy([-x]) == pytest.approx([-2.0], abs=1e-12)
        rng = np.random.default_rng(7)
        v = rng.uniform(-3, 3, 16)
        np.testing.assert_array_equal(grad_modified_entropy(-v), -grad_modified_entropy(v))

    def test_continuity_at_zero(self):
        eps = 1e-8
        assert abs(grad_modified_entropy([eps])[0] - grad_modified_entropy([0.0])[0]) < 1e-7

    def test_value_at_zero(self):
        # the per-component 1/e offset cancels (1/e) log(1/e)
        assert ModifiedEntropy().value([0.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-16)


class TestSquaredL2Gradient:
    def test_zero(self, kernel_backend):
        assert list(grad_sq_l2([0.0, 0.0])) == [0.0, 0.0]

    def test_doubling(self, kernel_backend):
        assert list(grad_sq_l2([1.0, -2.0, 3.0])) == [2.0, -4.0, 6.0]

    def test_matches_finite_difference(self, kernel_backend):
        rng = np.random.default_rng(11)
        for _ in range(20):
            x = rng.uniform(-5, 5, rng.integers(1, 8))
            fd = central_difference(lambda v: float(np.sum(v * v)), x)
            assert_gradcheck(grad_sq_l2(x), fd)


class TestTvSubgradient:
    def test_monotone_increasing(self, kernel_backend):
        assert list(subgrad_tv([1.0, 2.0, 3.0])) == [-1.0, 0.0, 1.0]

    def test_constant_vector(self, kernel_backend):
        assert list(subgrad_tv([4.0] * 5)) == [0.0] * 5

    def test_monotone_decreasing(self, kernel_backend):
        assert list(subgrad_tv([3.0, 2.0, 1.0])) == [1.0, 0.0, -1.0]

    def test_sign_zero_choice(self, kernel_backend):
        assert list(subgrad_tv([1.0, 1.0], sign_zero=0.5)) == [-0.5, 0.5]
        assert list(subgrad_tv([1.0, 1.0], sign_zero=-1.0)) == [1.0, -1.0]

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            subgrad_tv([1.0])

    def test_sign_zero_range(self):
        with pytest.raises(ValueError):
            subgrad_tv([1.0, 2.0], sign_zero=1.5)
        with pytest.raises(ValueError):
            TotalVariation(sign_zero=-2.0)

    def test_paper_literal_flips_first_component_only(self, kernel_backend):
        x = [1.0, 2.0, 0.5, 0.5]
        g = subgrad_tv(x)
        lit = subgrad_tv(x, paper_literal=True)
        assert lit[0] == -g[0]
        np.testing.assert_array_equal(lit[1:], g[1:])

    def test_paper_literal_violates_subgradient_inequality(self):
        # witness: at x = (1, 2) the as-published variant gives (1, 1)
        # which overshoots the cost at y = (2, 2).
        f = TotalVariation()
        x, y = np.array([1.0, 2.0]), np.array([2.0, 2.0])
        g_lit = subgrad_tv(x, paper_literal=True)
        assert list(g_lit) == [1.0, 1.0]
        assert f.value(y) < f.value(x) + float(g_lit @ (y - x)) - 0.5
        g = subgrad_tv(x)
        assert f.value(y) >= f.value(x) + float(g @ (y - x)) - 1e-12

    @pytest.mark.parametrize("sign_zero", [-1.0, 0.0, 1.0])
    def test_subgradient_inequality_random(self, sign_zero):
        f = TotalVariation(sign_zero=sign_zero)
        rng = np.random.default_rng(int(10 * (sign_zero + 2)))
        for _ in range(100):
            n = int(rng.integers(2, 11))
            # half-unit grid so ties between neighbours actually occur
            x = np.round(rng.uniform(-3, 3, n) * 2.0) / 2.0
            y = rng.uniform(-4, 4, n)
            g = f.gradient(x)
            assert f.value(y) >= f.value(x) + float(g @ (y - x)) - 1e-12


@settings(max_examples=60, deadline=None)
@given(
    x=arrays(np.float64, st.integers(2, 8), elements=st.floats(-10, 10)),
    y=arrays(np.float64, st.integers(2, 8), elements=st.floats(-10, 10)),
    sign_zero=st.sampled_from([-1.0, -0.3, 0.0, 0.7, 1.0]),
)
def test_tv_subgradient_inequality_property(x, y, sign_zero):
    if x.size != y.size:
        y = np.resize(y, x.size)
    f = TotalVariation(sign_zero=sign_zero)
    g = f.gradient(x)
    assert f.value(y) >= f.value(x) + float(g @ (y - x)) - 1e-9


class TestSurfaceNormal:
    def test_zero_gradient(self):
        assert list(surface_normal([0.0, 0.0, 0.0])) == [0.0, 0.0, 0.0, -1.0]

    def test_single_component(self):
        n = surface_normal([1.0])
        assert n == pytest.approx([0.7071067811865475, -0.7071067811865475], abs=1e-15)

    def test_unit_norm_and_negative_last(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            g = rng.normal(0, 10, rng.integers(1, 12))
            n = surface_normal(g)
            assert abs(float(np.linalg.norm(n)) - 1.0) <= 1e-12
            assert n[-1] < 0.0
            assert n[-1] == pytest.approx(-1.0 / math.sqrt(float(g @ g) + 1.0), rel=1e-14)


@settings(max_examples=80, deadline=None)
@given(g=arrays(np.float64, st.integers(1, 10), elements=st.floats(-1e6, 1e6)))
def test_surface_normal_property(g):
    n = surface_normal(g)
    assert abs(float(np.linalg.norm(n)) - 1.0) <= 1e-12
    assert n[-1] < 0.0


class TestConvexityMidpoint:
    @pytest.mark.parametrize("cost", ALL_COSTS, ids=lambda c: c.name)
    def test_midpoint_inequality(self, cost):
        rng = np.random.default_rng(17)
        for _ in range(100):
            n = int(rng.integers(2, 9))
            a = sample_in_domain(cost, rng, n)
            b = sample_in_domain(cost, rng, n)
            mid = 0.5 * (a + b)
            assert cost.value(mid) <= 0.5 * (cost.value(a) + cost.value(b)) + 1e-9


class TestGradientsMatchFiniteDifferences:
    @pytest.mark.parametrize(
        "cost", [NegativeEntropy(), ModifiedEntropy(), SquaredL2()], ids=lambda c: c.name
    )
    def test_100_random_points(self, cost):
        rng = np.random.default_rng(29)
        for _ in range(100):
            n = int(rng.integers(1, 10))
            x = sample_in_domain(cost, rng, n)
            if isinstance(cost, ModifiedEntropy):
                # stay differentiable: keep components away from 0
                x = np.where(np.abs(x) < 0.05, 0.05, x)
            assert_gradcheck(cost.gradient(x), central_difference(cost.value, x))


class TestSubgradientSelection:
    def test_unique_gradient_returned_when_no_ties(self):
        f = TotalVariation()
        x = [1.0, 2.0, 0.5]
        ref = surface_normal(subgrad_tv([0.0, 1.0, 0.0]))
        np.testing.assert_array_equal(
            select_max_cosine_subgradient(f, x, ref), subgrad_tv(x)
        )

    def test_flat_pair_against_grid_oracle(self):
        f = TotalVariation()
        ref = surface_normal(subgrad_tv([1.0, 2.0]))
        g = select_max_cosine_subgradient(f, [3.0, 3.0], ref)
        # one free parameter t: the subgradient is (-t, t)
        t = g[1]
        assert -1.0 <= t <= 1.0
        achieved = float(surface_normal(g) @ ref)

        def cos_at(tv):
            return float(surface_normal(np.array([-tv, tv])) @ ref)

        grid_best = max(cos_at(tv) for tv in np.linspace(-1, 1, 21))
        assert achieved >= grid_best - 1e-9
        assert achieved >= cos_at(0.0)  # at least the canonical choice

    def test_multiple_ties_against_grid_oracle(self):
        f = TotalVariation()
        x = np.array([2.0, 2.0, 2.0, 5.0, 5.0])
        ref = surface_normal(subgrad_tv([0.0, 1.0, -1.0, 2.0, 0.0]))
        g = select_max_cosine_subgradient(f, x, ref)
        achieved = float(surface_normal(g) @ ref)

        free = tv_flat_positions(x)
        assert list(free) == [0, 1, 3]
        d = np.diff(x)
        base = np.where(d != 0.0, np.sign(d), 0.0)

        def grad_from(ts):
            s = base.copy()
            s[free] = ts
            full = np.empty(x.size)
            full[0] = -s[0]
            full[1:-1] = s[:-1] - s[1:]
            full[-1] = s[-1]
            return full

        grid = np.linspace(-1, 1, 21)
        grid_best = max(
            float(surface_normal(grad_from((a, b, c))) @ ref)
            for a in grid
            for b in grid
            for c in grid
        )
        assert achieved >= grid_best - 1e-6

    def test_result_is_valid_subgradient(self):
        f = TotalVariation()
        rng = np.random.default_rng(41)
        x = np.array([1.0, 1.0, 2.5, 2.5, 0.0, 0.0])
        ref = surface_normal(rng.normal(size=x.size))
        g = select_max_cosine_subgradient(f, x, ref)
        for _ in range(100):
            y = rng.uniform(-4, 4, x.size)
            assert f.value(y) >= f.value(x) + float(g @ (y - x)) - 1e-12

    def test_rejects_differentiable_costs(self):
        ref = surface_normal([1.0, 1.0])
        with pytest.raises(UnsupportedCostError):
            select_max_cosine_subgradient(SquaredL2(), [1.0, 1.0], ref)

    def test_reference_dimension_checked(self):
        with pytest.raises(DimensionMismatchError):
            select_max_cosine_subgradient(TotalVariation(), [1.0, 1.0], [1.0, 0.0])


class TestCostRegistry:
    def test_keys(self):
        assert cost_by_name("entropy").name == "negative-entropy"
        assert cost_by_name("modentropy").name == "modified-entropy"
        assert cost_by_name("l2").name == "squared-l2"
        tv = cost_by_name("tv", sign_zero=0.5, paper_literal=True)
        assert (tv.sign_zero, tv.paper_literal) == (0.5, True)

    def test_tv_flags_rejected_elsewhere(self):
        with pytest.raises(ValueError):
            cost_by_name("entropy", sign_zero=0.5)
        with pytest.raises(ValueError):
            cost_by_name("nope")

    def test_non_finite_input_rejected(self):
        with pytest.raises(ValueError):
            grad_sq_l2([1.0, float("nan")])
        with pytest.raises(ValueError):
            NegativeEntropy().value([np.inf])
