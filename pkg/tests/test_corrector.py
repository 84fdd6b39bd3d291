import math

import numpy as np
import pytest

from tvtrack import (NonFiniteValueError, TimeVaryingProblem, gd_correct,
                     make_gd_corrector, prescribe_C_pl)


def diagonal_quadratic(eigenvalues, center):
    """f(x; t) = 1/2 sum_i lam_i (x_i - c_i)^2, time-invariant."""
    lam = np.asarray(eigenvalues, float)
    c = np.asarray(center, float)
    return TimeVaryingProblem(
        name="diag_quadratic",
        dim=lam.size,
        value=lambda x, t: float(0.5 * lam @ (x - c) ** 2),
        gradient=lambda x, t: lam * (x - c),
        solution=lambda t: c.copy(),
        optimal_value=lambda t: 0.0,
    )


class TestGdCorrect:
    def test_one_exact_step_on_quadratic(self, target):
        # f = ||x - y(t)||^2 with alpha = 1/2: a single step lands on y(t)
        t = 1.7
        y = target.solution(t)
        out = gd_correct(target, t, [40.0, -12.0], alpha=0.5, C=1)
        assert np.allclose(out, y, atol=1e-12)

    def test_zero_gradient_is_fixed_point(self, target):
        t = 0.9
        y = target.solution(t)
        for C in (1, 3, 10):
            assert np.array_equal(gd_correct(target, t, y, alpha=0.5, C=C), y)

    def test_closed_form_contraction(self):
        # f = mu/2 ||x||^2, alpha = 0.5, C = 2: x_C = (1 - alpha mu)^C x0
        prob = diagonal_quadratic([1.0], [0.0])
        out = gd_correct(prob, 0.0, [1.0], alpha=0.5, C=2)
        assert out[0] == pytest.approx(0.25, abs=1e-15)

    def test_rejects_bad_parameters(self, target):
        with pytest.raises(ValueError):
            gd_correct(target, 0.0, [0.0, 0.0], alpha=0.5, C=0)
        with pytest.raises(ValueError):
            gd_correct(target, 0.0, [0.0, 0.0], alpha=0.0, C=1)

    def test_non_finite_gradient_diagnostic(self):
        def bad_gradient(x, t):
            g = 3.0 * x
            if abs(x[0]) > 2.0:
                g[1] = math.nan
            return g

        prob = TimeVaryingProblem(name="bad", dim=2,
                                  value=lambda x, t: float(1.5 * x @ x),
                                  gradient=bad_gradient)
        # the oversized step sends x0 = (1, 0) to (-5, 0); the NaN surfaces
        # on the second iteration
        with pytest.raises(NonFiniteValueError) as exc:
            gd_correct(prob, 0.0, [1.0, 0.0], alpha=2.0, C=3)
        assert exc.value.iteration == 1
        assert exc.value.components == (1,)

    def test_corrector_factory_matches_direct_call(self, target):
        corr = make_gd_corrector(alpha=0.3, C=4)
        x0 = np.array([1.0, 2.0])
        assert np.array_equal(corr(target, 0.5, x0),
                              gd_correct(target, 0.5, x0, alpha=0.3, C=4))


class TestDescentInequality:
    """Each GD iteration decreases the objective by at least
    (alpha - L alpha^2 / 2) ||grad||^2 on L-smooth problems."""

    CASES = [
        ("toy", 1.2, 1 / 1.2, [0.7], 0.3),
        ("toy", 1.2, 0.9, [-2.0], 5.0),
        ("target", 2.0, 0.5, [5.0, -8.0], 1.1),
        ("target", 2.0, 0.8, [0.0, 0.0], 7.3),
        ("robust", 2.0, 0.5, None, 0.5),
        ("robust", 2.0, 0.9, None, 2.0),
    ]

    @pytest.mark.parametrize("which,L,alpha,x0,t", CASES)
    def test_per_iteration_descent(self, which, L, alpha, x0, t, toy, target, robust):
        problem = {"toy": toy, "target": target, "robust": robust}[which]
        if x0 is None:
            x0 = np.linspace(-1.0, 1.0, problem.dim)
        x = np.asarray(x0, float)
        margin = alpha - 0.5 * L * alpha**2
        assert margin > 0
        for _ in range(10):
            f_before = problem.value(x, t)
            g = problem.gradient(x, t)
            x_next = gd_correct(problem, t, x, alpha=alpha, C=1)
            f_after = problem.value(x_next, t)
            budget = f_before - margin * float(g @ g)
            assert f_after <= budget + 1e-10 * max(1.0, abs(f_before))
            x = x_next


class TestLinearContraction:
    """||x_C - x*|| <= theta1^C ||x0 - x*|| with
    theta1 = max(|1 - alpha mu|, |1 - alpha L|) on strongly convex
    quadratics."""

    @pytest.mark.parametrize("mu,L,alpha", [
        (0.5, 2.0, 0.4), (0.5, 2.0, 0.9), (1.0, 1.0, 0.7),
        (0.2, 1.2, 1 / 1.2), (2.0, 2.0, 0.5), (0.1, 4.0, 0.49),
    ])
    @pytest.mark.parametrize("C", [1, 3, 10])
    def test_diagonal_quadratics(self, mu, L, alpha, C):
        rng = np.random.default_rng(round(mu * 100 + L * 10 + C))
        lam = np.concatenate([[mu, L], rng.uniform(mu, L, size=3)])
        center = rng.normal(size=5)
        prob = diagonal_quadratic(lam, center)
        theta1 = max(abs(1 - alpha * mu), abs(1 - alpha * L))
        x0 = center + rng.normal(size=5)
        out = gd_correct(prob, 0.0, x0, alpha=alpha, C=C)
        lhs = np.linalg.norm(out - center)
        rhs = theta1**C * np.linalg.norm(x0 - center)
        assert lhs <= rhs + 1e-12


class TestPLContraction:
    """Around a strict local minimum of the toy objective, C correction
    iterations contract the distance by rho * theta2^(C/2)."""

    def test_toy_local_region(self, toy):
        mu, L, alpha = 0.2, 1.2, 1 / 1.2
        pl = prescribe_C_pl(7, mu, L, alpha)
        rho, theta2 = pl.rho, pl.theta2
        t = 0.0
        x_star = toy.solution(t)
        for offset in (0.3, -0.25, 0.1):
            x0 = x_star + offset
            e0 = abs(offset)
            for C in (1, 2, 5, 10, 20):
                out = gd_correct(toy, t, x0, alpha=alpha, C=C)
                assert abs(out[0] - x_star[0]) <= rho * theta2 ** (C / 2) * e0 + 1e-12
