from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from lambda_closures import counting, gfun, samplers
from lambda_closures.samplers import (
    EmptyClassError,
    RetryLimitError,
    boltzmann_closure,
    boltzmann_environment,
    boltzmann_params,
    calibrate,
    default_window,
    make_rng,
    sample_closed_closure,
    sample_m_open_term,
    sample_plain_closure,
    sample_plain_environment,
    sample_plain_term,
    sample_shallow_term,
)
from lambda_closures.syntax import render_object
from lambda_closures.terms import (
    EMPTY,
    Abs,
    Closure,
    Index,
    closure_openness,
    enumerate_closures,
    enumerate_terms,
    size_closure,
    size_env,
    size_term,
    term_openness,
)


def uniform_pvalue(draw, support, num, rng):
    counts = Counter(draw(rng) for _ in range(num))
    assert set(counts) <= set(support)
    observed = [counts.get(x, 0) for x in support]
    return chisquare(observed).pvalue


class TestRecursiveMethod:
    def test_small_cases(self):
        rng = make_rng(3)
        assert sample_m_open_term(0, 2, rng) == Abs(Index(0))
        assert all(sample_m_open_term(0, 3, rng) == Abs(Abs(Index(0))) for _ in range(20))
        assert sample_plain_closure(1, rng) == Closure(Index(0))
        assert sample_plain_environment(0, rng) == EMPTY
        assert sample_closed_closure(2, rng) == Closure(Abs(Index(0)))

    def test_empty_classes(self):
        rng = make_rng()
        with pytest.raises(EmptyClassError):
            sample_m_open_term(0, 1, rng)
        with pytest.raises(EmptyClassError):
            sample_closed_closure(1, rng)
        with pytest.raises(EmptyClassError):
            sample_plain_term(0, rng)
        with pytest.raises(EmptyClassError):
            sample_plain_closure(0, rng)

    @settings(max_examples=60)
    @given(st.integers(0, 3), st.integers(2, 40), st.integers(0, 2 ** 32))
    def test_exact_size_and_membership(self, m, n, seed):
        rng = make_rng(seed)
        t = sample_m_open_term(m, n, rng)
        assert size_term(t) == n and term_openness(t) <= m
        c = sample_closed_closure(n, rng)
        assert size_closure(c) == n and closure_openness(c) == 0
        assert size_closure(sample_plain_closure(n, rng)) == n
        assert size_env(sample_plain_environment(n, rng)) == n
        assert size_term(sample_plain_term(n, rng)) == n
        s = sample_shallow_term(3, min(m, 3), n, rng)
        assert size_term(s) == n and term_openness(s) <= m

    def test_reproducible(self):
        a = [render_object(sample_closed_closure(30, make_rng(99))) for _ in range(3)]
        b = [render_object(sample_closed_closure(30, make_rng(99))) for _ in range(3)]
        assert a == b
        r1, r2 = make_rng(5), make_rng(5)
        assert [sample_plain_environment(12, r1) for _ in range(20)] == \
            [sample_plain_environment(12, r2) for _ in range(20)]

    def test_seed_range(self):
        with pytest.raises(ValueError):
            make_rng(-1)
        with pytest.raises(ValueError):
            make_rng(2 ** 64)

    @pytest.mark.parametrize("draw, support", [
        (lambda rng: sample_plain_term(6, rng), enumerate_terms(6)),
        (lambda rng: sample_m_open_term(1, 7, rng), enumerate_terms(7, 1)),
        (lambda rng: sample_plain_closure(2, rng), enumerate_closures(2)),
        (lambda rng: sample_closed_closure(4, rng), enumerate_closures(4, "closed")),
        (lambda rng: sample_closed_closure(6, rng), enumerate_closures(6, "closed")),
    ])
    def test_uniform(self, draw, support):
        assert uniform_pvalue(draw, support, 20_000, make_rng(11)) > 1e-3

    def test_large_size(self):
        c = sample_closed_closure(200, make_rng(1))
        assert size_closure(c) == 200


class TestBoltzmann:
    def test_params(self):
        p = boltzmann_params(0.1)
        assert abs(p.p_abs + p.p_app + p.p_index - 1) < 1e-12
        assert p.p_cons == pytest.approx(float(gfun.eval_C_infty(0.1)))
        with pytest.raises(ValueError):
            boltzmann_params(0.17)
        with pytest.raises(ValueError):
            boltzmann_params(0)

    def test_unit_window(self):
        p = boltzmann_params(0.02)
        rng = make_rng(4)
        assert all(boltzmann_closure(p, rng, (1, 1)) == Closure(Index(0)) for _ in range(50))

    def test_retry_limit(self):
        p = boltzmann_params(0.01)
        with pytest.raises(RetryLimitError) as info:
            boltzmann_closure(p, make_rng(0), (60, 60), max_attempts=50)
        assert info.value.attempts == 50

    def test_window_respected(self):
        p = calibrate(30, "closure")
        rng = make_rng(8)
        for _ in range(50):
            assert 25 <= size_closure(boltzmann_closure(p, rng, (25, 35))) <= 35
            assert 25 <= size_env(boltzmann_environment(p, rng, (25, 35))) <= 35

    def test_free_mean(self):
        p = boltzmann_params(0.15)
        rng = make_rng(21)
        n = 100_000
        mean = sum(size_env(boltzmann_environment(p, rng)) for _ in range(n)) / n
        assert mean == pytest.approx(p.mean_size("environment"), rel=0.05)

    def test_conditioned_uniform(self):
        p = calibrate(6, "closure")
        support = enumerate_closures(5)
        draw = lambda rng: boltzmann_closure(p, rng, (5, 5))  # noqa: E731
        assert uniform_pvalue(draw, support, 20_000, make_rng(2)) > 1e-3

    def test_calibrate(self):
        a, b = calibrate(10), calibrate(100)
        assert 0 < a.x < b.x < float(gfun.rho_plain())
        assert a.mean_size() == pytest.approx(10, rel=0.01)
        assert b.mean_size() == pytest.approx(100, rel=0.01)
        with pytest.raises(ValueError):
            calibrate(0.5)

    def test_calibrated_mean_50(self):
        p = calibrate(50)
        rng = make_rng(50)
        n = 100_000
        mean = sum(size_env(boltzmann_environment(p, rng)) for _ in range(n)) / n
        assert 45 <= mean <= 55

    def test_default_window(self):
        assert default_window(10) == (9, 11)
        assert default_window(25) == (22, 28)
