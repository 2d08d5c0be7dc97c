import pytest
from hypothesis import given, strategies as st

from lambda_closures.terms import (
    EMPTY,
    Abs,
    App,
    Closure,
    Index,
    OracleLimitError,
    closure_openness,
    enumerate_closures,
    enumerate_environments,
    enumerate_shallow_terms,
    enumerate_terms,
    is_m_open,
    size_closure,
    size_env,
    size_term,
    term_openness,
)

from strategies import closures, environments, terms

I0, I1, I2, I3 = Index(0), Index(1), Index(2), Index(3)
ID = Abs(I0)
K0 = Abs(Abs(I0))


def closed(t, depth=0):
    # every index points at one of the enclosing binders
    if type(t) is Index:
        return t.k < depth
    if type(t) is Abs:
        return closed(t.body, depth + 1)
    return closed(t.fun, depth) and closed(t.arg, depth)


def openness_by_prefix(t):
    m = 0
    while not closed(t):
        t = Abs(t)
        m += 1
    return m


def in_clos(c, m):
    # membership in the class of m-open closures, straight from its grammar
    return is_m_open(c.term, m + len(c.env)) and all(in_clos(e, m) for e in c.env)


class TestSizes:
    def test_index(self):
        assert size_term(I0) == 1
        assert size_term(Index(41)) == 42

    def test_examples(self):
        assert size_term(Abs(App(I1, I2))) == 7
        assert size_term(K0) == 3

    def test_closures(self):
        assert size_closure(Closure(I0)) == 1
        assert size_closure(Closure(I0, (Closure(ID),))) == 3
        assert size_env(EMPTY) == 0

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            Index(-1)

    @given(terms)
    def test_positive(self, t):
        assert size_term(t) >= 1

    @given(closures, environments)
    def test_additive(self, c, e):
        assert size_closure(c) == size_term(c.term) + size_env(c.env)
        assert size_env((c,) + e) == size_closure(c) + size_env(e)

    def test_deep_term_does_not_recurse(self):
        t = I0
        for _ in range(50_000):
            t = Abs(t)
        assert size_term(t) == 50_001
        assert term_openness(t) == 0


class TestOpenness:
    def test_examples(self):
        assert term_openness(App(I3, K0)) == 4
        assert term_openness(Abs(App(I1, I2))) == 2
        t = Abs(Abs(Abs(Abs(App(App(I3, Abs(Abs(I1))), Abs(App(ID, I0)))))))
        assert term_openness(t) == 0

    def test_m_open(self):
        t = Abs(App(I3, Abs(Abs(I1))))
        assert is_m_open(t, 3)
        assert not is_m_open(t, 2)
        assert not is_m_open(I0, 0)
        assert term_openness(Abs(Abs(Abs(App(I3, Abs(Abs(I1))))))) == 1

    def test_closures(self):
        assert closure_openness(Closure(App(I0, I1), (Closure(Abs(I3)),))) == 3
        assert closure_openness(Closure(App(I1, I0), (Closure(ID), Closure(K0)))) == 0
        assert closure_openness(Closure(ID)) == 0

    @given(terms)
    def test_matches_prefix_definition(self, t):
        assert term_openness(t) == openness_by_prefix(t)

    @given(terms, st.integers(0, 8))
    def test_monotone(self, t, m):
        if is_m_open(t, m):
            assert is_m_open(t, m + 1)

    @given(closures)
    def test_closure_openness_is_least(self, c):
        m = closure_openness(c)
        assert in_clos(c, m)
        assert m == 0 or not in_clos(c, m - 1)


class TestEnumeration:
    def test_plain_closures_size_2(self):
        got = set(enumerate_closures(2))
        assert got == {Closure(I0, (Closure(I0),)), Closure(ID), Closure(I1)}

    def test_environments_size_2(self):
        assert len(enumerate_environments(2)) == 4
        assert enumerate_environments(0) == (EMPTY,)

    def test_closed_closures_size_3(self):
        assert set(enumerate_closures(3, "closed")) == {Closure(K0), Closure(I0, (Closure(ID),))}

    def test_closed_terms_small(self):
        assert enumerate_terms(2, 0) == (ID,)
        assert enumerate_terms(3, 0) == (K0,)
        assert set(enumerate_terms(2)) == {I1, ID}

    def test_order_is_fixed(self):
        # index first, then abstractions, then applications by left size
        assert enumerate_terms(3) == (I2, Abs(I1), Abs(Abs(I0)), App(I0, I0))

    def test_shallow(self):
        assert enumerate_shallow_terms(1, 0, 4) == (Abs(Abs(Abs(I0))), Abs(App(I0, I0)))
        with pytest.raises(ValueError):
            enumerate_shallow_terms(1, 2, 3)

    def test_bound(self):
        with pytest.raises(OracleLimitError):
            enumerate_terms(13)
        assert len(enumerate_terms(13, 0, bound=13)) == 21881
        with pytest.raises(ValueError):
            enumerate_closures(3, "weird")

    @pytest.mark.parametrize("n", range(0, 8))
    def test_sizes_and_uniqueness(self, n):
        groups = [
            (enumerate_terms(n), size_term),
            (enumerate_terms(n, 1), size_term),
            (enumerate_shallow_terms(2, 0, n), size_term),
            (enumerate_closures(n), size_closure),
            (enumerate_closures(n, "closed"), size_closure),
            (enumerate_environments(n), size_env),
        ]
        for items, size in groups:
            assert len(set(items)) == len(items)
            assert all(size(x) == n for x in items)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_membership(self, n):
        assert all(term_openness(t) <= 1 for t in enumerate_terms(n, 1))
        assert sum(1 for t in enumerate_terms(n) if is_m_open(t, 1)) == len(enumerate_terms(n, 1))
        assert all(closure_openness(c) == 0 for c in enumerate_closures(n, "closed"))
        plain = enumerate_closures(n) if n <= 7 else ()
        if plain:
            assert sum(1 for c in plain if closure_openness(c) == 0) == len(enumerate_closures(n, "closed"))
        for t in enumerate_shallow_terms(2, 0, n):
            assert closed(t)
            assert max_index(t) < 2


def max_index(t):
    if type(t) is Index:
        return t.k
    if type(t) is Abs:
        return max_index(t.body)
    return max(max_index(t.fun), max_index(t.arg))
