"""Uniform random generation of terms, closures and environments.

Two families of samplers live here.

Exact-size samplers (recursive method) pick each production with
probability ``weight / total`` where the weights are exact counts from
:mod:`lambda_closures.counting`.  The choice is made by drawing a uniform
integer below the total, so there is no floating-point bias.

Boltzmann samplers draw plain closures and environments of random size
with ``P(object) = x^size / F(x)``, optionally rejecting until the size
falls in a window.  Index values are drawn geometrically with ratio ``x``
without truncation.

Randomness always comes from an explicit :class:`random.Random` instance
(Mersenne Twister; ``randrange`` uses ``getrandbits`` rejection), so a
seed and call sequence fully determine the output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

import mpmath

from . import counting, gfun
from .terms import EMPTY, Abs, App, Closure, Environment, Index, Term

__all__ = [
    "DEFAULT_SEED",
    "EmptyClassError",
    "RetryLimitError",
    "make_rng",
    "sample_m_open_term",
    "sample_plain_term",
    "sample_shallow_term",
    "sample_plain_closure",
    "sample_plain_environment",
    "sample_closed_closure",
    "BoltzmannParams",
    "boltzmann_params",
    "boltzmann_closure",
    "boltzmann_environment",
    "calibrate",
    "default_window",
]

DEFAULT_SEED = 20180704


class EmptyClassError(ValueError):
    """The requested class has no object of the requested size."""


class RetryLimitError(RuntimeError):
    def __init__(self, attempts: int, accepted: int = 0):
        self.attempts = attempts
        self.acceptance_rate = accepted / attempts if attempts else 0.0
        super().__init__(
            f"no object in the size window after {attempts} attempts "
            f"(acceptance rate {self.acceptance_rate:.3g})"
        )


def make_rng(seed: int = DEFAULT_SEED) -> random.Random:
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return random.Random(seed)


def _choose(rng: random.Random, weights: Iterable[int]) -> int:
    weights = list(weights)
    r = rng.randrange(sum(weights))
    for i, w in enumerate(weights):
        if r < w:
            return i
        r -= w
    raise AssertionError("unreachable: r below total weight")


# ---------------------------------------------------------------------------
# Recursive method: terms


def _sample_term(get: Callable[[int, int], int], child: Callable[[int], int],
                 m: int, n: int, rng: random.Random) -> Term:
    # productions in enumeration order: index n-1 (when m allows it),
    # abstraction over a child(m)-open body, then applications by left size
    weights = [1 if n <= m else 0, get(child(m), n - 1)]
    weights.extend(get(m, i) * get(m, n - 1 - i) for i in range(1, n - 1))
    i = _choose(rng, weights)
    if i == 0:
        return Index(n - 1)
    if i == 1:
        return Abs(_sample_term(get, child, child(m), n - 1, rng))
    left = i - 1
    return App(_sample_term(get, child, m, left, rng),
               _sample_term(get, child, m, n - 1 - left, rng))


def _next(m: int) -> int:
    return m + 1


def sample_m_open_term(m: int, n: int, rng: random.Random) -> Term:
    """Uniform ``m``-open term of size ``n``."""
    if n < 1 or counting.count_m_open_terms(m, n) == 0:
        raise EmptyClassError(f"no {m}-open term of size {n}")
    return _sample_term(counting.open_terms_table(n).get, _next, m, n, rng)


def _plain_getter(n: int) -> Callable[[int, int], int]:
    l = counting.plain_terms_table(n).values
    return lambda m, k: l[k]


def sample_plain_term(n: int, rng: random.Random) -> Term:
    """Uniform plain term of size ``n``."""
    if n < 1:
        raise EmptyClassError(f"no term of size {n}")
    # openness of a size-n term never exceeds n, so m = n admits every index
    return _sample_term(_plain_getter(n), _next, n, n, rng)


def sample_shallow_term(h: int, m: int, n: int, rng: random.Random) -> Term:
    """Uniform ``m``-open term of size ``n`` with every index below ``h``."""
    if not 0 <= m <= h:
        raise ValueError(f"need 0 <= m <= h, got m={m}, h={h}")
    if n < 1 or counting.count_shallow_terms(h, m, n) == 0:
        raise EmptyClassError(f"no {h}-shallow {m}-open term of size {n}")
    table = counting.shallow_terms_table(h, n)
    return _sample_term(table.get, lambda j: min(j + 1, h), m, n, rng)


# ---------------------------------------------------------------------------
# Recursive method: plain closures and environments


class _PlainSampler:
    def __init__(self, n: int):
        self.get = _plain_getter(n)
        self.l = counting.plain_terms_table(n).values
        e, c = counting.plain_tables(n)
        self.e, self.c = e.values, c.values

    def closure(self, n: int, rng: random.Random) -> Closure:
        # term size k has weight l_k * e_{n-k}
        l, e = self.l, self.e
        k = 1 + _choose(rng, (l[k] * e[n - k] for k in range(1, n + 1)))
        term = _sample_term(self.get, _next, k, k, rng)
        return Closure(term, self.env(n - k, rng))

    def env(self, n: int, rng: random.Random) -> Environment:
        # head closure size k has weight c_k * e_{n-k}
        c, e = self.c, self.e
        out: List[Closure] = []
        while n > 0:
            k = 1 + _choose(rng, (c[k] * e[n - k] for k in range(1, n + 1)))
            out.append(self.closure(k, rng))
            n -= k
        return tuple(out)


def sample_plain_closure(n: int, rng: random.Random) -> Closure:
    """Uniform plain closure of size ``n``."""
    if n < 1:
        raise EmptyClassError(f"no closure of size {n}")
    return _PlainSampler(n).closure(n, rng)


def sample_plain_environment(n: int, rng: random.Random) -> Environment:
    """Uniform plain environment of size ``n``."""
    if n < 0:
        raise EmptyClassError(f"no environment of size {n}")
    return _PlainSampler(n).env(n, rng)


# ---------------------------------------------------------------------------
# Recursive method: m-open (closed) closures


def sample_closed_closure(n: int, rng: random.Random, m: int = 0) -> Closure:
    """Uniform ``m``-open closure of size ``n`` (closed for ``m = 0``)."""
    table = counting.closed_closures_table(max(n, 0), m)
    if n < 1 or table.counts[n] == 0:
        raise EmptyClassError(f"no {m}-open closure of size {n}")
    return _closed_closure(table, n, rng)


def _closed_closure(table: counting.ClosedClosureTable, n: int, rng: random.Random) -> Closure:
    m = table.m
    get = table.open_terms.get
    # joint choice of environment length p and term size k,
    # weight l_{m+p,k} * G_m(n-k, p)
    options: List[Tuple[int, int]] = []
    weights: List[int] = []
    for k in range(1, n + 1):
        for p, g in enumerate(table.G[n - k]):
            if g:
                options.append((p, k))
                weights.append(get(m + p, k) * g)
    p, k = options[_choose(rng, weights)]
    term = _sample_term(get, _next, m + p, k, rng)
    # entry sizes one at a time: first entry size j has weight c_{m,j} * G_m(s-j, p-1)
    env: List[Closure] = []
    s = n - k
    lo = table.min_size
    while p > 0:
        j = lo + _choose(rng, (table.counts[j] * table.g(s - j, p - 1) for j in range(lo, s + 1)))
        env.append(_closed_closure(table, j, rng))
        s -= j
        p -= 1
    return Closure(term, tuple(env))


# ---------------------------------------------------------------------------
# Boltzmann samplers for plain closures and environments


@dataclass(frozen=True)
class BoltzmannParams:
    """Branching probabilities of the Boltzmann sampler at parameter ``x``.

    Terms: abstraction with probability ``x``, application with ``x L(x)``,
    index otherwise; an index value ``k`` has probability ``(1-x) x^k``.
    Environments: cons with probability ``C(x)``, empty otherwise.
    """

    x: float
    L: float
    E: float
    C: float
    p_abs: float
    p_app: float
    p_index: float
    p_cons: float

    def mean_size(self, kind: str = "environment") -> float:
        return float(gfun.mean_size(self.x, kind, digits=30))


def boltzmann_params(x: float) -> BoltzmannParams:
    rho = gfun.rho_plain(30)
    if not 0 < x < rho:
        raise ValueError(f"Boltzmann parameter must lie in (0, {mpmath.nstr(rho, 8)}), got {x}")
    with mpmath.workdps(30):
        L = gfun.eval_L_infty(x, 30)
        E = gfun.eval_E_infty(x, 30)
        C = gfun.eval_C_infty(x, 30)
        p_app = x * L
        p_index = x / ((1 - x) * L)
    params = BoltzmannParams(
        x=float(x), L=float(L), E=float(E), C=float(C),
        p_abs=float(x), p_app=float(p_app), p_index=float(p_index), p_cons=float(C),
    )
    if abs(params.p_abs + params.p_app + params.p_index - 1) > 1e-12:
        raise AssertionError("term branch probabilities do not sum to 1")
    return params


class _TooBig(Exception):
    pass


_TERM, _CLOSURE, _ENV = 0, 1, 2


def _boltzmann(params: BoltzmannParams, rng: random.Random, root: int, limit: Optional[int]):
    """Free Boltzmann generation, aborting once the size passes ``limit``.

    Decisions are drawn in preorder with an explicit stack, then the object
    is assembled bottom-up, so nesting depth never touches the call stack.
    """
    x = params.x
    p_abs = params.p_abs
    p_absapp = params.p_abs + params.p_app
    p_cons = params.p_cons
    rand = rng.random
    plan: List[tuple] = []
    todo = [root]
    size = 0
    while todo:
        task = todo.pop()
        if task == _TERM:
            u = rand()
            if u < p_abs:
                plan.append(("abs",))
                todo.append(_TERM)
                size += 1
            elif u < p_absapp:
                plan.append(("app",))
                todo.append(_TERM)
                todo.append(_TERM)
                size += 1
            else:
                k = 0
                while rand() < x:
                    k += 1
                plan.append(("idx", k))
                size += k + 1
        elif task == _CLOSURE:
            plan.append(("clo",))
            todo.append(_ENV)
            todo.append(_TERM)
        else:
            if rand() < p_cons:
                plan.append(("cons",))
                todo.append(_ENV)
                todo.append(_CLOSURE)
            else:
                plan.append(("nil",))
        if limit is not None and size > limit:
            raise _TooBig
    values: list = []
    for step in reversed(plan):
        tag = step[0]
        if tag == "idx":
            values.append(Index(step[1]))
        elif tag == "abs":
            values.append(Abs(values.pop()))
        elif tag == "app":
            f = values.pop()
            values.append(App(f, values.pop()))
        elif tag == "clo":
            t = values.pop()
            values.append(Closure(t, values.pop()))
        elif tag == "nil":
            values.append(EMPTY)
        else:
            c = values.pop()
            values.append((c,) + values.pop())
    return values.pop(), size


def _boltzmann_window(params, rng, root, window, max_attempts):
    if window is None:
        return _boltzmann(params, rng, root, None)[0]
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty size window [{lo}, {hi}]")
    for attempt in range(1, max_attempts + 1):
        try:
            obj, size = _boltzmann(params, rng, root, hi)
        except _TooBig:
            continue
        if size >= lo:
            return obj
    raise RetryLimitError(max_attempts)


def boltzmann_closure(
    params: BoltzmannParams,
    rng: random.Random,
    size_window: Optional[Tuple[int, int]] = None,
    max_attempts: int = 100_000,
) -> Closure:
    """Boltzmann plain closure, rejected until its size lies in ``size_window``."""
    return _boltzmann_window(params, rng, _CLOSURE, size_window, max_attempts)


def boltzmann_environment(
    params: BoltzmannParams,
    rng: random.Random,
    size_window: Optional[Tuple[int, int]] = None,
    max_attempts: int = 100_000,
) -> Environment:
    """Boltzmann plain environment, rejected until its size lies in ``size_window``."""
    return _boltzmann_window(params, rng, _ENV, size_window, max_attempts)


def default_window(n: int) -> Tuple[int, int]:
    """Rejection window ``[floor(0.9 n), ceil(1.1 n)]`` for approximate size ``n``."""
    return (9 * n) // 10, -((-11 * n) // 10)


def calibrate(target_mean_size: float, kind: str = "environment") -> BoltzmannParams:
    """Parameter ``x`` whose expected object size matches the target within 1%.

    The mean size increases from 0 at ``x = 0`` to infinity at ``rho_plain``,
    so plain bisection on ``x`` works.
    """
    if target_mean_size < 1:
        raise ValueError(f"target mean size must be >= 1, got {target_mean_size}")
    with mpmath.workdps(30):
        target = mpmath.mpf(target_mean_size)
        lo, hi = mpmath.mpf(0), gfun.rho_plain(30)
        while True:
            mid = (lo + hi) / 2
            mean = gfun.mean_size(mid, kind, digits=30)
            if abs(mean - target) <= target / 200:
                return boltzmann_params(float(mid))
            if mean < target:
                lo = mid
            else:
                hi = mid
            if hi - lo < mpmath.mpf(10) ** -25:
                raise ValueError(f"could not calibrate to mean size {target_mean_size}")
