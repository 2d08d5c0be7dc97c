"""De Bruijn terms, closures and environments.

Terms are immutable trees built from :class:`Index`, :class:`Abs` and
:class:`App`.  A :class:`Closure` pairs a term with an environment, and an
environment is a plain tuple of closures (``()`` is the empty environment).

Sizes follow the natural size notion: an index ``k`` weighs ``k + 1``,
abstraction and application each add one, and a closure weighs its term
plus every closure stored in its environment.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

__all__ = [
    "Index",
    "Abs",
    "App",
    "Term",
    "Closure",
    "Environment",
    "EMPTY",
    "ORACLE_BOUND",
    "OracleLimitError",
    "size_term",
    "size_closure",
    "size_env",
    "term_openness",
    "is_m_open",
    "closure_openness",
    "enumerate_terms",
    "enumerate_shallow_terms",
    "enumerate_closures",
    "enumerate_environments",
]


@dataclass(frozen=True, slots=True)
class Index:
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"de Bruijn index must be non-negative, got {self.k}")


@dataclass(frozen=True, slots=True)
class Abs:
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    fun: "Term"
    arg: "Term"


Term = Union[Index, Abs, App]


@dataclass(frozen=True, slots=True)
class Closure:
    term: Term
    env: Tuple["Closure", ...] = ()


Environment = Tuple[Closure, ...]
EMPTY: Environment = ()

# Largest size the brute-force enumerators accept by default.
ORACLE_BOUND = 12


class OracleLimitError(ValueError):
    """Requested enumeration exceeds the configured oracle bound."""


# ---------------------------------------------------------------------------
# Size and openness.  Written with explicit stacks so that deep terms coming
# out of the Boltzmann samplers do not hit the interpreter recursion limit.


def size_term(t: Term) -> int:
    total = 0
    stack = [t]
    while stack:
        t = stack.pop()
        if type(t) is Index:
            total += t.k + 1
        elif type(t) is Abs:
            total += 1
            stack.append(t.body)
        else:
            total += 1
            stack.append(t.fun)
            stack.append(t.arg)
    return total


def size_env(e: Environment) -> int:
    total = 0
    stack = list(e)
    while stack:
        c = stack.pop()
        total += size_term(c.term)
        stack.extend(c.env)
    return total


def size_closure(c: Closure) -> int:
    return size_term(c.term) + size_env(c.env)


def term_openness(t: Term) -> int:
    """Least ``m`` such that prefixing ``t`` with ``m`` abstractions closes it."""
    best = 0
    stack = [(t, 0)]
    while stack:
        t, depth = stack.pop()
        if type(t) is Index:
            need = t.k + 1 - depth
            if need > best:
                best = need
        elif type(t) is Abs:
            stack.append((t.body, depth + 1))
        else:
            stack.append((t.fun, depth))
            stack.append((t.arg, depth))
    return best


def is_m_open(t: Term, m: int) -> bool:
    return term_openness(t) <= m


def closure_openness(c: Closure) -> int:
    """Least ``m`` such that ``c`` is an ``m``-open closure.

    A closure ``<M, e>`` with ``len(e) == p`` is ``m``-open when ``M`` is
    ``(m + p)``-open and every entry of ``e`` is itself ``m``-open, so the
    answer is the maximum of ``openness(M) - len(env)`` over all nested
    closures, clipped at zero.
    """
    best = 0
    stack = [c]
    while stack:
        c = stack.pop()
        need = term_openness(c.term) - len(c.env)
        if need > best:
            best = need
        stack.extend(c.env)
    return best


# ---------------------------------------------------------------------------
# Exhaustive enumeration (brute-force oracles for the counting module).
#
# Order is fixed: index, then abstraction, then application with increasing
# left size; closures by increasing term size; environments by increasing
# head size.


def _check_bound(n: int, bound: Optional[int]) -> None:
    limit = ORACLE_BOUND if bound is None else bound
    if n > limit:
        raise OracleLimitError(f"size {n} exceeds oracle bound {limit}")
    if n < 0:
        raise ValueError(f"size must be non-negative, got {n}")


@lru_cache(maxsize=None)
def _terms(n: int, m: Optional[int]) -> Tuple[Term, ...]:
    if n <= 0:
        return ()
    if m is not None and m >= n:
        # an m-open term of size n can only use indices below n anyway
        m = None
    out: list = []
    if m is None or n - 1 < m:
        out.append(Index(n - 1))
    inner = None if m is None else m + 1
    out.extend(Abs(b) for b in _terms(n - 1, inner))
    for i in range(1, n - 1):
        rights = _terms(n - 1 - i, m)
        for f in _terms(i, m):
            out.extend(App(f, a) for a in rights)
    return tuple(out)


def enumerate_terms(n: int, m: Optional[int] = None, *, bound: Optional[int] = None) -> Tuple[Term, ...]:
    """All terms of size ``n``; ``m=None`` means plain terms, else ``m``-open ones."""
    _check_bound(n, bound)
    return _terms(n, m)


@lru_cache(maxsize=None)
def _shallow(h: int, m: int, n: int) -> Tuple[Term, ...]:
    if n <= 0:
        return ()
    out: list = []
    if n - 1 < m:
        out.append(Index(n - 1))
    out.extend(Abs(b) for b in _shallow(h, min(m + 1, h), n - 1))
    for i in range(1, n - 1):
        rights = _shallow(h, m, n - 1 - i)
        for f in _shallow(h, m, i):
            out.extend(App(f, a) for a in rights)
    return tuple(out)


def enumerate_shallow_terms(h: int, m: int, n: int, *, bound: Optional[int] = None) -> Tuple[Term, ...]:
    """All ``m``-open terms of size ``n`` whose indices are all below ``h``."""
    if not 0 <= m <= h:
        raise ValueError(f"need 0 <= m <= h, got m={m}, h={h}")
    _check_bound(n, bound)
    return _shallow(h, m, n)


@lru_cache(maxsize=None)
def _plain_envs(n: int) -> Tuple[Environment, ...]:
    if n == 0:
        return (EMPTY,)
    out: list = []
    for j in range(1, n + 1):
        tails = _plain_envs(n - j)
        for c in _plain_closures(j):
            out.extend((c,) + tail for tail in tails)
    return tuple(out)


@lru_cache(maxsize=None)
def _plain_closures(n: int) -> Tuple[Closure, ...]:
    out: list = []
    for k in range(1, n + 1):
        envs = _plain_envs(n - k)
        for t in _terms(k, None):
            out.extend(Closure(t, e) for e in envs)
    return tuple(out)


@lru_cache(maxsize=None)
def _open_envs(s: int, p: int, m: int) -> Tuple[Environment, ...]:
    # environments of exactly p closures from Clos_m with total size s
    if p == 0:
        return (EMPTY,) if s == 0 else ()
    out: list = []
    for j in range(1, s + 1):
        tails = _open_envs(s - j, p - 1, m)
        if not tails:
            continue
        for c in _open_closures(j, m):
            out.extend((c,) + tail for tail in tails)
    return tuple(out)


@lru_cache(maxsize=None)
def _open_closures(n: int, m: int) -> Tuple[Closure, ...]:
    out: list = []
    for k in range(1, n + 1):
        for p in range(0, n - k + 1):
            envs = _open_envs(n - k, p, m)
            if not envs:
                continue
            for t in _terms(k, m + p):
                out.extend(Closure(t, e) for e in envs)
    return tuple(out)


def enumerate_closures(
    n: int, mode: str = "plain", m: int = 0, *, bound: Optional[int] = None
) -> Tuple[Closure, ...]:
    """All closures of size ``n``.

    ``mode="plain"`` lists unconstrained closures; ``mode="closed"`` lists
    ``m``-open closures (closed ones for the default ``m=0``).
    """
    _check_bound(n, bound)
    if mode == "plain":
        return _plain_closures(n)
    if mode == "closed":
        return _open_closures(n, m)
    raise ValueError(f"unknown closure mode {mode!r}")


def enumerate_environments(n: int, *, bound: Optional[int] = None) -> Tuple[Environment, ...]:
    _check_bound(n, bound)
    return _plain_envs(n)
