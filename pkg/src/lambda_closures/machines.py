"""Reference evaluators for de Bruijn terms and closures.

* substitution-based beta reduction (the oracle everything else is checked
  against), leftmost-outermost;
* the lambda-upsilon calculus of explicit substitutions, rewritten
  leftmost-outermost with its eight rules;
* the Krivine machine, with the four-rule and the merged Fetch variants;
* the U-machine over lists of lifted operations, plus its strong
  normalisation driver :func:`u_nf`.

Every evaluator takes a step budget ("fuel").  A :class:`Fuel` object can be
shared between calls so that nested normalisations draw from one budget;
plain integers are accepted wherever a fresh budget will do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .terms import Abs, App, Closure, Index, Term, closure_openness

__all__ = [
    "FuelExhausted",
    "Fuel",
    "MachineRun",
    "shift",
    "substitute",
    "beta_step",
    "beta_normalize",
    "beta_whnf",
    "whnf_step",
    "Subst",
    "Slash",
    "Lift",
    "Shift",
    "SHIFT",
    "UpsilonTerm",
    "upsilon_step",
    "upsilon_normalize",
    "embed_closure_upsilon",
    "KrivineState",
    "krivine_step",
    "krivine_run",
    "UClosure",
    "UOp",
    "UState",
    "lift_env",
    "to_uclosure",
    "u_step",
    "u_run",
    "u_nf",
    "decode_closure",
    "decode_state",
]


class FuelExhausted(RuntimeError):
    """Step budget ran out; the evaluation is suspected to diverge."""

    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"fuel exhausted after {steps} steps")


class Fuel:
    """Mutable step counter shared across (possibly nested) evaluations."""

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError(f"fuel must be >= 1, got {limit}")
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        if self.used >= self.limit:
            raise FuelExhausted(self.used)
        self.used += 1


def _fuel(fuel: Union[int, Fuel]) -> Fuel:
    return fuel if isinstance(fuel, Fuel) else Fuel(fuel)


@dataclass(frozen=True)
class MachineRun:
    state: tuple
    steps: int


# ---------------------------------------------------------------------------
# Substitution and beta reduction


def shift(M: Term, n: int, i: int) -> Term:
    """``tau^n_i(M)``: indices above the cutoff ``i`` grow by ``n - 1``.

    The cutoff rises by one under each abstraction.
    """
    if n < 1:
        raise ValueError(f"shift amount must be >= 1, got {n}")
    if type(M) is Index:
        return Index(M.k + n - 1) if M.k > i else M
    if type(M) is Abs:
        return Abs(shift(M.body, n, i + 1))
    return App(shift(M.fun, n, i), shift(M.arg, n, i))


def substitute(M: Term, n: int, P: Term) -> Term:
    """``M{n <- P}``: replace index ``n`` by ``P``, closing the gap above it.

    Indices are 0-based, so ``P`` moved under ``n`` binders needs all of its
    free indices raised by ``n``: that is ``tau^(n+1)`` with cutoff ``-1``.
    """
    if type(M) is Index:
        if M.k > n:
            return Index(M.k - 1)
        if M.k == n:
            return shift(P, n + 1, -1) if n else P
        return M
    if type(M) is Abs:
        return Abs(substitute(M.body, n + 1, P))
    return App(substitute(M.fun, n, P), substitute(M.arg, n, P))


def beta_step(M: Term) -> Optional[Term]:
    """Contract the leftmost-outermost redex, or return ``None`` for a normal form."""
    if type(M) is App:
        if type(M.fun) is Abs:
            return substitute(M.fun.body, 0, M.arg)
        f = beta_step(M.fun)
        if f is not None:
            return App(f, M.arg)
        a = beta_step(M.arg)
        return None if a is None else App(M.fun, a)
    if type(M) is Abs:
        b = beta_step(M.body)
        return None if b is None else Abs(b)
    return None


def beta_normalize(M: Term, fuel: Union[int, Fuel] = 100_000) -> Term:
    fuel = _fuel(fuel)
    while True:
        nxt = beta_step(M)
        if nxt is None:
            return M
        fuel.tick()
        M = nxt


def whnf_step(M: Term) -> Optional[Term]:
    """Contract the head redex only (never under a binder)."""
    if type(M) is App:
        if type(M.fun) is Abs:
            return substitute(M.fun.body, 0, M.arg)
        f = whnf_step(M.fun)
        return None if f is None else App(f, M.arg)
    return None


def beta_whnf(M: Term, fuel: Union[int, Fuel] = 100_000) -> Term:
    """Weak head normal form: stop at a head abstraction or a head index."""
    fuel = _fuel(fuel)
    while True:
        nxt = whnf_step(M)
        if nxt is None:
            return M
        fuel.tick()
        M = nxt


# ---------------------------------------------------------------------------
# lambda-upsilon


@dataclass(frozen=True, slots=True)
class Slash:
    term: "UpsilonTerm"


@dataclass(frozen=True, slots=True)
class Lift:
    inner: "UpsilonSubst"


@dataclass(frozen=True, slots=True)
class Shift:
    pass


SHIFT = Shift()

UpsilonSubst = Union[Slash, Lift, Shift]


@dataclass(frozen=True, slots=True)
class Subst:
    body: "UpsilonTerm"
    subst: UpsilonSubst


# Abs and App nodes may carry Subst children here.
UpsilonTerm = Union[Index, Abs, App, Subst]


def _upsilon_root(t) -> Optional[object]:
    if type(t) is App:
        if type(t.fun) is Abs:
            return Subst(t.fun.body, Slash(t.arg))                     # Beta
        return None
    if type(t) is not Subst:
        return None
    b, s = t.body, t.subst
    if type(b) is App:
        return App(Subst(b.fun, s), Subst(b.arg, s))                   # App
    if type(b) is Abs:
        return Abs(Subst(b.body, Lift(s)))                             # Abs
    if type(b) is Index:
        if type(s) is Slash:
            return s.term if b.k == 0 else Index(b.k - 1)              # FVar / RVar
        if type(s) is Lift:
            if b.k == 0:
                return b                                               # FVarLift
            return Subst(Subst(Index(b.k - 1), s.inner), SHIFT)        # RVarLift
        return Index(b.k + 1)                                          # VarShift
    return None


def _upsilon_subst_step(s) -> Optional[UpsilonSubst]:
    if type(s) is Slash:
        t = upsilon_step(s.term)
        return None if t is None else Slash(t)
    if type(s) is Lift:
        inner = _upsilon_subst_step(s.inner)
        return None if inner is None else Lift(inner)
    return None


def upsilon_step(t) -> Optional[object]:
    """One leftmost-outermost lambda-upsilon rewrite, or ``None`` at a normal form."""
    r = _upsilon_root(t)
    if r is not None:
        return r
    if type(t) is App:
        f = upsilon_step(t.fun)
        if f is not None:
            return App(f, t.arg)
        a = upsilon_step(t.arg)
        return None if a is None else App(t.fun, a)
    if type(t) is Abs:
        b = upsilon_step(t.body)
        return None if b is None else Abs(b)
    if type(t) is Subst:
        b = upsilon_step(t.body)
        if b is not None:
            return Subst(b, t.subst)
        s = _upsilon_subst_step(t.subst)
        return None if s is None else Subst(t.body, s)
    return None


def _as_term(t) -> Term:
    if type(t) is Index:
        return t
    if type(t) is Abs:
        return Abs(_as_term(t.body))
    if type(t) is App:
        return App(_as_term(t.fun), _as_term(t.arg))
    raise AssertionError("normal form still holds an explicit substitution")


def upsilon_normalize(M, fuel: Union[int, Fuel] = 100_000) -> Term:
    fuel = _fuel(fuel)
    while True:
        nxt = upsilon_step(M)
        if nxt is None:
            return _as_term(M)
        fuel.tick()
        M = nxt


def embed_closure_upsilon(c: Closure):
    """``<M, c1 : ... : cp>`` as ``M[c1/]...[cp/]``."""
    t = c.term
    for entry in c.env:
        t = Subst(t, Slash(embed_closure_upsilon(entry)))
    return t


# ---------------------------------------------------------------------------
# Krivine machine.  A state is a non-empty tuple of closures: the head is
# the closure in focus, the rest is the argument stack.

KrivineState = Tuple[Closure, ...]


def krivine_step(state: KrivineState, fetch: bool = False) -> Optional[KrivineState]:
    """One transition, or ``None`` when ``state`` is terminal."""
    head, rest = state[0], state[1:]
    t, e = head.term, head.env
    if type(t) is App:
        return (Closure(t.fun, e), Closure(t.arg, e)) + rest          # (App)
    if type(t) is Abs:
        if not rest:
            return None
        return (Closure(t.body, (rest[0],) + e),) + rest[1:]          # (Abs)
    if len(e) <= t.k:
        return None  # index not resolvable in its environment
    if fetch:
        return (e[t.k],) + rest                                       # (Fetch)
    if t.k == 0:
        return (e[0],) + rest                                         # (Zero)
    return (Closure(Index(t.k - 1), e[1:]),) + rest                   # (Succ)


def krivine_run(state: Union[KrivineState, Closure], fuel: Union[int, Fuel] = 100_000,
                fetch: bool = False) -> MachineRun:
    if isinstance(state, Closure):
        state = (state,)
    fuel = _fuel(fuel)
    start = fuel.used
    while True:
        nxt = krivine_step(state, fetch)
        if nxt is None:
            return MachineRun(state, fuel.used - start)
        fuel.tick()
        state = nxt


# ---------------------------------------------------------------------------
# U-machine


@dataclass(frozen=True, slots=True)
class UClosure:
    term: Term
    env: Tuple["UOp", ...] = ()


@dataclass(frozen=True, slots=True)
class UOp:
    """Basic action (a shift or a closure) to run after ``lifts`` lifts."""

    action: Union[Shift, UClosure]
    lifts: int = 0

    def __post_init__(self) -> None:
        if self.lifts < 0:
            raise ValueError(f"lift count must be non-negative, got {self.lifts}")


UState = Tuple[UClosure, ...]


def lift_env(f: Tuple[UOp, ...]) -> Tuple[UOp, ...]:
    return tuple(UOp(op.action, op.lifts + 1) for op in f)


def to_uclosure(c: Closure) -> UClosure:
    return UClosure(c.term, tuple(UOp(to_uclosure(x), 0) for x in c.env))


def u_step(state: UState) -> Optional[UState]:
    head, rest = state[0], state[1:]
    t, f = head.term, head.env
    if type(t) is App:
        return (UClosure(t.fun, f), UClosure(t.arg, f)) + rest                       # (APP)
    if type(t) is Abs:
        if not rest:
            return None
        return (UClosure(t.body, lift_env(f) + (UOp(rest[0], 0),)),) + rest[1:]     # (LBA-BET)
    if not f:
        return None
    op, g = f[0], f[1:]
    if op.lifts > 0:
        if t.k == 0:
            return (UClosure(t, g),) + rest                                           # (FVARLIFT)
        return (UClosure(Index(t.k - 1),
                         (UOp(op.action, op.lifts - 1), UOp(SHIFT, 0)) + g),) + rest  # (RVARLIFT)
    if type(op.action) is Shift:
        return (UClosure(Index(t.k + 1), g),) + rest                                  # (VARSHIFT)
    if t.k == 0:
        return (UClosure(op.action.term, op.action.env + g),) + rest                  # (FVAR)
    return (UClosure(Index(t.k - 1), g),) + rest                                      # (RVAR)


def u_run(state: Union[UState, UClosure], fuel: Union[int, Fuel] = 100_000) -> MachineRun:
    if isinstance(state, UClosure):
        state = (state,)
    fuel = _fuel(fuel)
    start = fuel.used
    while True:
        nxt = u_step(state)
        if nxt is None:
            return MachineRun(state, fuel.used - start)
        fuel.tick()
        state = nxt


def u_nf(c: Union[UClosure, Closure], fuel: Union[int, Fuel] = 100_000) -> Term:
    """Strong normal form by recursive calls of the U-machine."""
    if isinstance(c, Closure):
        c = to_uclosure(c)
    fuel = _fuel(fuel)
    final = u_run((c,), fuel).state
    head = final[0]
    if type(head.term) is Abs:
        return Abs(u_nf(UClosure(head.term.body, lift_env(head.env)), fuel))
    t: Term = head.term
    for arg in final[1:]:
        t = App(t, u_nf(arg, fuel))
    return t


# ---------------------------------------------------------------------------
# Readback


def decode_closure(c: Closure) -> Term:
    """Term denoted by a closed closure: substitute the decoded entries at 0."""
    if closure_openness(c) != 0:
        raise ValueError("only closed closures can be decoded")
    return _decode(c)


def _decode(c: Closure) -> Term:
    t = c.term
    for entry in c.env:
        t = substitute(t, 0, _decode(entry))
    return t


def decode_state(state: KrivineState) -> Term:
    """Term for a Krivine state: decoded head applied to the decoded stack."""
    t = decode_closure(state[0])
    for c in state[1:]:
        t = App(t, decode_closure(c))
    return t
