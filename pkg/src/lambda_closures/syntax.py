"""Concrete syntax for terms, closures and environments.

Grammar::

    term    := ('λ' | '\\') term | app
    app     := atom {atom} [('λ' | '\\') term]
    atom    := INDEX | '(' term ')'
    closure := '<' term ',' env '>'
    env     := '[' [closure {',' closure}] ']'

Abstraction bodies extend as far right as possible, application is left
associative.  The trailing abstraction in ``app`` lets ``0 \\0`` parse the
way it reads; the renderer never relies on it.  Canonical output uses the
backslash; ``pretty=True`` uses ``λ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Tuple, Union

from .machines import Lift, Shift, Slash, Subst, UClosure, UOp
from .terms import Abs, App, Closure, Environment, Index, Term

__all__ = [
    "ParseError",
    "parse_term",
    "parse_closure",
    "parse_environment",
    "parse_object",
    "render_term",
    "render_closure",
    "render_environment",
    "render_object",
    "render_krivine_state",
    "render_u_state",
    "render_upsilon",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: FrozenSet[str]):
        self.line = line
        self.column = column
        self.expected = expected
        exp = ", ".join(sorted(expected)) if expected else "nothing"
        super().__init__(f"{line}:{column}: {message} (expected {exp})")


@dataclass(frozen=True)
class _Tok:
    kind: str  # INDEX, LAM, '(', ')', '<', '>', '[', ']', ',', EOF
    text: str
    line: int
    column: int


_PUNCT = {"(", ")", "<", ">", "[", "]", ","}


def _tokenize(text: str) -> List[_Tok]:
    out: List[_Tok] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        if ch.isdigit() and ch.isascii():
            j = i
            while j < len(text) and text[j].isdigit() and text[j].isascii():
                j += 1
            out.append(_Tok("INDEX", text[i:j], line, col))
            col, i = col + (j - i), j
            continue
        if ch in ("\\", "λ"):
            out.append(_Tok("LAM", ch, line, col))
        elif ch in _PUNCT:
            out.append(_Tok(ch, ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col,
                             frozenset({"INDEX", "λ", "\\", "("} | _PUNCT))
        col, i = col + 1, i + 1
    out.append(_Tok("EOF", "", line, col))
    return out


_TERM_START = frozenset({"INDEX", "λ", "("})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        return ParseError(f"unexpected {what}", t.line, t.column, frozenset(expected))

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            raise self.fail({kind})
        t = self.tok
        self.pos += 1
        return t

    def term(self) -> Term:
        lams = 0
        while self.tok.kind == "LAM":
            self.pos += 1
            lams += 1
        t = self.app()
        for _ in range(lams):
            t = Abs(t)
        return t

    def app(self) -> Term:
        t = self.atom()
        while True:
            kind = self.tok.kind
            if kind in ("INDEX", "("):
                t = App(t, self.atom())
            elif kind == "LAM":
                return App(t, self.term())
            else:
                return t

    def atom(self) -> Term:
        kind = self.tok.kind
        if kind == "INDEX":
            return Index(int(self.expect("INDEX").text))
        if kind == "(":
            self.pos += 1
            t = self.term()
            self.expect(")")
            return t
        raise self.fail(_TERM_START)

    def closure(self) -> Closure:
        self.expect("<")
        t = self.term()
        self.expect(",")
        e = self.env()
        self.expect(">")
        return Closure(t, e)

    def env(self) -> Environment:
        self.expect("[")
        items = []
        if self.tok.kind != "]":
            items.append(self.closure())
            while self.tok.kind == ",":
                self.pos += 1
                items.append(self.closure())
        if self.tok.kind != "]":
            raise self.fail({",", "]"})
        self.pos += 1
        return tuple(items)

    def done(self) -> None:
        if self.tok.kind != "EOF":
            raise self.fail({"end of input"})


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_closure(text: str) -> Closure:
    p = _Parser(text)
    c = p.closure()
    p.done()
    return c


def parse_environment(text: str) -> Environment:
    p = _Parser(text)
    e = p.env()
    p.done()
    return e


def parse_object(text: str) -> Union[Term, Closure, Environment]:
    """Dispatch on the first token: ``<`` closure, ``[`` environment, else term."""
    p = _Parser(text)
    kind = p.tok.kind
    obj = p.closure() if kind == "<" else p.env() if kind == "[" else p.term()
    p.done()
    return obj


# ---------------------------------------------------------------------------
# Rendering


def render_term(t: Term, pretty: bool = False) -> str:
    lam = "λ" if pretty else "\\"
    if type(t) is Index:
        return str(t.k)
    if type(t) is Abs:
        return lam + render_term(t.body, pretty)
    f, a = render_term(t.fun, pretty), render_term(t.arg, pretty)
    if type(t.fun) is Abs:
        f = f"({f})"
    if type(t.arg) is not Index:
        a = f"({a})"
    return f"{f} {a}"


def render_closure(c: Closure, pretty: bool = False) -> str:
    return f"<{render_term(c.term, pretty)}, {render_environment(c.env, pretty)}>"


def render_environment(e: Environment, pretty: bool = False) -> str:
    return "[" + ", ".join(render_closure(c, pretty) for c in e) + "]"


def render_object(obj, pretty: bool = False) -> str:
    if isinstance(obj, Closure):
        return render_closure(obj, pretty)
    if isinstance(obj, tuple):
        return render_environment(obj, pretty)
    return render_term(obj, pretty)


def render_krivine_state(state: Tuple[Closure, ...], pretty: bool = False) -> str:
    """The state is a non-empty environment, so it prints like one."""
    return render_environment(state, pretty)


def _render_uop(op: UOp, pretty: bool) -> str:
    if isinstance(op.action, Shift):
        a = "↑" if pretty else "^"
    else:
        a = _render_uclosure(op.action, pretty)
    return f"({a}, {op.lifts})"


def _render_uclosure(c: UClosure, pretty: bool) -> str:
    ops = ", ".join(_render_uop(op, pretty) for op in c.env)
    return f"<{render_term(c.term, pretty)}, [{ops}]>"


def render_u_state(state: Tuple[UClosure, ...], pretty: bool = False) -> str:
    return "[" + ", ".join(_render_uclosure(c, pretty) for c in state) + "]"


def _render_usubst(s, pretty: bool) -> str:
    if type(s) is Slash:
        return render_upsilon(s.term, pretty) + "/"
    if type(s) is Lift:
        return ("⇑" if pretty else "^^") + "(" + _render_usubst(s.inner, pretty) + ")"
    return "↑" if pretty else "^"


def render_upsilon(t, pretty: bool = False) -> str:
    """Display form for lambda-upsilon terms (output only, not parseable)."""
    if type(t) is Subst:
        return f"({render_upsilon(t.body, pretty)})[{_render_usubst(t.subst, pretty)}]"
    if type(t) is Index:
        return str(t.k)
    if type(t) is Abs:
        return ("λ" if pretty else "\\") + render_upsilon(t.body, pretty)
    f, a = render_upsilon(t.fun, pretty), render_upsilon(t.arg, pretty)
    if type(t.fun) is Abs:
        f = f"({f})"
    if type(t.arg) is not Index:
        a = f"({a})"
    return f"{f} {a}"
