"""Counting, random generation and evaluation of de Bruijn terms, closures and environments."""

from .terms import (
    EMPTY,
    Abs,
    App,
    Closure,
    Index,
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
from .counting import (
    check_e_recurrence,
    count_closed_closures,
    count_m_open_terms,
    count_plain_closures,
    count_plain_environments,
    count_plain_terms,
    count_shallow_terms,
    oracle_crosscheck,
)
from .syntax import parse_closure, parse_environment, parse_object, parse_term, render_object

__version__ = "0.1.0"
