"""Exact counting of terms, environments and closures.

Every sequence is produced by bottom-up dynamic programming over Python
integers, so values are exact at any size.  Tables are cached per
``(class, parameters, N)`` and never mutated after construction.

Reading an entry of a built table is constant time; building the plain
environment/closure table to ``N`` costs ``O(N^2)`` big-integer products.
The holonomic recurrence in :data:`E_RECURRENCE` is kept only as a check on
the DP output (:func:`check_e_recurrence`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import terms

__all__ = [
    "CountTable",
    "OpenTermTable",
    "ShallowTermTable",
    "ClosedClosureTable",
    "plain_terms_table",
    "open_terms_table",
    "shallow_terms_table",
    "plain_tables",
    "closed_closures_table",
    "count_plain_terms",
    "count_m_open_terms",
    "count_shallow_terms",
    "count_plain_environments",
    "count_plain_closures",
    "count_closed_closures",
    "E_RECURRENCE",
    "E_INITIAL",
    "RecurrenceCheck",
    "check_e_recurrence",
    "OracleRow",
    "OracleReport",
    "oracle_crosscheck",
]


@dataclass(frozen=True)
class CountTable:
    """Coefficients ``values[0..n_max]`` of one counting sequence."""

    kind: str
    n_max: int
    values: Tuple[int, ...]
    m: Optional[int] = None
    h: Optional[int] = None

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class OpenTermTable:
    """``l_{m,n}`` for ``0 <= n <= n_max`` and every ``m``.

    Rows are stored for ``m <= n_max`` only; for larger ``m`` the row equals
    the plain-term row because a size-``n`` term has openness at most ``n``.
    """

    n_max: int
    rows: Tuple[Tuple[int, ...], ...]

    def get(self, m: int, n: int) -> int:
        if n > self.n_max:
            raise IndexError(f"size {n} beyond table bound {self.n_max}")
        return self.rows[min(m, self.n_max)][n]

    def row(self, m: int) -> CountTable:
        return CountTable("m-open-terms", self.n_max, self.rows[min(m, self.n_max)], m=m)


@dataclass(frozen=True)
class ShallowTermTable:
    h: int
    n_max: int
    rows: Tuple[Tuple[int, ...], ...]  # rows[m], 0 <= m <= h

    def get(self, m: int, n: int) -> int:
        return self.rows[m][n]


@dataclass(frozen=True)
class ClosedClosureTable:
    """Counts ``c_{m,n}`` plus the environment convolution ``G_m(s, p)``.

    ``G[s][p]`` is the number of environments made of exactly ``p``
    ``m``-open closures with total size ``s``.  ``p`` runs up to
    ``s // min_size`` where ``min_size`` is the smallest non-empty size of
    the class (2 for closed closures, 1 otherwise).
    """

    m: int
    n_max: int
    counts: Tuple[int, ...]
    G: Tuple[Tuple[int, ...], ...]
    min_size: Optional[int]
    open_terms: OpenTermTable = field(repr=False)

    def g(self, s: int, p: int) -> int:
        row = self.G[s]
        return row[p] if p < len(row) else 0

    def as_count_table(self) -> CountTable:
        return CountTable("closed-closures", self.n_max, self.counts, m=self.m)


def _check_size(n: int) -> None:
    if n < 0:
        raise ValueError(f"size must be non-negative, got {n}")


@lru_cache(maxsize=None)
def plain_terms_table(n_max: int) -> CountTable:
    _check_size(n_max)
    l = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        app = sum(l[i] * l[n - 1 - i] for i in range(1, n - 1))
        l[n] = l[n - 1] + app + 1
    return CountTable("plain-terms", n_max, tuple(l))


@lru_cache(maxsize=None)
def open_terms_table(n_max: int) -> OpenTermTable:
    _check_size(n_max)
    plain = plain_terms_table(n_max).values
    rows: List[List[int]] = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    for n in range(1, n_max + 1):
        for m in range(n_max + 1):
            if m >= n:
                rows[m][n] = plain[n]
                continue
            row = rows[m]
            above = rows[min(m + 1, n_max)][n - 1]
            app = sum(row[i] * row[n - 1 - i] for i in range(1, n - 1))
            # index part z + ... + z^m: indices 0..m-1, index j has size j+1
            row[n] = above + app + (1 if n <= m else 0)
    return OpenTermTable(n_max, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def shallow_terms_table(h: int, n_max: int) -> ShallowTermTable:
    if h < 1:
        raise ValueError(f"shallow bound must be >= 1, got {h}")
    _check_size(n_max)
    rows: List[List[int]] = [[0] * (n_max + 1) for _ in range(h + 1)]
    for n in range(1, n_max + 1):
        for m in range(h + 1):
            row = rows[m]
            above = rows[min(m + 1, h)][n - 1]
            app = sum(row[i] * row[n - 1 - i] for i in range(1, n - 1))
            row[n] = above + app + (1 if n <= m else 0)
    return ShallowTermTable(h, n_max, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def plain_tables(n_max: int) -> Tuple[CountTable, CountTable]:
    """``(environments, closures)`` tables from ``E = C*E + 1``, ``C = L*E``."""
    _check_size(n_max)
    l = plain_terms_table(n_max).values
    e = [0] * (n_max + 1)
    c = [0] * (n_max + 1)
    e[0] = 1
    for n in range(1, n_max + 1):
        c[n] = sum(l[k] * e[n - k] for k in range(1, n + 1))
        e[n] = sum(c[k] * e[n - k] for k in range(1, n + 1))
    return (
        CountTable("plain-environments", n_max, tuple(e)),
        CountTable("plain-closures", n_max, tuple(c)),
    )


@lru_cache(maxsize=None)
def closed_closures_table(n_max: int, m: int = 0) -> ClosedClosureTable:
    """Counts of ``m``-open closures via ``c_{m,n} = sum_p sum_k l_{m+p,k} G_m(n-k, p)``."""
    _check_size(n_max)
    if m < 0:
        raise ValueError(f"openness must be non-negative, got {m}")
    lt = open_terms_table(n_max)
    c = [0] * (n_max + 1)
    G: List[List[int]] = [[1]]  # G[0] = [1]: only the empty environment
    min_size: Optional[int] = None
    for n in range(1, n_max + 1):
        total = 0
        for k in range(1, n + 1):
            s = n - k
            row = G[s]
            for p, g in enumerate(row):
                if g:
                    total += lt.get(m + p, k) * g
        c[n] = total
        if min_size is None and total:
            min_size = n
        # G[n][p] = sum_j c[j] * G[n-j][p-1]; nothing with p >= 1 before the first closure exists
        if min_size is None:
            G.append([0])
            continue
        pmax = n // min_size
        row = [0] * (pmax + 1)
        for p in range(1, pmax + 1):
            acc = 0
            for j in range(min_size, n + 1):
                prev = G[n - j]
                if p - 1 < len(prev):
                    acc += c[j] * prev[p - 1]
            row[p] = acc
        G.append(row)
    return ClosedClosureTable(m, n_max, tuple(c), tuple(tuple(r) for r in G), min_size, lt)


def count_plain_terms(n: int) -> int:
    _check_size(n)
    return plain_terms_table(n)[n]


def count_m_open_terms(m: int, n: int) -> int:
    _check_size(n)
    return open_terms_table(n).get(m, n)


def count_shallow_terms(h: int, m: int, n: int) -> int:
    if not 0 <= m <= h:
        raise ValueError(f"need 0 <= m <= h, got m={m}, h={h}")
    _check_size(n)
    return shallow_terms_table(h, n).get(m, n)


def count_plain_environments(n: int) -> int:
    _check_size(n)
    return plain_tables(n)[0][n]


def count_plain_closures(n: int) -> int:
    _check_size(n)
    return plain_tables(n)[1][n]


def count_closed_closures(n: int, m: int = 0) -> int:
    _check_size(n)
    return closed_closures_table(n, m).counts[n]


# ---------------------------------------------------------------------------
# Holonomic recurrence for e_n, transcribed as data: row k holds the cubic
# coefficient polynomial (n^3, n^2, n, 1) multiplying e_{n+k}.

E_RECURRENCE: Tuple[Tuple[int, int, int, int], ...] = (
    (125, 0, -125, 0),
    (-475, -150, 325, 0),
    (-1625, -13650, -29125, -17100),
    (5925, 65550, 204825, 190800),
    (-10950, -149850, -609000, -744300),
    (43599, 638460, 3028701, 4633680),
    (-97781, -1680378, -9481237, -17550960),
    (122749, 2388066, 15211685, 31648968),
    (-184402, -3954630, -27717140, -63149544),
    (280081, 6826380, 54868451, 145130568),
    (-205649, -5654610, -51851989, -158722620),
    (37439, 1339686, 16635271, 70682784),
    (-68686, -3028038, -43616336, -205972920),
    (222029, 9258780, 128417911, 592399800),
    (-241115, -10519830, -152823475, -739190880),
    (134151, 6201222, 95476551, 489605640),
    (-42231, -2067834, -33729375, -183277332),
    (7470, 386418, 6659316, 38233296),
    (-678, -36972, -671670, -4065240),
    (24, 1380, 26436, 168720),
)

E_INITIAL: Tuple[int, ...] = (
    1, 1, 4, 17, 77, 364, 1776, 8881, 45296, 234806,
    1233816, 6558106, 35202448, 190568779, 1039296373,
    5704834700, 31494550253, 174759749005, 974155147162,
)


@dataclass(frozen=True)
class RecurrenceCheck:
    ok: bool
    first_failure: Optional[int]  # smallest window start n whose relation fails
    initial_ok: bool
    initial_mismatch: Optional[int]  # smallest i <= 18 with e_i != initial value
    windows_checked: int


def _recurrence_residual(e: Sequence[int], n: int) -> int:
    total = 0
    n2 = n * n
    n3 = n2 * n
    for k, (a, b, c, d) in enumerate(E_RECURRENCE):
        total += (a * n3 + b * n2 + c * n + d) * e[n + k]
    return total


def check_e_recurrence(n_max: int, values: Optional[Sequence[int]] = None) -> RecurrenceCheck:
    """Check ``e_0..e_{n_max}`` against the holonomic recurrence and initial values.

    ``values`` defaults to the DP table; pass a custom sequence to check it
    instead.  Failures are reported, never raised.
    """
    order = len(E_RECURRENCE) - 1
    if n_max < order:
        raise ValueError(f"need n_max >= {order}, got {n_max}")
    e = plain_tables(n_max)[0].values if values is None else tuple(values)
    if len(e) < n_max + 1:
        raise ValueError(f"sequence has {len(e)} terms, need {n_max + 1}")
    initial_mismatch = next((i for i, v in enumerate(E_INITIAL) if e[i] != v), None)
    first_failure = None
    windows = n_max - order + 1
    for n in range(windows):
        if _recurrence_residual(e, n) != 0:
            first_failure = n
            break
    return RecurrenceCheck(
        ok=first_failure is None and initial_mismatch is None,
        first_failure=first_failure,
        initial_ok=initial_mismatch is None,
        initial_mismatch=initial_mismatch,
        windows_checked=windows,
    )


# ---------------------------------------------------------------------------
# DP versus brute-force enumeration.


@dataclass(frozen=True)
class OracleRow:
    cls: str
    params: Tuple[Tuple[str, int], ...]
    n: int
    counted: int
    enumerated: int

    @property
    def ok(self) -> bool:
        return self.counted == self.enumerated


@dataclass(frozen=True)
class OracleReport:
    n_max: int
    rows: Tuple[OracleRow, ...]

    @property
    def mismatches(self) -> Tuple[OracleRow, ...]:
        return tuple(r for r in self.rows if not r.ok)

    @property
    def ok(self) -> bool:
        return not self.mismatches


OPEN_TERM_PARAMS = (0, 1, 2, 3)
SHALLOW_PARAMS = ((1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 2))


def oracle_crosscheck(n_max: int, classes: Optional[Sequence[str]] = None) -> OracleReport:
    """Compare every DP count with the size of the brute-force enumeration."""
    if n_max > terms.ORACLE_BOUND:
        raise terms.OracleLimitError(f"size {n_max} exceeds oracle bound {terms.ORACLE_BOUND}")
    wanted = set(classes) if classes is not None else {
        "plain-terms", "m-open-terms", "shallow-terms",
        "plain-environments", "plain-closures", "closed-closures",
    }
    rows: List[OracleRow] = []
    for n in range(n_max + 1):
        if "plain-terms" in wanted:
            rows.append(OracleRow("plain-terms", (), n, count_plain_terms(n), len(terms.enumerate_terms(n))))
        if "m-open-terms" in wanted:
            for m in OPEN_TERM_PARAMS:
                rows.append(OracleRow("m-open-terms", (("m", m),), n,
                                      count_m_open_terms(m, n), len(terms.enumerate_terms(n, m))))
        if "shallow-terms" in wanted:
            for h, m in SHALLOW_PARAMS:
                rows.append(OracleRow("shallow-terms", (("h", h), ("m", m)), n,
                                      count_shallow_terms(h, m, n),
                                      len(terms.enumerate_shallow_terms(h, m, n))))
        if "plain-environments" in wanted:
            rows.append(OracleRow("plain-environments", (), n, count_plain_environments(n),
                                  len(terms.enumerate_environments(n))))
        if "plain-closures" in wanted:
            rows.append(OracleRow("plain-closures", (), n, count_plain_closures(n),
                                  len(terms.enumerate_closures(n))))
        if "closed-closures" in wanted:
            rows.append(OracleRow("closed-closures", (("m", 0),), n, count_closed_closures(n),
                                  len(terms.enumerate_closures(n, "closed"))))
    return OracleReport(n_max, tuple(rows))
