"""Dirichlet convolution, the Eratosthenes transform, divisor truncation,
and the odd-lift operator.

The Eratosthenes transform of F is F' = mu * F, the unique table with
F = F' * 1 (Mobius inversion).  Both directions run as O(M log M)
divisor-lattice sweeps, never per-element Mobius sums.

A ``TruncatedDivisorSum`` stores g'(d) for d <= cutoff; the function it
induces,

    g(m) = sum of g'(d) over d | m with d <= cutoff,

is evaluable at arbitrarily large (big-integer) m because only
divisibility of m by small d is ever tested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith_core import (EXACT, REAL, SUPPORT_EPS, PrimeTable,
                         TabulatedFunction, odd_part, sieve_primes)


@dataclass(eq=False)
class TruncatedDivisorSum:
    """Divisor-sum table g'(d), d in [1..cutoff], of either domain kind.

    The cutoff may be loose: entries above max supp(g') are simply zero.
    Immutable after construction.
    """

    cutoff: int
    kind: str
    et_values: list | np.ndarray   # index 0..cutoff, slot 0 unused
    name: str = ""

    def __post_init__(self):
        if self.kind not in (EXACT, REAL):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == REAL:
            self.et_values = np.asarray(self.et_values, dtype=np.float64)
        if len(self.et_values) != self.cutoff + 1:
            raise ValueError("et table must have cutoff+1 entries")
        self._support: list[tuple[int, int | float]] | None = None

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def support(self) -> list[tuple[int, int | float]]:
        """Nonzero (d, g'(d)) pairs, ascending d.  Cached."""
        if self._support is None:
            if self.kind == EXACT:
                self._support = [(d, v) for d, v in enumerate(self.et_values)
                                 if d >= 1 and v]
            else:
                idx = np.flatnonzero(self.et_values)
                self._support = [(int(d), float(self.et_values[d]))
                                 for d in idx if d >= 1]
        return self._support

    def max_support(self, eps: float = SUPPORT_EPS) -> int:
        """Largest d with g'(d) nonzero (0 for the zero table)."""
        best = 0
        for d, v in self.support():
            if self.kind == EXACT or abs(v) > eps:
                best = d
        return best


def tds_is_zero(g: TruncatedDivisorSum, eps: float = SUPPORT_EPS) -> bool:
    if g.kind == EXACT:
        return not g.support()
    return all(abs(v) <= eps for _, v in g.support())


def tds_from_et(entries, cutoff: int, kind: str, name: str = "") -> TruncatedDivisorSum:
    """Build a TDS from a {d: value} mapping or a 0-indexed sequence."""
    if isinstance(entries, dict):
        if kind == EXACT:
            vals: list | np.ndarray = [0] * (cutoff + 1)
        else:
            vals = np.zeros(cutoff + 1, dtype=np.float64)
        for d, v in entries.items():
            if not 1 <= d <= cutoff:
                raise ValueError(f"support point {d} outside [1, {cutoff}]")
            vals[d] = v
        return TruncatedDivisorSum(cutoff, kind, vals, name)
    vals = list(entries) if kind == EXACT else np.asarray(entries, dtype=np.float64)
    return TruncatedDivisorSum(cutoff, kind, vals, name)


# ----------------------------------------------------------------------
# convolution and inversion sweeps
# ----------------------------------------------------------------------

def dirichlet_convolve(F: TabulatedFunction, G: TabulatedFunction,
                       M: int | None = None) -> TabulatedFunction:
    """(F * G)(n) = sum over d | n of F(d) G(n/d), for n <= M.

    Real absorbs ExactInt by promotion.
    """
    if M is None:
        M = min(F.limit, G.limit)
    if F.limit < M or G.limit < M:
        raise ValueError(f"inputs must be tabulated to at least {M}")
    if F.is_exact and G.is_exact:
        out = [0] * (M + 1)
        gv = G.values
        for d in range(1, M + 1):
            fv = F.values[d]
            if fv:
                for k in range(1, M // d + 1):
                    if gv[k]:
                        out[d * k] += fv * gv[k]
        return TabulatedFunction(M, EXACT, out, f"({F.name}*{G.name})")
    fv_arr = np.asarray(F.values[: M + 1], dtype=np.float64)
    gv_arr = np.asarray(G.values[: M + 1], dtype=np.float64)
    out = np.zeros(M + 1, dtype=np.float64)
    for d in range(1, M + 1):
        fv = fv_arr[d]
        if fv != 0.0:
            out[d::d] += fv * gv_arr[1: M // d + 1]
    return TabulatedFunction(M, REAL, out, f"({F.name}*{G.name})")


def eratosthenes_transform(F: TabulatedFunction,
                           M: int | None = None) -> TabulatedFunction:
    """F' = mu * F on [1..M], by the in-place divisor-lattice sweep.

    Processing d in increasing order, once every proper divisor of d has
    been subtracted the slot holds F'(d); it is then pushed off all
    higher multiples.
    """
    if M is None:
        M = F.limit
    if F.limit < M:
        raise ValueError(f"tabulated only to {F.limit}, need {M}")
    if F.is_exact:
        et: list | np.ndarray = list(F.values[: M + 1])
        for d in range(1, M // 2 + 1):
            v = et[d]
            if v:
                for m in range(2 * d, M + 1, d):
                    et[m] -= v
    else:
        et = np.array(F.values[: M + 1], dtype=np.float64)
        for d in range(1, M // 2 + 1):
            v = et[d]
            if v != 0.0:
                et[2 * d:: d] -= v
    return TabulatedFunction(M, F.kind, et, f"{F.name}'")


def divisor_sum_transform(F: TabulatedFunction,
                          M: int | None = None) -> TabulatedFunction:
    """(F * 1)(n) = sum of F(d) over d | n; inverse of the transform above."""
    if M is None:
        M = F.limit
    if F.limit < M:
        raise ValueError(f"tabulated only to {F.limit}, need {M}")
    if F.is_exact:
        out: list | np.ndarray = [0] * (M + 1)
        for d in range(1, M + 1):
            v = F.values[d]
            if v:
                for m in range(d, M + 1, d):
                    out[m] += v
    else:
        out = np.zeros(M + 1, dtype=np.float64)
        vals = F.values
        for d in range(1, M + 1):
            v = vals[d]
            if v != 0.0:
                out[d::d] += v
    return TabulatedFunction(M, F.kind, out, f"({F.name}*1)")


def truncate(F: TabulatedFunction, N: int) -> TruncatedDivisorSum:
    """N-truncation of F: keep the transform values F'(d) for d <= N only."""
    et = eratosthenes_transform(F, N)
    return TruncatedDivisorSum(N, F.kind, et.values,
                               name=f"{F.name}_{N}" if F.name else "")


def retruncate(g: TruncatedDivisorSum, N: int) -> TruncatedDivisorSum:
    """Change the cutoff: drop entries above N, or pad with zeros up to N."""
    if N >= g.cutoff:
        if g.kind == EXACT:
            vals: list | np.ndarray = list(g.et_values) + [0] * (N - g.cutoff)
        else:
            vals = np.concatenate([g.et_values,
                                   np.zeros(N - g.cutoff, dtype=np.float64)])
    else:
        vals = (list(g.et_values[: N + 1]) if g.kind == EXACT
                else g.et_values[: N + 1].copy())
    return TruncatedDivisorSum(N, g.kind, vals, g.name)


def evaluate_tds(g: TruncatedDivisorSum, m: int):
    """g(m) = sum of g'(d) over d <= cutoff dividing m; m may be huge."""
    if m < 1:
        raise ValueError(f"naturals start at 1, got {m}")
    acc: int | float = 0 if g.kind == EXACT else 0.0
    for d, v in g.support():
        if m % d == 0:
            acc += v
    return acc


def evaluate_tds_range(g: TruncatedDivisorSum, m_max: int):
    """g(m) for all m in [1..m_max] at once, by a divisor sieve.

    Returns a list (ExactInt) or float64 array (Real), index 0 unused.
    """
    if m_max < 1:
        raise ValueError(f"naturals start at 1, got {m_max}")
    if g.kind == EXACT:
        out: list | np.ndarray = [0] * (m_max + 1)
        for d, v in g.support():
            if d <= m_max:
                for m in range(d, m_max + 1, d):
                    out[m] += v
    else:
        out = np.zeros(m_max + 1, dtype=np.float64)
        for d, v in g.support():
            if d <= m_max:
                out[d::d] += v
    return out


def odd_lift(x, method: str = "direct"):
    """Compose with the odd-part map: result(n) = x(odd_part(n)).

    For a TabulatedFunction two evaluation paths exist and must agree:
    ``direct`` reads x at odd_part(n); ``et`` zeroes the even entries of
    the Eratosthenes transform and re-convolves with 1 (odd naturals are
    divisor-closed, so both describe the same function).  For a
    TruncatedDivisorSum the lift acts on the stored transform, zeroing
    even d and preserving the cutoff.
    """
    if isinstance(x, TruncatedDivisorSum):
        if x.kind == EXACT:
            vals: list | np.ndarray = [v if d % 2 else 0
                                       for d, v in enumerate(x.et_values)]
        else:
            vals = x.et_values.copy()
            vals[0::2] = 0.0
        return TruncatedDivisorSum(x.cutoff, x.kind, vals,
                                   name=f"{x.name}^odd" if x.name else "")
    if not isinstance(x, TabulatedFunction):
        raise ValueError("odd_lift expects a TabulatedFunction or a TDS")
    M = x.limit
    if method == "direct":
        if x.is_exact:
            vals = [0] * (M + 1)
            for n in range(1, M + 1):
                vals[n] = x.values[odd_part(n)]
        else:
            half = np.arange(M + 1)
            half[0] = 1
            while True:
                even = (half & 1) == 0
                if not even.any():
                    break
                half[even] >>= 1
            vals = np.asarray(x.values)[half].copy()
            vals[0] = 0.0
        return TabulatedFunction(M, x.kind, vals,
                                 name=f"{x.name}^odd" if x.name else "")
    if method == "et":
        et = eratosthenes_transform(x)
        if x.is_exact:
            lifted = [v if d % 2 else 0 for d, v in enumerate(et.values)]
        else:
            lifted = et.values.copy()
            lifted[0::2] = 0.0
        masked = TabulatedFunction(M, x.kind, lifted, "")
        out = divisor_sum_transform(masked)
        out.name = f"{x.name}^odd" if x.name else ""
        return out
    raise ValueError(f"unknown odd_lift method {method!r}")


def lambda_tds(N: int, table: PrimeTable | None = None) -> TruncatedDivisorSum:
    """N-truncation of von Mangoldt: g'(d) = -mu(d) log d for d <= N."""
    if table is None:
        table = sieve_primes(max(N, 2))
    if table.limit < N:
        raise ValueError(f"sieve limit {table.limit} below {N}")
    mu = table.mobius_values[: N + 1].astype(np.float64)
    logs = np.zeros(N + 1, dtype=np.float64)
    if N >= 1:
        logs[1:] = np.log(np.arange(1, N + 1, dtype=np.float64))
    return TruncatedDivisorSum(N, REAL, -mu * logs, name=f"lambda_{N}")


# ----------------------------------------------------------------------
# text serialization: header line, then one "d <TAB> value" per nonzero d
# ----------------------------------------------------------------------

def write_tds(g: TruncatedDivisorSum, fh) -> None:
    fh.write(f"cutoff={g.cutoff} kind={g.kind}\n")
    for d, v in g.support():
        fh.write(f"{d}\t{v!r}\n" if g.kind == REAL else f"{d}\t{v}\n")


def read_tds(fh) -> TruncatedDivisorSum:
    header = fh.readline()
    parts = header.split()
    fields = {}
    for part in parts:
        if "=" not in part:
            raise ValueError(f"malformed header {header!r}")
        k, _, val = part.partition("=")
        fields[k] = val
    if set(fields) != {"cutoff", "kind"}:
        raise ValueError(f"header must carry cutoff= and kind=, got {header!r}")
    try:
        cutoff = int(fields["cutoff"])
    except ValueError:
        raise ValueError(f"bad cutoff {fields['cutoff']!r}") from None
    kind = fields["kind"]
    if kind not in (EXACT, REAL) or cutoff < 1:
        raise ValueError(f"malformed header {header!r}")
    entries: dict[int, int | float] = {}
    for lineno, line in enumerate(fh, start=2):
        line = line.strip()
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise ValueError(f"line {lineno}: expected 'd<TAB>value'")
        try:
            d = int(cols[0])
            v = int(cols[1]) if kind == EXACT else float(cols[1])
        except ValueError:
            raise ValueError(f"line {lineno}: bad entry {line!r}") from None
        if not 1 <= d <= cutoff:
            raise ValueError(f"line {lineno}: d={d} outside [1, {cutoff}]")
        if d in entries:
            raise ValueError(f"line {lineno}: duplicate entry for d={d}")
        entries[d] = v
    return tds_from_et(entries, cutoff, kind)


def write_tds_path(g: TruncatedDivisorSum, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        write_tds(g, fh)


def read_tds_path(path) -> TruncatedDivisorSum:
    with open(path, "r", encoding="ascii") as fh:
        return read_tds(fh)
