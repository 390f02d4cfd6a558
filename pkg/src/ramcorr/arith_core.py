"""Sieved elementary arithmetic functions and parity/smoothness operators.

Two building blocks everything else consumes:

* ``PrimeTable`` -- an Eratosthenes sieve carrying a smallest-prime-factor
  table plus lazily built batch arrays (Mobius, Euler phi, von Mangoldt).
* ``TabulatedFunction`` -- an arithmetic function materialised on [1..M],
  either exact-integer valued (Python ints, never floats) or real valued
  (float64).

Naturals start at 1 throughout; slot 0 of every value table is unused and
kept at zero.  Empty products are 1, so kappa(1) = 1 and odd_part(1) = 1.
The 2-adic splitting (``v2``/``odd_part``) accepts arbitrary-precision
input because huge shifts (products of many primes) exceed 64 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt

import numpy as np

EXACT = "ExactInt"
REAL = "Real"

# |value| <= SUPPORT_EPS counts as zero when deciding supports of
# real-valued tables (log-magnitude entries; true zeros arise only from
# exact cancellation at desk scale).
SUPPORT_EPS = 1e-12


# ----------------------------------------------------------------------
# prime sieve
# ----------------------------------------------------------------------

@dataclass(eq=False)
class PrimeTable:
    """Primality and smallest-prime-factor tables up to ``limit``.

    Immutable after construction; concurrent reads are safe.  The derived
    value arrays are built lazily, once, on first access.
    """

    limit: int
    is_prime: np.ndarray               # bool, len limit+1
    smallest_prime_factor: np.ndarray  # int64, len limit+1, spf[1] = 1
    primes: np.ndarray                 # int64, ascending

    @cached_property
    def mobius_values(self) -> np.ndarray:
        """mu(n) for n = 0..limit as int64 (mu[0] = 0)."""
        mu = np.ones(self.limit + 1, dtype=np.int64)
        mu[0] = 0
        for p in self.primes:
            mu[p::p] *= -1
            sq = int(p) * int(p)
            if sq <= self.limit:
                mu[sq::sq] = 0
        return mu

    @cached_property
    def phi_values(self) -> np.ndarray:
        """Euler phi(n) for n = 0..limit as int64 (phi[0] = 0)."""
        phi = np.arange(self.limit + 1, dtype=np.int64)
        for p in self.primes:
            phi[p::p] -= phi[p::p] // p
        return phi

    @cached_property
    def von_mangoldt_values(self) -> np.ndarray:
        """Lambda(n) for n = 0..limit: log p at prime powers p^k, else 0."""
        lam = np.zeros(self.limit + 1, dtype=np.float64)
        lam[self.primes] = np.log(self.primes.astype(np.float64))
        for p in self.primes[self.primes <= isqrt(self.limit)]:
            p = int(p)
            pk = p * p
            logp = math.log(p)
            while pk <= self.limit:
                lam[pk] = logp
                pk *= p
        return lam


def sieve_primes(M: int) -> PrimeTable:
    """Eratosthenes sieve with smallest-prime-factor table up to M >= 2."""
    if M < 2:
        raise ValueError(f"sieve limit must be >= 2, got {M}")
    is_prime = np.ones(M + 1, dtype=bool)
    is_prime[0:2] = False
    for i in range(2, isqrt(M) + 1):
        if is_prime[i]:
            is_prime[i * i:: i] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    spf = np.zeros(M + 1, dtype=np.int64)
    spf[1] = 1
    # descending order: the last write at each index is the smallest prime
    for p in primes[::-1]:
        spf[p::p] = p
    return PrimeTable(limit=M, is_prime=is_prime,
                      smallest_prime_factor=spf, primes=primes)


def _check_range(n: int, table: PrimeTable) -> None:
    if n < 1:
        raise ValueError(f"naturals start at 1, got {n}")
    if n > table.limit:
        raise ValueError(f"{n} exceeds sieve limit {table.limit}")


def factorize(n: int, table: PrimeTable) -> list[tuple[int, int]]:
    """Prime factorisation of n <= sieve limit as [(p, e), ...], ascending."""
    _check_range(n, table)
    spf = table.smallest_prime_factor
    out: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def mobius(n: int, table: PrimeTable) -> int:
    """mu(n): 0 if a square divides n, else (-1)^(number of prime factors)."""
    fac = factorize(n, table)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int, table: PrimeTable) -> int:
    """phi(n) = #{1 <= j <= n : gcd(j, n) = 1}, computed from the factorisation."""
    _check_range(n, table)
    res = n
    for p, _ in factorize(n, table):
        res = res // p * (p - 1)
    return res


def von_mangoldt(n: int, table: PrimeTable) -> float:
    """Lambda(n) = log p if n = p^k (k >= 1), else 0."""
    fac = factorize(n, table)
    if len(fac) == 1:
        return math.log(fac[0][0])
    return 0.0


def kappa(n: int, table: PrimeTable) -> int:
    """Square-free kernel: product of the distinct primes dividing n; kappa(1) = 1."""
    res = 1
    for p, _ in factorize(n, table):
        res *= p
    return res


def v2(n: int) -> int:
    """2-adic valuation; arbitrary-precision input."""
    if n < 1:
        raise ValueError(f"naturals start at 1, got {n}")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    """n / 2^v2(n); arbitrary-precision input."""
    if n < 1:
        raise ValueError(f"naturals start at 1, got {n}")
    return n >> v2(n)


def smooth_sifted_split(n: int, P: int, table: PrimeTable) -> tuple[int, int]:
    """Split n = s * r with all prime factors of s <= P and of r > P.

    For P = 2 the sifted part r is odd_part(n).
    """
    if P > table.limit:
        raise ValueError(f"{P} exceeds sieve limit {table.limit}")
    if P < 2 or not bool(table.is_prime[P]):
        raise ValueError(f"P must be prime, got {P}")
    _check_range(n, table)
    smooth = 1
    for p, e in factorize(n, table):
        if p <= P:
            smooth *= p ** e
    return smooth, n // smooth


# ----------------------------------------------------------------------
# table-free integer utilities (small arguments, trial division)
# ----------------------------------------------------------------------

def is_prime_int(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    for p in (2, 3):
        if n % p == 0:
            return n == p
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=1 << 16)
def mobius_int(n: int) -> int:
    """mu(n) by trial division (no sieve needed)."""
    if n < 1:
        raise ValueError(f"naturals start at 1, got {n}")
    if n == 1:
        return 1
    val = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            val = -val
            if n % p == 0:
                return 0
        p += 1 if p == 2 else 2
    if n > 1:
        val = -val
    return val


@lru_cache(maxsize=1 << 16)
def divisors_int(n: int) -> tuple[int, ...]:
    """Sorted divisors of n by trial division."""
    if n < 1:
        raise ValueError(f"naturals start at 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


# ----------------------------------------------------------------------
# tabulated arithmetic functions
# ----------------------------------------------------------------------

@dataclass(eq=False)
class TabulatedFunction:
    """An arithmetic function materialised on [1..limit].

    ``kind`` is EXACT (values: list of Python ints) or REAL (values:
    float64 ndarray).  Index 0 is unused and zero.
    """

    limit: int
    kind: str
    values: list | np.ndarray
    name: str = ""

    def __post_init__(self):
        if self.kind not in (EXACT, REAL):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == REAL:
            self.values = np.asarray(self.values, dtype=np.float64)
        if len(self.values) != self.limit + 1:
            raise ValueError("value table must have limit+1 entries")

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def __getitem__(self, n: int):
        if not 1 <= n <= self.limit:
            raise ValueError(f"argument {n} outside [1, {self.limit}]")
        v = self.values[n]
        return int(v) if self.kind == EXACT else float(v)

    def support(self):
        """Yield (n, value) for every nonzero entry, ascending n."""
        yield from self.support_upto(self.limit)

    def support_upto(self, N: int):
        if N > self.limit:
            raise ValueError(f"tabulated only to {self.limit}, need {N}")
        if self.kind == EXACT:
            vals = self.values
            for n in range(1, N + 1):
                v = vals[n]
                if v:
                    yield n, v
        else:
            idx = np.flatnonzero(self.values[: N + 1])
            vals = self.values
            for n in idx:
                yield int(n), float(vals[n])


def from_values(values, kind: str, name: str = "") -> TabulatedFunction:
    """Wrap a 0-indexed value table (slot 0 ignored) as a TabulatedFunction."""
    vals = list(values) if kind == EXACT else np.asarray(values, dtype=np.float64)
    if kind == EXACT:
        vals[0] = 0
    else:
        vals = vals.copy()
        vals[0] = 0.0
    return TabulatedFunction(limit=len(vals) - 1, kind=kind, values=vals, name=name)


def pointwise_product(F: TabulatedFunction, G: TabulatedFunction,
                      name: str = "") -> TabulatedFunction:
    """Pointwise product F(n)G(n) on the common range."""
    M = min(F.limit, G.limit)
    if F.is_exact and G.is_exact:
        vals = [0] * (M + 1)
        for n in range(1, M + 1):
            vals[n] = F.values[n] * G.values[n]
        return TabulatedFunction(M, EXACT, vals, name)
    fv = np.asarray(F.values[: M + 1], dtype=np.float64)
    gv = np.asarray(G.values[: M + 1], dtype=np.float64)
    return TabulatedFunction(M, REAL, fv * gv, name)


def tabulate_unit(M: int) -> TabulatedFunction:
    return TabulatedFunction(M, EXACT, [0] + [1] * M, "unit")


def tabulate_identity(M: int) -> TabulatedFunction:
    return TabulatedFunction(M, EXACT, list(range(M + 1)), "identity")


def tabulate_mobius(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    vals = [int(v) for v in table.mobius_values[: M + 1]]
    return TabulatedFunction(M, EXACT, vals, "mobius")


def tabulate_mu_squared(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    vals = [int(v) ** 2 for v in table.mobius_values[: M + 1]]
    return TabulatedFunction(M, EXACT, vals, "mu_squared")


def tabulate_phi(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    vals = [int(v) for v in table.phi_values[: M + 1]]
    return TabulatedFunction(M, EXACT, vals, "phi")


def tabulate_kappa(M: int, table: PrimeTable) -> TabulatedFunction:
    vals = [0] * (M + 1)
    for n in range(1, M + 1):
        vals[n] = kappa(n, table)
    return TabulatedFunction(M, EXACT, vals, "kappa")


def tabulate_von_mangoldt(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    return TabulatedFunction(M, REAL, table.von_mangoldt_values[: M + 1].copy(),
                             "lambda")


def tabulate_odd_indicator(M: int) -> TabulatedFunction:
    return TabulatedFunction(M, EXACT, [n % 2 for n in range(M + 1)], "odd")


def tabulate_prime_indicator(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    vals = [int(b) for b in table.is_prime[: M + 1]]
    return TabulatedFunction(M, EXACT, vals, "primes")


def tabulate_odd_prime_indicator(M: int, table: PrimeTable) -> TabulatedFunction:
    _check_range(M, table)
    vals = [int(table.is_prime[n]) if n % 2 else 0 for n in range(M + 1)]
    return TabulatedFunction(M, EXACT, vals, "odd_primes")


def tabulate_square_indicator(M: int) -> TabulatedFunction:
    vals = [0] * (M + 1)
    k = 1
    while k * k <= M:
        vals[k * k] = 1
        k += 1
    return TabulatedFunction(M, EXACT, vals, "squares")


def tabulate_odd_prime_log(M: int, table: PrimeTable) -> TabulatedFunction:
    """mu^2 * 1_odd * Lambda: log p at odd primes p <= M, zero elsewhere.

    Prime powers p^k (k >= 2) drop out through the square-free factor.
    """
    _check_range(M, table)
    vals = np.zeros(M + 1, dtype=np.float64)
    pr = table.primes[(table.primes > 2) & (table.primes <= M)]
    vals[pr] = np.log(pr.astype(np.float64))
    return TabulatedFunction(M, REAL, vals, "odd_primes_log")


def tabulate_indicator(members, M: int, name: str = "indicator") -> TabulatedFunction:
    """Indicator of an explicit set or predicate, restricted to [1..M]."""
    pred = (members.__contains__ if isinstance(members, (set, frozenset))
            else members)
    vals = [0] * (M + 1)
    for n in range(1, M + 1):
        vals[n] = 1 if pred(n) else 0
    return TabulatedFunction(M, EXACT, vals, name)


_NEEDS_TABLE = {"mobius", "mu_squared", "phi", "kappa", "lambda",
                "primes", "odd_primes", "odd_primes_log"}

_TABULATORS = {
    "unit": lambda M, t: tabulate_unit(M),
    "identity": lambda M, t: tabulate_identity(M),
    "mobius": tabulate_mobius,
    "mu_squared": tabulate_mu_squared,
    "phi": tabulate_phi,
    "kappa": tabulate_kappa,
    "lambda": tabulate_von_mangoldt,
    "odd": lambda M, t: tabulate_odd_indicator(M),
    "primes": tabulate_prime_indicator,
    "odd_primes": tabulate_odd_prime_indicator,
    "squares": lambda M, t: tabulate_square_indicator(M),
    "odd_primes_log": tabulate_odd_prime_log,
}


def tabulated_function_names() -> list[str]:
    return sorted(_TABULATORS)


def tabulate(name: str, M: int, table: PrimeTable | None = None) -> TabulatedFunction:
    """Build a named arithmetic function on [1..M]; sieves if required."""
    if name not in _TABULATORS:
        raise ValueError(f"unknown function name {name!r}; "
                         f"known: {', '.join(tabulated_function_names())}")
    if table is None and name in _NEEDS_TABLE:
        table = sieve_primes(max(M, 2))
    builder = _TABULATORS[name]
    return builder(M, table) if name in _NEEDS_TABLE else builder(M, None)
