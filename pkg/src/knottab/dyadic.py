"""Integer machinery: sieve, factorization, dyadic steps, jumping-over.

Dyadic step ``n`` is the interval ``(2^(n-1), 2^n]`` (step 1 is ``{2}``).
The jumping-over predicates decide which composite numbers get displaced
from their step into the next one; they drive the classification table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .knots import Atom, KnotExpr, Star, Times, TREFOIL


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending.  limit < 2 yields an empty list."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(2, limit + 1) if flags[i]]


class Sieve:
    """Immutable primality oracle up to a fixed limit."""

    def __init__(self, limit: int):
        self.limit = max(limit, 2)
        flags = bytearray([1]) * (self.limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, int(self.limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(range(p * p, self.limit + 1, p)))
        self._flags = bytes(flags)
        self._primes: Optional[list[int]] = None

    def is_prime(self, m: int) -> bool:
        if m < 0 or m > self.limit:
            raise ValueError(f"{m} outside sieve limit {self.limit}")
        return bool(self._flags[m])

    @property
    def primes(self) -> list[int]:
        if self._primes is None:
            self._primes = [i for i in range(2, self.limit + 1) if self._flags[i]]
        return self._primes

    def primes_in(self, lo: int, hi: int) -> list[int]:
        """Primes p with lo < p <= hi."""
        return [p for p in range(max(lo + 1, 2), hi + 1) if self._flags[p]]

    def largest_prime_in_step(self, k: int) -> int:
        for m in range(2**k, 2 ** (k - 1), -1):
            if m <= self.limit and self._flags[m]:
                return m
        raise ValueError(f"no prime in step {k}")


@lru_cache(maxsize=8)
def default_sieve(limit: int) -> Sieve:
    return Sieve(limit)


@dataclass(frozen=True)
class Factorization:
    """Prime -> multiplicity map together with the factored value."""

    value: int
    primes: tuple[tuple[int, int], ...]  # (prime, multiplicity), ascending

    def as_dict(self) -> dict[int, int]:
        return dict(self.primes)

    def multiset(self) -> list[int]:
        out = []
        for p, e in self.primes:
            out.extend([p] * e)
        return out


def factorize(m: int) -> Factorization:
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    value = m
    factors: list[tuple[int, int]] = []
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            factors.append((p, e))
    d = 5
    while d * d <= m:
        for p in (d, d + 2):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                factors.append((p, e))
        d += 6
    if m > 1:
        factors.append((m, 1))
    factors.sort()
    return Factorization(value, tuple(factors))


def step_of(m: int) -> int:
    """The unique n with 2^(n-1) < m <= 2^n."""
    if m < 2:
        raise ValueError(f"step is defined for m >= 2, got {m}")
    return (m - 1).bit_length()


def step_range(n: int) -> tuple[int, int]:
    """Inclusive bounds of step n."""
    if n < 1:
        raise ValueError(f"step index must be >= 1, got {n}")
    return 2 ** (n - 1) + 1 if n > 1 else 2, 2**n


def related_number(
    k: KnotExpr, prime_of: Mapping[Atom, int]
) -> Optional[int]:
    """The product of the primes assigned to a star-product's factors.

    The trefoil contributes 2.  Expressions containing a times node have no
    related number (returns None).  A non-trefoil atom missing from
    ``prime_of`` is an error naming the atom.
    """
    if isinstance(k, Times):
        return None
    if isinstance(k, Atom):
        base = k.id.achiral()
        if base == TREFOIL.id:
            return 2
        key = Atom(base)
        if key not in prime_of:
            raise KeyError(f"no prime assigned to atom {base.name}")
        return prime_of[key]
    product = 1
    for part in k.parts:
        sub = related_number(part, prime_of)
        if sub is None:
            return None
        product *= sub
    return product


def _unordered_splits(m: int) -> Iterable[tuple[int, int]]:
    """All ways to split m's prime multiset into two nonempty parts,
    as unordered divisor pairs (d, m // d) with 1 < d <= m // d."""
    d = 2
    while d * d <= m:
        if m % d == 0:
            yield d, m // d
        d += 1


def _split_jumps(p2: int, p3: int, n: int) -> bool:
    # For every decomposition 2^n = 2^n0 * 2^n1 with n0, n1 >= 2, exactly one
    # of the two parts must exceed its power (strict alternation; parts are
    # odd so equality cannot occur).
    for n0 in range(2, n - 1):
        n1 = n - n0
        if ((1 << n0) < p2) == ((1 << n1) < p3):
            return False
    return True


def jump_first_kind(m: int, n: int) -> bool:
    """Jumping over of the first kind.

    Applicable to odd composite m below 2^n; returns False (not an error)
    on inapplicable input.  True iff some split of m's prime multiset into
    parts with products (P2, P3) alternates against every 2^n0 * 2^n1
    decomposition with n0, n1 >= 2.
    """
    if m < 4 or m % 2 == 0 or m >= (1 << n):
        return False
    fac = factorize(m).primes
    if len(fac) == 1 and fac[0][1] == 1:
        return False  # prime
    return any(_split_jumps(p2, p3, n) for p2, p3 in _unordered_splits(m))


def jump_general_kind(m: int, n: int, sieve: Optional[Sieve] = None) -> bool:
    """Jumping over of the general kind.

    True iff m (composite, in step n) jumps by any of:

    1. the first kind;
    2. largest-prime substitution: with p the smallest prime factor of m and
       q the largest prime in p's step, q * (m/p) stays in step n and jumps
       by the first kind;
    3. doubling: m = 2*m' and m' jumps (general kind) in step n-1.
    """
    if m < 4 or n < 1 or step_of(m) != n:
        return False
    fac = factorize(m)
    if len(fac.primes) == 1 and fac.primes[0][1] == 1:
        return False  # prime
    if jump_first_kind(m, n):
        return True
    p = fac.primes[0][0]
    if p > 2:
        if sieve is None:
            sieve = default_sieve(1 << n)
        k = step_of(p)
        q = sieve.largest_prime_in_step(k)
        swapped = q * (m // p)
        if q != p and step_of(swapped) == n and jump_first_kind(swapped, n):
            return True
    if m % 2 == 0:
        return jump_general_kind(m // 2, n - 1, sieve)
    return False


def jumpers(n: int, sieve: Optional[Sieve] = None) -> list[int]:
    """Ascending list of all numbers in step n that jump (general kind)."""
    if n < 2:
        return []
    if sieve is None:
        sieve = default_sieve(1 << n)
    lo, hi = step_range(n)
    out = []
    for m in range(lo, hi + 1):
        if not sieve.is_prime(m) and jump_general_kind(m, n, sieve):
            out.append(m)
    return out


def room_constructions(m: int, n: int) -> set[int]:
    """Jumper candidates for step n+1 derived from a first-kind jumper.

    For each witnessing split (P2, P3), in both orientations, the derived
    candidates are (2*P2 - 1) * P3 and, when it stays below 2^(n+1),
    P2 * (2*P3 + 1).  Empty set when m is not of the first kind.
    """
    if not jump_first_kind(m, n):
        return set()
    bound = 1 << (n + 1)
    out: set[int] = set()
    for d, q in _unordered_splits(m):
        if not _split_jumps(d, q, n):
            continue
        for p2, p3 in ((d, q), (q, d)):
            out.add((2 * p2 - 1) * p3)
            grown = p2 * (2 * p3 + 1)
            if grown < bound:
                out.add(grown)
    return out
