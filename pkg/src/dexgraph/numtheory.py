"""Modular arithmetic, primality, totients, and generator selection.

Everything here is deterministic and exact for inputs below 2**64.  The
generator enumeration implements the classification of which residues g
produce m-ary graphs of x -> g^x mod p: writing g = r^a for a primitive
root r, the m-ary generators are exactly the g with gcd(a, p-1) = m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witness set, valid for every n < 3.3e24
# (covers the full 64-bit range with room to spare).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)

_TRIAL_LIMIT = 10 ** 6


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus with canonical residues in [0, modulus)."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if not 0 <= base < modulus:
        raise ValueError(f"base {base} outside [0, {modulus})")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, modulus)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 0:
        raise ValueError("is_prime expects n >= 0")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_primes(start: int, count: int) -> list[int]:
    """The `count` smallest primes >= start, in ascending order."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    n = max(start, 2)
    if n <= 2:
        out.append(2)
        n = 3
    elif n % 2 == 0:
        n += 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 2
    return out[:count]


def _pollard_brent(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    # Deterministic parameter sweep keeps factorization reproducible.
    for c in range(1, 50):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to factor {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as sorted (prime, exponent) pairs.

    Trial division up to 10**6 first, then Pollard-Brent on whatever
    cofactor is left.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    # wheel mod 30 over candidates coprime to 2,3,5
    steps = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d <= _TRIAL_LIMIT and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += steps[i]
        i = (i + 1) % 8
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        g = _pollard_brent(m)
        stack.append(g)
        stack.append(m // g)
    return sorted(factors.items())


def euler_phi(n: int) -> int:
    """Euler totient, computed from the factorization of n."""
    if n < 1:
        raise ValueError("euler_phi expects n >= 1")
    phi = 1
    for p, e in factorize(n):
        phi *= (p - 1) * p ** (e - 1)
    return phi


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime p together with the factorization of p - 1."""

    p: int
    factorization_of_p_minus_1: tuple[tuple[int, int], ...]

    @classmethod
    def from_int(cls, p: int) -> "PrimeModulus":
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        return cls(p, tuple(factorize(p - 1)))

    def __post_init__(self) -> None:
        prod = 1
        for q, e in self.factorization_of_p_minus_1:
            prod *= q ** e
        if prod != self.p - 1:
            raise ValueError("factorization does not multiply back to p - 1")


@dataclass(frozen=True)
class GeneratorSet:
    """All residues g in [1, p-1] whose graph x -> g^x mod p is m-ary."""

    p: int
    m: int
    generators: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, g: int) -> bool:
        return g in self.generators


def _as_modulus(p: int | PrimeModulus) -> PrimeModulus:
    if isinstance(p, PrimeModulus):
        return p
    return PrimeModulus.from_int(p)


def find_primitive_root(p: int | PrimeModulus) -> int:
    """Smallest residue of multiplicative order p - 1 modulo p."""
    pm = _as_modulus(p)
    n = pm.p - 1
    prime_factors = [q for q, _ in pm.factorization_of_p_minus_1]
    for r in range(2, pm.p):
        if all(pow(r, n // q, pm.p) != 1 for q in prime_factors):
            return r
    raise ArithmeticError(f"no primitive root found for {pm.p}")  # unreachable for prime p


def m_ary_generator_pairs(p: int | PrimeModulus, m: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(primitive root r, ((g, a), ...)) with g = r^a mod p and gcd(a, p-1) = m.

    Runs in O(p) by walking a = 1..p-1 with one modular multiplication per
    step instead of testing every candidate g separately.  Pairs are sorted
    by g.
    """
    pm = _as_modulus(p)
    n = pm.p - 1
    if m < 1 or n % m != 0:
        raise ValueError(f"m = {m} does not divide p - 1 = {n}")
    r = find_primitive_root(pm)
    pairs = []
    cur = 1
    for a in range(1, n + 1):
        cur = cur * r % pm.p
        if math.gcd(a, n) == m:
            pairs.append((cur, a))
    return r, tuple(sorted(pairs))


def m_ary_generators(p: int | PrimeModulus, m: int) -> GeneratorSet:
    """The residues g whose graph is m-ary: g = r^a with gcd(a, p-1) = m."""
    pm = _as_modulus(p)
    _, pairs = m_ary_generator_pairs(pm, m)
    return GeneratorSet(pm.p, m, tuple(g for g, _ in pairs))
