"""Arithmetic in Z_n: units, involutions with fixed subgroups, Harvey's conditions."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .sigcore import lcm


@dataclass(frozen=True)
class CyclicElement:
    n: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.n)

    @property
    def order(self):
        return self.n // math.gcd(self.n, self.r)

    def __add__(self, other):
        return CyclicElement(self.n, self.r + other.r)

    def __neg__(self):
        return CyclicElement(self.n, -self.r)


@dataclass(frozen=True)
class CyclicAutomorphism:
    n: int
    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n if self.n > 1 else 0)
        if self.n > 1 and math.gcd(self.a, self.n) != 1:
            raise ValueError(f"{self.a} is not a unit mod {self.n}")

    def __call__(self, x):
        if isinstance(x, CyclicElement):
            return CyclicElement(self.n, self.a * x.r)
        return (self.a * x) % self.n

    def __mul__(self, other):
        return CyclicAutomorphism(self.n, self.a * other.a)

    def inverse(self):
        return CyclicAutomorphism(self.n, pow(self.a, -1, self.n) if self.n > 1 else 0)

    @property
    def order(self):
        if self.n == 1:
            return 1
        k, x = 1, self.a
        while x != 1:
            x = x * self.a % self.n
            k += 1
        return k


def units(n):
    if n == 1:
        return [0]
    return [a for a in range(1, n) if math.gcd(a, n) == 1]


def unit_group(n):
    return [CyclicAutomorphism(n, a) for a in units(n)]


def prime_factors(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants(orders):
    """Invariant factors of a finite abelian group from the list of its element orders."""
    size = len(orders)
    if size == 1:
        return ()
    per_prime = []
    for p in prime_factors(size):
        # number of cyclic p-factors of exponent >= j is log_p(N_j / N_{j-1})
        counts, j = [1], 1
        while True:
            c = sum(1 for o in orders if (p ** j) % o == 0)
            counts.append(c)
            if c == counts[-2] and j > 1:
                break
            j += 1
        ge = []
        for j in range(1, len(counts)):
            r, q = 0, counts[j] // counts[j - 1]
            while q > 1:
                q //= p
                r += 1
            ge.append(r)
        exps = []
        for j, r in enumerate(ge):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            exps += [j + 1] * (r - nxt)
        per_prime.append((p, sorted(exps, reverse=True)))
    width = max(len(e) for _, e in per_prime)
    factors = [1] * width
    for p, exps in per_prime:
        for i, e in enumerate(exps):
            factors[i] *= p ** e
    return tuple(sorted(factors))


def unit_group_invariants(n):
    return abelian_invariants([CyclicAutomorphism(n, a).order for a in units(n)])


def involutions_with_fixed(n):
    """All a with a^2 = 1 mod n, each with the generator g of its fixed subgroup gZ_n.

    The fixed subgroup {x : a x = x} is cyclic, generated by n / gcd(a - 1, n).
    A generator of 0 means the trivial subgroup.
    """
    out = []
    for a in units(n):
        if a * a % n == 1 % n:
            g = n // math.gcd(a - 1, n)
            out.append((a, g % n))
    return out


def two_part(n):
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def harvey_failures(n, periods):
    """Which of the four conditions fail (empty list means admissible)."""
    ps = [p for p in periods if p != 1]
    bad = []
    if not ps or lcm(*ps) != n:
        bad.append("lcm")
    else:
        for i in range(len(ps)):
            if lcm(*(ps[:i] + ps[i + 1:])) != n:
                bad.append("lcm-drop-one")
                break
    if len(ps) < 3:
        bad.append("too-few-periods")
    if n % 2 == 0:
        t = two_part(n)
        if sum(1 for p in ps if p % t == 0) % 2:
            bad.append("parity")
    return bad


def harvey_admissible(n, periods):
    return not harvey_failures(n, periods)
