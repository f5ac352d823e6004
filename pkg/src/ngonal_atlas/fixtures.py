"""Concrete triples C < N <= A used as worked examples and test fixtures."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError
from .permcore import (FiniteGroup, Permutation, SemidirectProduct, normalizer, perm_group,
                       verify_generating_vector)
from .sigcore import Signature


@dataclass
class Triple:
    name: str
    A: FiniteGroup
    N: FiniteGroup
    C: FiniteGroup
    vector_A: tuple
    signature_A: Signature
    vector_N: tuple = None
    signature_N: Signature = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.C.order

    def check(self):
        if not verify_generating_vector(self.A, self.vector_A, self.signature_A):
            raise DomainError(f"{self.name}: bad generating vector for A")
        if self.vector_N is not None and not verify_generating_vector(self.N, self.vector_N, self.signature_N):
            raise DomainError(f"{self.name}: bad generating vector for N")
        if not (self.C.is_subgroup_of(self.N) and self.N.is_subgroup_of(self.A) and self.C.is_normal_in(self.N)):
            raise DomainError(f"{self.name}: groups are not nested as C <| N <= A")
        if normalizer(self.A, self.C).order != self.N.order:
            raise DomainError(f"{self.name}: N is not the normalizer of C")
        return self


def first_vector(G: FiniteGroup, orders):
    """Lexicographically first (x, y, (xy)^-1) with the given orders generating G."""
    o1, o2, o3 = orders
    els = sorted(G.elements, key=lambda x: x.key())
    xs = [x for x in els if G.order_of(x) == o1]
    ys = [y for y in els if G.order_of(y) == o2]
    for x, y in itertools.product(xs, ys):
        z = (x * y).inverse()
        if G.order_of(z) == o3 and FiniteGroup([x, y], G.identity).order == G.order:
            return (x, y, z)
    raise DomainError(f"no generating vector of type {orders}")


def _projective_line(p):
    # points 0..p-1 and infinity = p
    inf = p

    def mobius(a, b, c, d):
        img = []
        for z in range(p + 1):
            if z == inf:
                img.append(inf if c == 0 else a * pow(c, -1, p) % p)
                continue
            den = (c * z + d) % p
            img.append(inf if den == 0 else (a * z + b) * pow(den, -1, p) % p)
        return Permutation(img)

    return mobius


@lru_cache(maxsize=None)
def klein() -> Triple:
    """PSL(2,7) acting on the projective line over F_7, C of order 7, N of order 21."""
    mob = _projective_line(7)
    shift = mob(1, 1, 0, 1)
    flip = mob(0, -1 % 7, 1, 0)
    A = perm_group([shift, flip], 8)
    C = A.subgroup([shift])
    N = normalizer(A, C)
    vec = first_vector(A, (2, 3, 7))
    return Triple("klein", A, N, C, vec, Signature([2, 3, 7])).check()


@lru_cache(maxsize=None)
def bring() -> Triple:
    """Sym(5) with a (2,4,5) vector, C generated by a 5-cycle, N of order 20."""
    A = perm_group(["(1,2)", "(1,2,3,4,5)"], 5)
    C = A.subgroup([Permutation.parse("(1,2,3,4,5)", 5)])
    N = normalizer(A, C)
    vec = first_vector(A, (2, 4, 5))
    return Triple("bring", A, N, C, vec, Signature([2, 4, 5])).check()


# twisting action of Sym(3) on Z_n^2 on the generators (1,2) and (1,3)
_SWAP = ((0, 1), (1, 0))
_SHEAR = ((-1, 0), (-1, 1))


@lru_cache(maxsize=None)
def fermat(n) -> Triple:
    """Sym(3) x| Z_n^2 with C the diagonal and N = <(1,2)> x| Z_n^2 of order 2n^2."""
    if n < 4:
        raise DomainError("the Fermat family needs n >= 4")
    s12 = Permutation.parse("(1,2)", 3)
    s13 = Permutation.parse("(1,3)", 3)
    sd = SemidirectProduct([s12, s13], [_SWAP, _SHEAR], n)
    e1 = sd.element(None, (1, 0))
    e2 = sd.element(None, (0, 1))
    A = FiniteGroup([sd.element(s12), sd.element(s13), e1, e2], sd.identity)
    C = A.subgroup([sd.element(None, (1, 1))])
    N = A.subgroup([sd.element(s12), e1, e2])

    g = sd.element(s12)
    h = e1
    vec_N = (g, g * h, h.inverse())
    g1, g2 = sd.element(s13), sd.element(s12)
    vec_A = (g1, g1 * g2 * h.inverse(), h * g2)
    return Triple(f"fermat:{n}", A, N, C, vec_A, Signature([2, 3, 2 * n]),
                  vec_N, Signature([2, 2 * n, n]), {"sd": sd}).check()


def by_name(name: str) -> Triple:
    if name == "klein":
        return klein()
    if name == "bring":
        return bring()
    if name.startswith("fermat:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad fixture {name!r}") from None
        return fermat(n)
    raise DomainError(f"unknown fixture {name!r}; use klein, bring or fermat:<n>")
