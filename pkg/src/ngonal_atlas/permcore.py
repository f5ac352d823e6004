"""Permutations and small finite groups given by generators.

Conventions: points act on the right, so ``p * q`` means "first p, then q",
and ``i ^ (p * q) = (i ^ p) ^ q``. This matches cycle-notation examples where
a product of monodromy permutations is read left to right.
"""
from __future__ import annotations

import math
import re
from collections import deque

from .errors import DomainError, ResourceBound
from .sigcore import sig as _sig

DEFAULT_CAP = 10**6


class Permutation:
    __slots__ = ("img",)

    def __init__(self, img):
        img = tuple(img)
        if sorted(img) != list(range(len(img))):
            raise DomainError(f"not a permutation: {img}")
        object.__setattr__(self, "img", img)

    def __setattr__(self, k, v):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, m):
        return cls(range(m))

    @classmethod
    def from_cycles(cls, cycles, m):
        img = list(range(m))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(img)

    @classmethod
    def parse(cls, text, m=None):
        cycles = [[int(x) for x in c.split(",") if x.strip()]
                  for c in re.findall(r"\(([^()]*)\)", text)]
        top = max([max(c) for c in cycles if c] + [0])
        if m is None:
            m = top
        if top > m:
            raise DomainError(f"point {top} out of range for degree {m}")
        return cls.from_cycles([c for c in cycles if c], m)

    @property
    def degree(self):
        return len(self.img)

    def __call__(self, i):
        return self.img[i]

    def __mul__(self, other):
        o = other.img
        return Permutation(o[i] for i in self.img)

    def inverse(self):
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __lt__(self, other):
        return self.img < other.img

    def key(self):
        return self.img

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.img))

    def cycles(self, include_fixed=True):
        seen = [False] * len(self.img)
        out = []
        for i in range(len(self.img)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.img[j]
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out

    @property
    def order(self):
        return math.lcm(*[len(c) for c in self.cycles()]) if self.img else 1

    def __str__(self):
        cyc = self.cycles(include_fixed=False)
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self}, m={self.degree})"


def cycle_type(p: Permutation):
    """Cycle lengths, largest first, fixed points included."""
    return sorted((len(c) for c in p.cycles()), reverse=True)


def conjugate(x, g):
    """g^-1 x g, the right-action conjugate."""
    return g.inverse() * x * g


def product(elems, identity):
    out = identity
    for e in elems:
        out = out * e
    return out


def element_order(x, identity, cap=10**6):
    y, k = x, 1
    while y != identity:
        y = y * x
        k += 1
        if k > cap:
            raise ResourceBound("element order exceeds cap")
    return k


class FiniteGroup:
    """A finite group realised by closure of generators under ``*``.

    Elements must be hashable and provide ``*`` and ``inverse()``.
    """

    def __init__(self, gens, identity, cap=DEFAULT_CAP, elements=None):
        self.gens = list(gens)
        self.identity = identity
        if elements is None:
            elements = _closure(self.gens, identity, cap)
        self.elements = list(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def subgroup(self, gens):
        gens = list(gens)
        for g in gens:
            if g not in self:
                raise DomainError("subgroup generator not in the group")
        return FiniteGroup(gens, self.identity)

    def is_subgroup_of(self, other):
        return all(x in other for x in self.elements)

    def is_normal_in(self, G):
        return all(conjugate(h, g) in self for g in G.gens for h in self.gens)

    def order_of(self, x):
        return element_order(x, self.identity)

    def is_cyclic(self):
        n = self.order
        return any(self.order_of(x) == n for x in self.elements)

    def is_abelian(self):
        return all(a * b == b * a for a in self.gens for b in self.gens)

    def right_cosets(self, H):
        """Right cosets Hg, each as a frozenset, labelled BFS from H by generator order."""
        start = frozenset(H.elements)
        label = {start: 0}
        reps = [self.identity]
        cosets = [start]
        q = deque([0])
        while q:
            c = q.popleft()
            for g in self.gens:
                rep = reps[c] * g
                cs = frozenset(h * rep for h in H.elements)
                if cs not in label:
                    label[cs] = len(cosets)
                    cosets.append(cs)
                    reps.append(rep)
                    q.append(len(cosets) - 1)
        return cosets, reps


def _closure(gens, identity, cap):
    seen = {identity}
    order = [identity]
    q = deque([identity])
    while q:
        x = q.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                order.append(y)
                q.append(y)
                if len(order) > cap:
                    raise ResourceBound("group too large for desk scale")
    return order


def close(gens, identity=None, cap=DEFAULT_CAP) -> FiniteGroup:
    gens = list(gens)
    if identity is None:
        if not gens:
            raise DomainError("need an identity for an empty generator list")
        identity = gens[0] * gens[0].inverse()
    return FiniteGroup(gens, identity, cap)


def perm_group(gens, m=None, cap=DEFAULT_CAP):
    gens = [g if isinstance(g, Permutation) else Permutation.parse(g, m) for g in gens]
    deg = m if m is not None else gens[0].degree
    return FiniteGroup(gens, Permutation.identity(deg), cap)


def orbits_on_points(gens, m):
    seen = [False] * m
    out = []
    for s in range(m):
        if seen[s]:
            continue
        orb = [s]
        seen[s] = True
        q = deque([s])
        while q:
            i = q.popleft()
            for g in gens:
                j = g.img[i]
                if not seen[j]:
                    seen[j] = True
                    orb.append(j)
                    q.append(j)
        out.append(sorted(orb))
    return out


def is_transitive(G_or_gens, m=None):
    gens = G_or_gens.gens if isinstance(G_or_gens, FiniteGroup) else list(G_or_gens)
    if m is None:
        m = gens[0].degree if gens else 1
    if not gens:
        return m <= 1
    return len(orbits_on_points(gens, m)) == 1


class CosetAction:
    def __init__(self, G, H, cosets, reps):
        self.G, self.H = G, H
        self.cosets, self.reps = cosets, reps
        self._lookup = {}
        for i, c in enumerate(cosets):
            for x in c:
                self._lookup[x] = i

    @property
    def degree(self):
        return len(self.cosets)

    def image(self, x):
        """Permutation of the cosets induced by right multiplication by x."""
        return Permutation(self._lookup[self.reps[i] * x] for i in range(self.degree))

    def image_group(self):
        return perm_group([self.image(g) for g in self.G.gens], self.degree)

    def kernel(self):
        ident = Permutation.identity(self.degree)
        return FiniteGroup([x for x in self.G.elements if self.image(x) == ident] or [self.G.identity],
                           self.G.identity)


def coset_action(G: FiniteGroup, H: FiniteGroup):
    """Permutation action of G on right cosets of H, plus the core of H."""
    cosets, reps = G.right_cosets(H)
    act = CosetAction(G, H, cosets, reps)
    return act, core(G, H)


def core(G, H):
    members = set(H.elements)
    for g in G.elements:
        members &= {conjugate(h, g) for h in H.elements}
    elems = [x for x in H.elements if x in members]
    return FiniteGroup(elems, G.identity, elements=elems) if elems else FiniteGroup([], G.identity)


def normalizer(G, H):
    hs = set(H.elements)
    elems = [g for g in G.elements if all(conjugate(h, g) in hs for h in H.gens or [G.identity])]
    return FiniteGroup(elems, G.identity, elements=elems)


def intersection(A, B):
    bs = set(B.elements)
    elems = [x for x in A.elements if x in bs]
    return FiniteGroup(elems, A.identity, elements=elems)


def conjugate_subgroup(H, g):
    """g H g^-1 as a list-backed group."""
    ginv = g.inverse()
    elems = [g * h * ginv for h in H.elements]
    return FiniteGroup(elems, H.identity, elements=elems)


def verify_generating_vector(G: FiniteGroup, vec, signature) -> bool:
    s = _sig(signature)
    periods = [p.value for p in s.periods]
    vec = list(vec)
    # periods equal to 1 were dropped by the signature; drop trivial entries too
    nontriv = [v for v in vec if v != G.identity]
    if len(nontriv) != len(periods) or s.genus != 0:
        return False
    if any(v not in G for v in vec):
        return False
    if [G.order_of(v) for v in nontriv] != periods:
        return False
    if product(vec, G.identity) != G.identity:
        return False
    return FiniteGroup(vec, G.identity).order == G.order


# ------------------------------------------------------ structured groups

class SDElement:
    """Element (s, v) of an outer permutation group acting linearly on Z_n^k."""

    __slots__ = ("s", "v", "ctx")

    def __init__(self, s, v, ctx):
        self.s = s
        self.v = tuple(x % ctx.n for x in v)
        self.ctx = ctx

    def __mul__(self, other):
        ctx = self.ctx
        mw = ctx.act(self.s, other.v)
        return SDElement(self.s * other.s, [a + b for a, b in zip(self.v, mw)], ctx)

    def inverse(self):
        ctx = self.ctx
        sinv = self.s.inverse()
        w = ctx.act(sinv, self.v)
        return SDElement(sinv, [-x for x in w], ctx)

    def __eq__(self, other):
        return isinstance(other, SDElement) and self.s == other.s and self.v == other.v

    def __hash__(self):
        return hash((self.s.img, self.v))

    def __lt__(self, other):
        return (self.s.img, self.v) < (other.s.img, other.v)

    def key(self):
        return (self.s.img, self.v)

    def __str__(self):
        return f"({self.s}, {self.v})"

    __repr__ = __str__


class SemidirectProduct:
    """Outer permutation group P acting on Z_n^k through integer matrices.

    ``(s, v) * (t, w) = (s * t, v + M_s w)``; ``s -> M_s`` must be a homomorphism
    for the composition ``*``, which is checked when the table is built.
    """

    def __init__(self, outer_gens, matrices, n):
        self.n = n
        self.k = len(matrices[0])
        ident = Permutation.identity(outer_gens[0].degree)
        eye = tuple(tuple(int(i == j) for j in range(self.k)) for i in range(self.k))
        table = {ident: eye}
        q = deque([ident])
        gm = [self._mat(m) for m in matrices]
        while q:
            s = q.popleft()
            for g, M in zip(outer_gens, gm):
                t = s * g
                prod = self._mul_mat(table[s], M)
                if t in table:
                    if table[t] != prod:
                        raise DomainError("twisting action is not a homomorphism")
                else:
                    table[t] = prod
                    q.append(t)
        # a second pass over all pairs catches relations missed by BFS
        for s in table:
            for t in table:
                if table[s * t] != self._mul_mat(table[s], table[t]):
                    raise DomainError("twisting action is not a homomorphism")
        self.table = table
        self.outer_identity = ident

    def _mat(self, M):
        return tuple(tuple(x % self.n for x in row) for row in M)

    def _mul_mat(self, A, B):
        k = self.k
        return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(k)) % self.n for j in range(k))
                     for i in range(k))

    def act(self, s, v):
        M = self.table[s]
        return tuple(sum(M[i][j] * v[j] for j in range(self.k)) % self.n for i in range(self.k))

    def element(self, s=None, v=None):
        if s is None:
            s = self.outer_identity
        elif not isinstance(s, Permutation):
            s = Permutation.parse(s, self.outer_identity.degree)
        if v is None:
            v = (0,) * self.k
        return SDElement(s, v, self)

    @property
    def identity(self):
        return self.element()

    def group(self, gens=None, cap=DEFAULT_CAP):
        if gens is None:
            gens = [self.element(s) for s in self.table if not s.is_identity()]
            gens += [self.element(None, tuple(int(i == j) for j in range(self.k))) for i in range(self.k)]
        return FiniteGroup(gens, self.identity, cap)


def regular_permutation_rep(G: FiniteGroup):
    """Faithful permutation image of G on its own elements (right regular action)."""
    idx = {x: i for i, x in enumerate(G.elements)}

    def rep(x):
        return Permutation(idx[e * x] for e in G.elements)

    return rep


# ----------------------------------------------------- sphere groups concretely

def _dihedral_gens(k):
    # act on Z_k x {+1,-1}; x1: i -> -i, x2: i -> 1 - i, both flip the sign label
    m = 2 * k

    def affine(sign, shift):
        img = [0] * m
        for i in range(k):
            for half in (0, 1):
                j = (sign * i + shift) % k
                img[i + k * half] = j + k * (1 - half)
        return Permutation(img)

    x1, x2 = affine(-1, 0), affine(-1, 1)
    return [x1, x2, (x1 * x2).inverse()]


_FIXED_GENS = {
    "A4": (4, "(1,2)(3,4)", "(2,3,4)"),
    "S4": (4, "(1,2)", "(2,3,4)"),
    "A5": (5, "(1,2)(3,4)", "(1,3,5)"),
}


def sphere_group_realization(K):
    """(group, standard generators) for a concrete sphere group K.

    The generators have the orders of K's signature and multiply to the identity.
    """
    if not K.is_concrete:
        raise DomainError("realization needs a concrete k")
    if K.family == "C":
        x = Permutation([(i + 1) % K.k for i in range(K.k)])
        gens = [x, x.inverse()]
    elif K.family == "D":
        gens = _dihedral_gens(K.k)
    else:
        m, a, b = _FIXED_GENS[K.family]
        x1, x2 = Permutation.parse(a, m), Permutation.parse(b, m)
        gens = [x1, x2, (x1 * x2).inverse()]
    G = FiniteGroup(gens, Permutation.identity(gens[0].degree))
    want = [p.value for p in K.signature().periods]
    if [g.order for g in gens] != want or G.order != K.order:
        raise DomainError(f"bad realization of {K}")
    return G, gens


def derived_subgroup(G: FiniteGroup):
    comms = [a.inverse() * b.inverse() * a * b for a in G.elements for b in G.gens]
    return FiniteGroup(comms or [G.identity], G.identity)


def abelianization_invariants(G: FiniteGroup):
    """Invariant factors of G/[G,G], by brute force over cosets of the derived subgroup."""
    from .cyclicgrp import abelian_invariants
    D = derived_subgroup(G)
    Dset = set(D.elements)
    cosets, reps = G.right_cosets(D)
    orders = []
    for r in reps:
        k, x = 1, r
        while x not in Dset:
            x = x * r
            k += 1
        orders.append(k)
    return abelian_invariants(orders)
