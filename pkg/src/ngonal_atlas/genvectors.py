"""Generating vectors of a cyclic group C = Z_n and the induced K-action on them.

A K-fixed generating vector for the kernel signature is what it takes for the
cyclic action to extend to the normalizer. Vectors are tuples of residues mod n.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import _kernels
from .cyclicgrp import harvey_failures, prime_factors, units
from .errors import DomainError
from .kmaps import FactoredSignature, kernel_signature, order_of_C
from .permcore import Permutation, sphere_group_realization


@dataclass(frozen=True, order=True)
class GeneratingVectorC:
    n: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) % self.n for x in self.entries))

    def orders(self):
        return tuple(self.n // math.gcd(self.n, z) for z in self.entries)

    def is_valid(self, periods):
        n = self.n
        return (list(self.orders()) == [int(p) for p in periods]
                and sum(self.entries) % n == 0
                and math.gcd(n, *self.entries) == 1)

    def scaled(self, a):
        return GeneratingVectorC(self.n, tuple(a * z for z in self.entries))

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + f") mod {self.n}"


class VectorStream:
    """Deterministic (lexicographic) sequence of vectors with a truncation flag."""

    def __init__(self, n, vectors, truncated=False, diagnostic=""):
        self.n = n
        self.vectors = vectors
        self.truncated = truncated
        self.diagnostic = diagnostic

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __bool__(self):
        return bool(self.vectors)


def residues_of_order(n, m):
    return [r for r in range(n) if n // math.gcd(n, r) == m]


def enumerate_X(n, periods, cap=None, use_numba=None) -> VectorStream:
    """All (z_1..z_r) with o(z_i) = periods[i], sum 0 mod n, generating Z_n."""
    periods = [int(p) for p in periods]
    if n < 1:
        raise DomainError("n must be positive")
    fails = harvey_failures(n, periods)
    diag = ("harvey: " + ", ".join(fails)) if fails else ""
    if any(n % p for p in periods):
        return VectorStream(n, [], False, diag or "a period does not divide n")
    choices = [residues_of_order(n, p) for p in periods]
    arr, trunc = _kernels.zero_sum_tuples(n, choices, cap=cap or 10**7, use_numba=use_numba)
    out = [GeneratingVectorC(n, tuple(row)) for row in arr.tolist()
           if math.gcd(n, *row) == 1]
    return VectorStream(n, out, trunc, diag)


def vector_exists(n, periods, use_numba=None):
    """Is X non-empty? Zero-sum reachability plus generation (lcm of periods = n)."""
    periods = [int(p) for p in periods]
    if any(n % p for p in periods) or math.lcm(1, *periods) != n:
        return False
    choices = [residues_of_order(n, p) for p in periods]
    return _kernels.zero_sum_reachable(n, choices, use_numba=use_numba)


def canonical_rep(v: GeneratingVectorC):
    return min(v.scaled(a) for a in units(v.n)) if v.n > 1 else v


def aut_orbit_reps(X, n):
    """One lexicographically least representative per Aut(Z_n)-orbit, in first-seen order."""
    seen, out = set(), []
    for v in X:
        rep = canonical_rep(v)
        if rep not in seen:
            seen.add(rep)
            out.append(rep)
    return out


# -------------------------------------------------------------- K-actions

@dataclass
class Orbit:
    kind: str        # "singular" or "regular"
    slot: int        # K-generator slot or remaining-period position
    period: int
    indices: tuple

    def as_dict(self):
        return {"kind": self.kind, "slot": self.slot, "period": self.period,
                "indices": [i + 1 for i in self.indices]}


@dataclass
class KActionData:
    K: object
    n: int
    gens: list                      # standard generators of K (permutations)
    elements: list                  # all elements of K
    omega_gens: tuple               # multiplier of each standard generator
    omega: dict                     # element -> multiplier
    q: dict                         # element -> Permutation on the index set
    periods: tuple
    orbits: list = field(default_factory=list)

    @property
    def r(self):
        return len(self.periods)

    def omega_of(self, g):
        return self.omega[g]

    def q_of(self, g):
        return self.q[g]

    def is_trivial_omega(self):
        return all(a % self.n == 1 % self.n for a in self.omega_gens)

    def omega_components(self):
        """Multiplier of each generator reduced mod each prime-power factor of n."""
        return {p ** e: tuple(a % p ** e for a in self.omega_gens)
                for p, e in sorted(prime_factors(self.n).items())}

    def as_dict(self):
        return {"K": self.K.label, "n": self.n, "omega": list(self.omega_gens),
                "orbit_structure": [o.as_dict() for o in self.orbits]}


def index_layout(f: FactoredSignature):
    """Periods of the kernel signature with the orbit each index belongs to.

    Singular orbits come first, one per slot with b_i > 1, then one regular orbit per
    remaining period; indices inside an orbit are contiguous.
    """
    if not f.K.is_concrete or any(not p.is_finite for p in f.base().periods):
        raise DomainError("K-actions need a concrete factored signature")
    order = f.K.order
    periods, orbits = [], []
    for i, (a, b) in enumerate(f.slots):
        if b.value == 1:
            continue
        size = order // a.value
        orbits.append(Orbit("singular", i, b.value, tuple(range(len(periods), len(periods) + size))))
        periods += [b.value] * size
    for j, m in enumerate(f.rest):
        orbits.append(Orbit("regular", j, m.value, tuple(range(len(periods), len(periods) + order))))
        periods += [m.value] * order
    return tuple(periods), orbits


def _branch_action(f, G, gens, orbits, r):
    """q_g for every g: right cosets of <x_i> on singular orbits, right regular action otherwise."""
    elements = G.elements
    images = {g: [0] * r for g in elements}
    for orb in orbits:
        if orb.kind == "singular":
            H = G.subgroup([gens[orb.slot]])
            cosets, reps = G.right_cosets(H)
            where = {}
            for c, cs in enumerate(cosets):
                for x in cs:
                    where[x] = c
            for g in elements:
                for c, rep in enumerate(reps):
                    images[g][orb.indices[c]] = orb.indices[where[rep * g]]
        else:
            pos = {x: i for i, x in enumerate(elements)}
            for g in elements:
                for i, y in enumerate(elements):
                    images[g][orb.indices[i]] = orb.indices[pos[y * g]]
    return {g: Permutation(img) for g, img in images.items()}


def _omega_table(G, gens, mults, n):
    """Extend generator multipliers to every element; None if not a homomorphism."""
    table = {G.identity: 1 % n}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, a in zip(gens, mults):
                y = x * g
                val = table[x] * a % n
                if y in table:
                    if table[y] != val:
                        return None
                else:
                    table[y] = val
                    nxt.append(y)
        frontier = nxt
    return table


def omega_candidates(K, n):
    """Generator multipliers (u_1..u_e) giving homomorphisms K -> Aut(Z_n), trivial first."""
    G, gens = sphere_group_realization(K)
    orders = [g.order for g in gens]
    us = units(n) if n > 1 else [0]
    out = []
    for combo in itertools.product(*[[u for u in us if pow(u, o, n) == 1 % n] for o in orders]):
        if _omega_table(G, gens, combo, n) is not None:
            out.append(combo)
    out.sort(key=lambda c: tuple((u - 1) % n for u in c))
    return out


def enumerate_k_actions(f: FactoredSignature, n=None):
    """Every (omega, q) for a concrete factorization; q is fixed, omega varies."""
    if n is None:
        n = order_of_C(kernel_signature(f))
    if n < 2:
        raise DomainError("C must be non-trivial")
    G, gens = sphere_group_realization(f.K)
    periods, orbits = index_layout(f)
    q = _branch_action(f, G, gens, orbits, len(periods))
    out = []
    for combo in omega_candidates(f.K, n):
        table = _omega_table(G, gens, combo, n)
        out.append(KActionData(f.K, n, gens, G.elements, tuple(combo), table, q, periods, orbits))
    return out


def k_apply(action: KActionData, g, v: GeneratingVectorC) -> GeneratingVectorC:
    """g.(z_1..z_r) = (omega_{g^-1}(z_{q_g(1)}), ...)."""
    if len(v) != action.r:
        raise DomainError("vector length does not match the index set")
    qg = action.q[g]
    w = action.omega[g.inverse()]
    return GeneratingVectorC(v.n, tuple(w * v.entries[qg.img[i]] for i in range(action.r)))


def is_fixed(action, v):
    return all(k_apply(action, g, v) == v for g in action.gens)


def fixed_vectors(action: KActionData, n=None, periods=None):
    """K-fixed vectors built orbit by orbit.

    Pick the first entry of each q-orbit among elements of the right order that are
    fixed by omega on the stabilizer, propagate z_{q_g(i)} = omega_g(z_i) along the
    orbit, and keep the combinations whose orbit sums add to 0 and generate Z_n.
    """
    n = action.n if n is None else n
    periods = action.periods if periods is None else tuple(int(p) for p in periods)
    if tuple(periods) != tuple(action.periods):
        raise DomainError("periods do not match the K-action index set")
    per_orbit = []
    for orb in action.orbits:
        base = orb.indices[0]
        stab = [g for g in action.elements if action.q[g].img[base] == base]
        reach = {}
        for g in action.elements:
            reach.setdefault(action.q[g].img[base], g)
        options = []
        for z in residues_of_order(n, orb.period):
            if any(action.omega[s] * z % n != z for s in stab):
                continue
            vals = {i: action.omega[g] * z % n for i, g in reach.items()}
            options.append((sum(vals.values()) % n, vals))
        if not options:
            return []
        per_orbit.append(options)
    out = []
    for combo in itertools.product(*per_orbit):
        if sum(s for s, _ in combo) % n:
            continue
        entries = [0] * action.r
        for _, vals in combo:
            for i, z in vals.items():
                entries[i] = z
        if math.gcd(n, *entries) == 1:
            out.append(GeneratingVectorC(n, tuple(entries)))
    out.sort()
    return out


def fixed_vectors_bruteforce(action: KActionData, cap=None):
    """Oracle: filter all of X by fixedness under the generators of K."""
    X = enumerate_X(action.n, action.periods, cap=cap)
    return sorted(v for v in X if is_fixed(action, v))


@dataclass
class ExtensionVerdict:
    exists: bool
    witnesses: list            # (KActionData, orbit representative)
    reason: str = ""
    n: int = 0

    def as_dict(self):
        return {"exists": self.exists, "n": self.n, "reason": self.reason,
                "witnesses": [dict(a.as_dict(), vector=list(v.entries)) for a, v in self.witnesses]}


def normalizer_extension_exists(f: FactoredSignature, n=None):
    """Does some (omega, q) fix a generating vector? Witnesses are Aut(C)-orbit reps."""
    kern = kernel_signature(f)
    if n is None:
        n = order_of_C(kern)
    fails = harvey_failures(n, kern.values())
    if fails:
        return ExtensionVerdict(False, [], "no cyclic action at all: " + ", ".join(fails), n)
    witnesses = []
    for act in enumerate_k_actions(f, n):
        for rep in aut_orbit_reps(fixed_vectors(act), n):
            witnesses.append((act, rep))
    reason = "" if witnesses else "no K-fixed generating vector for any omega"
    return ExtensionVerdict(bool(witnesses), witnesses, reason, n)
