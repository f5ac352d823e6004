"""Finite-index pairs of genus-0 groups Gamma < Delta through their monodromy.

Delta has canonical generators zeta_1..zeta_t with zeta_1*...*zeta_t = 1, and the
index-m subgroup is described by permutations pi_j = rho(zeta_j) of {0..m-1}
(points act on the right, so products read left to right).
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field

from . import _kernels
from .errors import DomainError, ResourceBound
from .permcore import (FiniteGroup, Permutation, coset_action, cycle_type, is_transitive,
                       perm_group)
from .sigcore import Period, Signature, as_period, mu, sig

DEFAULT_BOUND = 8
SEARCH_CAP = 3 * 10**6


# ------------------------------------------------------------ cycle vectors

@dataclass(frozen=True)
class CycleVector:
    parts: tuple          # one partition (descending tuple) per generator of Delta

    @property
    def m(self):
        return sum(self.parts[0]) if self.parts else 1

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join("[" + ",".join(map(str, p)) + "]" for p in self.parts) + ")"


def _partitions(m, allowed, largest=None):
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        if allowed(p):
            for rest in _partitions(m - p, allowed, p):
                yield (p,) + rest


def induced_from_part(period: Period, part: int):
    """Period induced by a cycle of length `part` under a generator of this period (None = none)."""
    if period.parabolic:
        return Period.inf()
    q = period.divide(Period(part))
    return None if q == Period(1) else q


def _pair_index(sub, sup):
    if sub.is_concrete and sup.is_concrete:
        return index_of(sub, sup)
    syms = sub.symbols() | sup.symbols()
    vals = set()
    for base in (101, 1009):
        env = {s: base + i for i, s in enumerate(sorted(syms))}
        vals.add(index_of(sub.evaluate(env), sup.evaluate(env)))
    if len(vals) != 1:
        raise DomainError("index depends on the parameters: not a family of pairs")
    return vals.pop()


def index_of(sub, sup):
    idx = mu(sub) / mu(sup)
    if idx.denominator != 1 or idx < 1:
        raise DomainError(f"index {idx} is not a positive integer")
    return int(idx)


def compatible_cycle_vectors(sub, sup, m=None):
    """All cycle vectors whose induced periods are exactly the periods of sub."""
    sub, sup = sig(sub), sig(sup)
    if sub.genus or sup.genus:
        raise DomainError("pairs must have genus 0")
    if m is None:
        m = _pair_index(sub, sup)
    target = Counter(sub.periods)
    per_gen = []
    for period in sup.periods:
        opts = []
        for part in _partitions(m, lambda p: period.parabolic or Period(p).divides(period)):
            ind = [induced_from_part(period, p) for p in part]
            opts.append((part, Counter(x for x in ind if x is not None)))
        per_gen.append(opts)
    out = []

    def rec(j, left, acc):
        if j == len(per_gen):
            if not +left:
                out.append(CycleVector(tuple(acc)))
            return
        for part, ind in per_gen[j]:
            if all(left[k] >= v for k, v in ind.items()):
                rec(j + 1, left - ind, acc + [part])

    rec(0, target, [])
    # Riemann-Hurwitz for a genus-0 cover of the sphere: total ramification 2m - 2
    for P in out:
        if sum(m - len(p) for p in P.parts) != 2 * m - 2:
            raise AssertionError("cycle vector violates Riemann-Hurwitz")
    return out


# --------------------------------------------------------- monodromy vectors

@dataclass(frozen=True)
class MonodromyVector:
    perms: tuple

    @property
    def m(self):
        return self.perms[0].degree if self.perms else 1

    def product(self):
        out = Permutation.identity(self.m)
        for p in self.perms:
            out = out * p
        return out

    def cycle_vector(self):
        return CycleVector(tuple(tuple(cycle_type(p)) for p in self.perms))

    def is_transitive(self):
        return is_transitive(self.perms, self.m)

    def image(self, cap=10**6) -> FiniteGroup:
        return perm_group(list(self.perms), self.m, cap=cap)

    def key(self):
        return tuple(p.img for p in self.perms)

    def canonical(self, use_numba=None):
        arr = _kernels.lexmin_conjugate([p.img for p in self.perms], use_numba=use_numba)
        return MonodromyVector(tuple(Permutation(row.tolist()) for row in arr))

    def __str__(self):
        return "(" + ", ".join(map(str, self.perms)) + ")"

    @classmethod
    def parse(cls, texts, m):
        return cls(tuple(Permutation.parse(t, m) for t in texts))


def _class_rep(part):
    img, start = [], 0
    for p in part:
        img += [start + (i + 1) % p for i in range(p)]
        start += p
    return Permutation(img)


def _conjugacy_class(part, m):
    want = tuple(sorted(part, reverse=True))
    return [p for p in (Permutation(x) for x in itertools.permutations(range(m)))
            if tuple(cycle_type(p)) == want]


def check_monodromy_vector(M: MonodromyVector, P: CycleVector):
    if M.cycle_vector().parts != tuple(tuple(sorted(p, reverse=True)) for p in P.parts):
        raise AssertionError("cycle types do not match the cycle vector")
    if not M.product().is_identity():
        raise AssertionError("product of the monodromy vector is not the identity")
    if not M.is_transitive():
        raise AssertionError("monodromy group is not transitive")


def find_monodromy_vectors(P: CycleVector, bound=DEFAULT_BOUND, use_numba=None, cap=None):
    """One lex-least representative per simultaneous-conjugacy class of monodromy vectors."""
    m, t = P.m, len(P)
    if m > bound:
        raise ResourceBound(f"index {m} exceeds the search bound {bound}")
    if m == 1:
        return [MonodromyVector(tuple(Permutation.identity(1) for _ in range(t)))]
    if t == 0:
        return []
    want = [tuple(sorted(p, reverse=True)) for p in P.parts]
    first = _class_rep(want[0])
    middle = [_conjugacy_class(p, m) for p in want[1:-1]]
    work = math.prod(len(c) for c in middle)
    cap = SEARCH_CAP if cap is None else cap
    if work > cap:
        raise ResourceBound(f"search space {work} exceeds cap {cap}")
    found = {}
    for combo in itertools.product(*middle):
        prod = first
        for p in combo:
            prod = prod * p
        last = prod.inverse()
        if t == 1:
            if not last.is_identity() or not first.is_identity():
                continue
            perms = (first,)
        else:
            if tuple(cycle_type(last)) != want[-1]:
                continue
            perms = (first,) + combo + (last,)
        M = MonodromyVector(perms)
        if not M.is_transitive():
            continue
        c = M.canonical(use_numba)
        found.setdefault(c.key(), c)
    out = [found[k] for k in sorted(found)]
    for M in out:
        check_monodromy_vector(M, P)
    return out


def singerman_induced(rho_zeta: Permutation, k):
    """Induced periods k / k_i for the cycles of rho(zeta) shorter than k (k=None: parabolic)."""
    out = []
    for c in rho_zeta.cycles():
        ln = len(c)
        if k is None or (isinstance(k, Period) and k.parabolic):
            out.append(Period.inf())
            continue
        k_int = as_period(k).value
        if k_int % ln:
            raise DomainError(f"cycle of length {ln} does not divide the order {k_int}")
        if ln < k_int:
            out.append(Period(k_int // ln))
    return out


def stabilizer_signature(M: MonodromyVector, sup) -> Signature:
    """Periods of the point stabilizer: induced periods over all generators."""
    sup = sig(sup)
    out = []
    for p, period in zip(M.perms, sup.periods):
        for c in p.cycles():
            ind = induced_from_part(period, len(c))
            if ind is not None:
                out.append(ind)
    return Signature(out)


# ------------------------------------------------------------------ words

def _reduce(word):
    out = []
    for x in word:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def word_str(word):
    if not word:
        return "1"
    bits, i = [], 0
    while i < len(word):
        g, e = word[i]
        j = i
        while j < len(word) and word[j] == (g, e):
            j += 1
        k = (j - i) * e
        bits.append(f"z{g + 1}" if k == 1 else f"z{g + 1}^{k}")
        i = j
    return "*".join(bits)


def parse_word(text):
    out = []
    for tok in text.split("*"):
        tok = tok.strip()
        if tok == "1":
            continue
        name, _, exp = tok.partition("^")
        k = int(exp) if exp else 1
        g = int(name[1:]) - 1
        out += [(g, 1 if k > 0 else -1)] * abs(k)
    return tuple(out)


def evaluate_word(word, images, identity):
    out = identity
    inv = {}
    for g, e in word:
        if e > 0:
            out = out * images[g]
        else:
            if g not in inv:
                inv[g] = images[g].inverse()
            out = out * inv[g]
    return out


def free_reduce_relation(word, t):
    """Reduce freely after eliminating zeta_t = (zeta_1 ... zeta_{t-1})^-1."""
    if t == 0:
        return _reduce(word)
    last = tuple((k, -1) for k in reversed(range(t - 1)))
    out = []
    for g, e in word:
        if g == t - 1:
            out += list(last if e > 0 else word_inverse(last))
        else:
            out.append((g, e))
    return _reduce(out)


@dataclass
class WordMap:
    words: list                 # kept loop words (tuples of (gen, +-1))
    sources: list               # (generator j, cycle as sorted points) inducing each word
    formal_orders: list         # n_j / l as Periods
    all_loops: list = field(default_factory=list)   # including loops that are trivial in Delta
    base_point: int = 0

    def strings(self):
        return [word_str(w) for w in self.words]

    def evaluate(self, images, identity):
        return [evaluate_word(w, images, identity) for w in self.words]

    def free_relation_holds(self, t):
        flat = [x for w in self.all_loops for x in w]
        return free_reduce_relation(flat, t) == ()

    def as_dict(self):
        return {"base_point": self.base_point + 1, "words": self.strings(),
                "orders": [str(o) for o in self.formal_orders],
                "sources": [{"generator": j + 1, "cycle": [c + 1 for c in cyc]}
                            for j, cyc in self.sources]}


def _schreier_tree(perms, base):
    """u[i]: word carrying the base point to i; tree: glued sides {(sheet, gen, side): partner}."""
    u = {base: ()}
    glued = {}
    q = deque([base])
    while q:
        i = q.popleft()
        for j, p in enumerate(perms):
            for sgn, nxt in ((1, p.img[i]), (-1, p.inverse().img[i])):
                if nxt in u:
                    continue
                u[nxt] = u[i] + ((j, sgn),)
                # crossing arc j positively leaves a sheet by side "a", enters the next by "b"
                mine, theirs = ("a", "b") if sgn == 1 else ("b", "a")
                glued[(i, j, mine)] = (nxt, j, theirs)
                glued[(nxt, j, theirs)] = (i, j, mine)
                q.append(nxt)
    return u, glued


def _boundary_tips(perms, base, glued):
    """Tips (sheet, generator) met walking once around the glued disk, starting at the base sheet."""
    t = len(perms)
    cyc = []
    for j in range(t):
        cyc += [("side", j, "a"), ("tip", j), ("side", j, "b"), ("O", j)]
    pos = {c: x for x, c in enumerate(cyc)}
    L = len(cyc)
    sheet, x = base, L - 1
    start = (sheet, x)
    tips = []
    for _ in range(L * len(perms[0].img) * 4 + 4):
        x = (x + 1) % L
        el = cyc[x]
        if el[0] == "side" and (sheet, el[1], el[2]) in glued:
            sheet, j, s = glued[(sheet, el[1], el[2])]
            x = pos[("side", j, s)]
            continue
        if el[0] == "tip":
            tips.append((sheet, el[1]))
        if (sheet, x) == start:
            return tips
    raise AssertionError("boundary walk did not close")


def word_map(M: MonodromyVector, sup, base_point=0):
    """Canonical generators of the point stabilizer as words in zeta_1..zeta_t.

    The sheets of the cover are glued along a breadth-first spanning tree into one
    disk; going once around its boundary meets every puncture, and taking the
    punctures in order of first appearance, each as u zeta_j^l u^-1 for the sheet
    where it first shows up, gives generators whose product is 1.
    """
    sup = sig(sup)
    perms = list(M.perms)
    t = len(perms)
    if len(sup.periods) != t:
        raise DomainError("signature and monodromy vector have different lengths")
    if not M.is_transitive():
        raise DomainError("monodromy vector is not transitive")
    u, glued = _schreier_tree(perms, base_point)
    seen, loops = set(), []
    for sheet, j in _boundary_tips(perms, base_point, glued):
        cyc = next(c for c in perms[j].cycles() if sheet in c)
        key = (j, min(cyc))
        if key in seen:
            continue
        seen.add(key)
        loops.append((sheet, j, sorted(cyc)))
    words, sources, orders, all_loops = [], [], [], []
    for sheet, j, cyc in loops:
        w = _reduce(u[sheet] + ((j, 1),) * len(cyc) + word_inverse(u[sheet]))
        all_loops.append(w)
        ind = induced_from_part(sup.periods[j], len(cyc))
        if ind is None:
            continue
        words.append(w)
        sources.append((j, cyc))
        orders.append(ind)
    wm = WordMap(words, sources, orders, all_loops, base_point)
    if not wm.free_relation_holds(t):
        raise AssertionError("word map violates the product relation")
    return wm


def braid_move(words, i, inverse=False):
    """Hurwitz move on positions i, i+1; the ordered product is unchanged."""
    w = list(words)
    a, b = w[i], w[i + 1]
    if not inverse:
        w[i], w[i + 1] = _reduce(a + b + word_inverse(a)), a
    else:
        w[i], w[i + 1] = b, _reduce(word_inverse(b) + a + b)
    return w


# ------------------------------------------------------------ classification

@dataclass
class PairClass:
    verdict: str                 # "constrained", "tight" or "generic"
    parent: tuple = None         # (sub, sup) of the tight pair for a generic member

    def as_dict(self):
        d = {"verdict": self.verdict}
        if self.parent:
            d["parent"] = [str(self.parent[0]), str(self.parent[1])]
        return d


def _rho_order(part):
    return math.lcm(*part)


def classify_pair(sub, sup, P: CycleVector):
    sub, sup = sig(sub), sig(sup)
    loose = []
    for j, (period, part) in enumerate(zip(sup.periods, P.parts)):
        if period.parabolic:
            continue
        if period.is_parametric or period.value != _rho_order(part):
            loose.append(j)
    if not loose:
        has_cusp = any(p.parabolic for p in sup.periods)
        return PairClass("tight" if has_cusp else "constrained")
    new_sup = [Period.inf() if j in loose else p for j, p in enumerate(sup.periods)]
    induced = []
    for period, part in zip(new_sup, P.parts):
        for x in part:
            ind = induced_from_part(period, x)
            if ind is not None:
                induced.append(ind)
    return PairClass("generic", (Signature(induced), Signature(new_sup)))


# ------------------------------------------------------------------- fusing

@dataclass
class FusionReport:
    degree: int
    image_order: int
    core_order: int
    stabilizer_order: int
    stabilizer_cyclic: bool
    C_normal_in_N: bool
    N_in_A: bool

    @property
    def core_trivial(self):
        return self.core_order == 1

    def as_dict(self):
        return {"degree": self.degree, "image_order": self.image_order,
                "core_order": self.core_order, "core_trivial": self.core_trivial,
                "stabilizer_order": self.stabilizer_order,
                "stabilizer_cyclic": self.stabilizer_cyclic,
                "C_normal_in_N": self.C_normal_in_N, "N_in_A": self.N_in_A}


def fuse_triple(A: FiniteGroup, N: FiniteGroup, C: FiniteGroup) -> FusionReport:
    """Coset action of A on C: its image, the core of C, and the point stabilizer C/core."""
    act, cr = coset_action(A, C)
    img = act.image_group()
    stab_gens = [act.image(c) for c in C.gens] or [Permutation.identity(act.degree)]
    stab = FiniteGroup(stab_gens, Permutation.identity(act.degree))
    return FusionReport(act.degree, img.order, cr.order, stab.order, stab.is_cyclic(),
                        C.is_normal_in(N), N.is_subgroup_of(A))


def mu_balance(sub, sup, P: CycleVector) -> bool:
    """mu(sub) == m * mu(sup) for a concrete pair."""
    return mu(sig(sub)) == P.m * mu(sig(sup))


__all__ = [
    "CycleVector", "MonodromyVector", "WordMap", "PairClass", "FusionReport",
    "compatible_cycle_vectors", "find_monodromy_vectors", "singerman_induced",
    "stabilizer_signature", "word_map", "braid_move", "classify_pair", "fuse_triple",
    "word_str", "parse_word", "evaluate_word", "free_reduce_relation", "mu_balance",
    "check_monodromy_vector", "index_of",
]
