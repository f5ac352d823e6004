"""Restrictions on the automorphism group: strong branching, weak malnormality,
the signature-pair templates for weakly malnormal actions, and finite maximality."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .permcore import FiniteGroup, conjugate, normalizer
from .sigcore import Period, Signature, codimension, is_hyperbolic, mu, riemann_hurwitz_genus, sig


# ---------------------------------------------------------------- branching

@dataclass
class BranchingReport:
    n: int
    R: int
    sigma1: int
    sigma2: int
    threshold: int
    strongly_branched: bool

    def as_dict(self):
        return dict(self.__dict__)


def strong_branching(n, sigma2, R) -> bool:
    if n < 2 or sigma2 < 0:
        raise DomainError("need n >= 2 and sigma2 >= 0")
    return R > 2 * n * (n - 1) * (sigma2 + 1)


def branching_report(n, sig_C, sigma2=0) -> BranchingReport:
    """Total ramification of S -> S/C for a cyclic action with quotient genus sigma2."""
    s = sig(sig_C)
    if s.genus != sigma2:
        s = Signature(s.periods, sigma2)
    R = sum(n - n // p for p in s.values())
    sigma1 = riemann_hurwitz_genus(n, s)
    if sigma1.denominator != 1:
        raise DomainError("Riemann-Hurwitz gives a non-integral genus")
    thr = 2 * n * (n - 1) * (sigma2 + 1)
    return BranchingReport(n, R, int(sigma1), sigma2, thr, R > thr)


# -------------------------------------------------------- weak malnormality

def weakly_malnormal(A: FiniteGroup, C: FiniteGroup) -> bool:
    """C meets each conjugate gCg^-1 trivially for g outside the normalizer of C."""
    N = normalizer(A, C)
    inN = set(N.elements)
    cset = set(C.elements)
    nontriv = [c for c in C.elements if c != A.identity]
    checked = set()
    for g in A.elements:
        if g in inN:
            continue
        # gCg^-1 only depends on the coset gN
        key = frozenset(conjugate(c, g.inverse()) for c in C.gens)
        if key in checked:
            continue
        checked.add(key)
        ginv = g.inverse()
        if any(g * c * ginv in cset for c in nontriv):
            return False
    return True


def normality_consequence(n, sigma, wm) -> str:
    if wm and sigma > (n - 1) ** 2:
        return "C must be normal in Aut(S)"
    return "no conclusion"


# ----------------------------------------------------- signature templates

@dataclass
class PairTemplate:
    case: str
    codim: int
    N: Signature
    A: Signature

    def as_dict(self):
        return {"case": self.case, "codim": self.codim, "N": str(self.N), "A": str(self.A)}

    def instantiate(self, env):
        return PairTemplate(self.case, self.codim, self.N.evaluate(env), self.A.evaluate(env))


_CASES = [("0A", 0, 3), ("0B", 0, 2), ("1A", 1, 2), ("1B", 1, 1), ("2A", 2, 1), ("2B", 2, 0), ("3A", 3, 0)]


def _k_periods(K_sig):
    if K_sig is None:
        return None
    s = sig(K_sig)
    return list(s.periods)


def table5_pairs(K_sig=None, base_periods=None):
    """Templates (S(Gamma_N), S(Gamma_A)) for weakly malnormal actions.

    K_sig picks the cyclic (k,k) rows or the three-generator rows; None gives all seven.
    Unknown periods are symbols m1.., b1.. (and n1 when base_periods is not given).
    """
    base = [Period(1, ("n1",))] if base_periods is None else [
        p if isinstance(p, Period) else sig([p]).periods[0] for p in base_periods]
    a = _k_periods(K_sig)
    out = []
    for case, codim, nb in _CASES:
        cyclic = case.endswith("B")
        if a is not None and (len(a) == 2) != cyclic:
            continue
        if a is None:
            slots = [Period(1, ("k",))] * 2 if cyclic else [Period(1, (f"a{i}",)) for i in (1, 2, 3)]
        else:
            slots = a
        N = Signature([x.times(Period(1, (f"m{i + 1}",))) for i, x in enumerate(slots)] + base)
        A = Signature([Period(1, (f"b{i + 1}",)) for i in range(nb)] + base)
        out.append(PairTemplate(case, codim, N, A))
    return out


def divisibility_ok(sub, sup) -> bool:
    """Every period of sub divides some period of sup (concrete signatures)."""
    sub, sup = sig(sub), sig(sup)
    return all(any(q.value % p.value == 0 for q in sup.periods) for p in sub.periods)


def match_table5(N_sig, A_sig, K):
    """Template cases a concrete pair fits, given the sphere group K = N/C."""
    Ns, As = sig(N_sig), sig(A_sig)
    a = [p.value for p in K.signature().periods]
    e = len(a)
    cyclic = e == 2
    codim = len(Ns.periods) - len(As.periods)
    hits = []
    vals = Ns.values()
    for pos in itertools.permutations(range(len(vals)), e):
        if any(vals[p] % a[i] for i, p in enumerate(pos)):
            continue
        rest = sorted(vals[i] for i in range(len(vals)) if i not in pos)
        pool = list(As.values())
        ok = True
        for x in rest:
            if x in pool:
                pool.remove(x)
            else:
                ok = False
                break
        if not ok:
            continue
        for case, cd, nb in _CASES:
            if case.endswith("B") == cyclic and cd == codim and len(pool) == nb and case not in hits:
                hits.append(case)
    return hits


# ------------------------------------------------------------ maximality

@dataclass
class Elimination:
    signature: Signature
    reason: str

    def as_dict(self):
        return {"signature": str(self.signature), "reason": self.reason}


@dataclass
class MaximalityVerdict:
    signature: Signature
    maximal: bool
    method: str
    candidates: list = field(default_factory=list)      # (Signature, k)
    eliminated: list = field(default_factory=list)      # Elimination
    bound: int = 0

    def as_dict(self):
        return {"signature": str(self.signature), "maximal": self.maximal, "method": self.method,
                "bound": self.bound,
                "candidates": [{"signature": str(s), "k": k} for s, k in self.candidates],
                "eliminated": [x.as_dict() for x in self.eliminated]}


def small_area_triangles(limit=Fraction(1, 12)):
    """Hyperbolic triangle signatures (p <= q <= r) with mu < limit."""
    out = []
    # mu < 1/12 forces p = 2 or small values; the loops stop once mu only grows
    for p in range(2, 7):
        for q in range(p, 13):
            for r in range(q, 200):
                s = Signature([p, q, r])
                m = mu(s)
                if m >= limit:
                    break
                if m > 0:
                    out.append(s)
    return out


def _is_23m(s: Signature):
    v = sorted(s.values())
    return len(v) == 3 and v[0] == 2 and v[1] == 3 and v[2] >= 7


def triangle_23m_certificate():
    """Eliminate every triangle that could contain some (2,3,m) with index k >= 2.

    With h = mu(candidate), m = 6/(1 - 6kh) must be an integer >= 7 and every period
    of (2,3,m) must divide a period of the candidate.
    """
    elim = []
    for cand in small_area_triangles():
        h = mu(cand)
        reasons = []
        k = 2
        while 1 - 6 * k * h > 0:
            m = Fraction(6) / (1 - 6 * k * h)
            if m.denominator == 1 and m >= 7:
                if divisibility_ok(Signature([2, 3, int(m)]), cand):
                    raise AssertionError(f"(2,3,{m}) has a supergroup {cand}")
                reasons.append(f"k={k}: m={m} but {int(m)} divides no period")
            k += 1
        if not reasons:
            reasons.append("no integer m >= 7 for any k >= 2")
        elim.append(Elimination(cand, "; ".join(reasons)))
    return elim


def supergroup_candidates(s, bound):
    """Signatures (n_1..n_t), 3 <= t <= r, n_j <= bound, containing s with integral index k >= 2."""
    s = sig(s)
    vals = s.values()
    r = len(vals)
    target = mu(s)
    out = []
    for t in range(3, r + 1):
        for ns in itertools.combinations_with_replacement(range(2, bound + 1), t):
            cand = Signature(list(ns))
            mc = mu(cand)
            if mc <= 0:
                continue
            k = target / mc
            if k.denominator != 1 or k < 2:
                continue
            if not divisibility_ok(s, cand):
                continue
            out.append((cand, int(k)))
    return out


def finitely_maximal(s, search_bound=50) -> MaximalityVerdict:
    s = sig(s)
    if s.genus or not s.is_concrete or any(p.parabolic for p in s.periods):
        raise DomainError("maximality needs a concrete genus-0 signature without cusps")
    if not is_hyperbolic(s):
        raise DomainError(f"{s} is not hyperbolic")
    if _is_23m(s):
        return MaximalityVerdict(s, True, "(2,3,m) area argument", [], triangle_23m_certificate(),
                                 search_bound)
    cands = supergroup_candidates(s, search_bound)
    return MaximalityVerdict(s, not cands, f"bounded search, periods <= {search_bound}",
                             cands, [], search_bound)


__all__ = [
    "BranchingReport", "strong_branching", "branching_report", "weakly_malnormal",
    "normality_consequence", "PairTemplate", "table5_pairs", "match_table5",
    "divisibility_ok", "MaximalityVerdict", "finitely_maximal", "triangle_23m_certificate",
    "supergroup_candidates", "small_area_triangles", "codimension",
]
