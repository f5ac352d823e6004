"""K-compatible factorizations of a signature and kernel signatures of the cyclic part.

A factorization writes the (permuted) signature of the normalizer group as
(a_1 b_1, ..., a_e b_e, m_1, ..., m_u) where (a_1..a_e) is the signature of
the quotient sphere group K. Periods may be monomials c*x*k in parameter
symbols; substitutions x -> c*x are recorded so a branch can be replayed.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclicgrp import harvey_failures
from .errors import DomainError
from .sigcore import (Period, Signature, SphericalGroup, as_period,
                      is_hyperbolic, lcm, mu, riemann_hurwitz_genus, sig, sphere_group_of)

K_SYMBOL = "k"


@dataclass(frozen=True)
class SubstitutionTrace:
    steps: tuple = ()   # ((symbol, factor Period), ...)

    def then(self, symbol, factor):
        return SubstitutionTrace(self.steps + ((symbol, factor),))

    def replay(self, s):
        for sym, fac in self.steps:
            s = s.substitute(sym, fac) if isinstance(s, Signature) else s.substitute(sym, fac)
        return s

    def __str__(self):
        if not self.steps:
            return "-"
        return ", ".join(f"{s}->{f}" for s, f in self.steps)


@dataclass(frozen=True)
class FactoredSignature:
    K: SphericalGroup
    slots: tuple            # ((a, b), ...) as Periods
    rest: tuple = ()        # remaining periods

    @property
    def e(self):
        return len(self.slots)

    def base(self) -> Signature:
        return Signature([a.times(b) for a, b in self.slots] + list(self.rest))

    def evaluate(self, env):
        K = self.K
        if not K.is_concrete:
            kv = K.k.evaluate(env).value
            K = SphericalGroup(K.family, kv)
        return FactoredSignature(K, tuple((a.evaluate(env), b.evaluate(env)) for a, b in self.slots),
                                 tuple(m.evaluate(env) for m in self.rest))

    def symbols(self):
        out = set()
        for a, b in self.slots:
            out |= a.symbols() | b.symbols()
        for m in self.rest:
            out |= m.symbols()
        return out

    def __str__(self):
        parts = [f"{a}·{b}" for a, b in self.slots] + [str(m) for m in self.rest]
        ks = "(" + ",".join(str(a) for a, _ in self.slots) + ")"
        return "(" + ",".join(parts) + ")/" + ks

    def key(self):
        return (self.K.family, str(self))


@dataclass(frozen=True)
class Branch:
    permuted: Signature          # the reordered input, before substitutions
    factored: FactoredSignature
    trace: SubstitutionTrace

    def __iter__(self):
        # unpacks as (factored, trace)
        return iter((self.factored, self.trace))


def factored(K, slots, rest=()):
    """Convenience constructor: factored(SphericalGroup('D', 3), [(2,2),(2,2),(3,3)], [11])."""
    return FactoredSignature(K, tuple((as_period(a), as_period(b)) for a, b in slots),
                             tuple(as_period(m) for m in rest))


# -------------------------------------------------------------- enumeration

def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _param_symbol(p: Period):
    """The parameter a substitution acts on: first non-K symbol, else K's symbol."""
    for s in p.syms:
        if s != K_SYMBOL:
            return s
    return p.syms[0]


class _State:
    __slots__ = ("ls", "rest", "a", "bs", "trace", "family")

    def __init__(self, ls, rest, a, bs, trace, family):
        self.ls, self.rest, self.a, self.bs, self.trace, self.family = ls, rest, a, bs, trace, family

    def copy(self):
        return _State(list(self.ls), list(self.rest), list(self.a), list(self.bs), self.trace, self.family)

    def substitute(self, sym, fac):
        self.ls = [p.substitute(sym, fac) for p in self.ls]
        self.rest = [p.substitute(sym, fac) for p in self.rest]
        self.bs = [None if b is None else b.substitute(sym, fac) for b in self.bs]
        self.trace = self.trace.then(sym, fac)


def _solve_constant_slot(st: _State, i):
    """Step for a constant a_i: divide a constant l_i, or scale the parameter of l_i."""
    A = st.a[i].value
    l = st.ls[i]
    if l.is_finite:
        if l.coeff % A:
            return None
        st.bs[i] = Period(l.coeff // A)
        return st
    e = A // math.gcd(A, l.coeff)
    if e > 1:
        w = _param_symbol(l)
        st.substitute(w, Period(e, (w,)))
    st.bs[i] = st.ls[i].divide(Period(A))
    return st


def _run_constant(st: _State, start=0):
    for i in range(start, len(st.ls)):
        if _solve_constant_slot(st, i) is None:
            return []
    return [st]


def _concrete_K(st, d):
    st = st.copy()
    st.a = [Period(d) if x.is_parametric else x for x in st.a]
    return st


def _run_parametric(st: _State):
    out = []
    if st.family == "C":
        consts = [i for i in range(2) if st.ls[i].is_finite]
        if consts:
            for d in _divisors(st.ls[consts[0]].coeff):
                if d > 1:
                    out += _run_constant(_concrete_K(st, d))
            return out
        l1, l2 = st.ls
        for d in _divisors(math.gcd(l1.coeff, l2.coeff)):
            s2 = st.copy()
            kk = Period(d, (K_SYMBOL,))
            s2.a = [kk, kk]
            done = []
            for l in (l1, l2):
                w = _param_symbol(l)
                if w not in done:
                    s2.substitute(w, Period(1, (K_SYMBOL, w)))
                    done.append(w)
            try:
                s2.bs = [s2.ls[0].divide(kk), s2.ls[1].divide(kk)]
            except DomainError:
                continue
            out.append(s2)
        return out
    # dihedral (2, 2, k): first two slots are constants
    st = st.copy()
    for i in (0, 1):
        if _solve_constant_slot(st, i) is None:
            return []
    l3 = st.ls[2]
    if l3.is_finite:
        for d in _divisors(l3.coeff):
            if d > 1:
                out += _run_constant(_concrete_K(st, d), start=2)
        return out
    for d in _divisors(l3.coeff):
        s2 = st.copy()
        kk = Period(d, (K_SYMBOL,))
        s2.a = [s2.a[0], s2.a[1], kk]
        w = _param_symbol(l3)
        s2.substitute(w, Period(1, (K_SYMBOL, w)))
        s2.bs[2] = s2.ls[2].divide(kk)
        out.append(s2)
    return out


def _never_hyperbolic(s: Signature):
    big = {x: 10**4 for x in s.symbols()}
    return not is_hyperbolic(s.evaluate(big))


def _label_K(family, a_periods):
    if all(p.is_finite for p in a_periods):
        found = sphere_group_of(a_periods)
        if found is None:
            raise DomainError(f"({','.join(map(str, a_periods))}) is not a sphere group signature")
        return found
    top = a_periods[-1]
    return SphericalGroup(family, top)


def permuted_signatures(s: Signature, e: int):
    """Step 1-2: ordered e-tuples of positions first, the rest in canonical order; duplicates dropped."""
    seen = set()
    out = []
    ps = list(s.periods)
    for pos in itertools.permutations(range(len(ps)), e):
        head = [ps[i] for i in pos]
        tail = sorted((ps[i] for i in range(len(ps)) if i not in pos), key=Period.sort_key)
        key = tuple(str(p) for p in head + tail)
        if key in seen:
            continue
        seen.add(key)
        out.append((head, tail))
    return out


def kcompatible_enumerate(signature, K: SphericalGroup):
    """All K-compatible factorizations of a genus-0 signature, deterministic order.

    Branches come out in the order of the permuted signatures (ordered position
    tuples, itertools order), then by divisor ascending inside a branch point.
    """
    s = sig(signature)
    if s.genus:
        raise DomainError("factorization needs a genus-0 signature")
    if any(p.parabolic for p in s.periods):
        raise DomainError("parabolic periods cannot carry a K-map")
    if _never_hyperbolic(s):
        raise DomainError(f"{s} is not hyperbolic for any parameter value")
    a0 = list(K.signature().periods)
    e = len(a0)
    if len(s.periods) < e:
        return []
    results, seen = [], set()
    for head, tail in permuted_signatures(s, e):
        st = _State(list(head), list(tail), list(a0), [None] * e, SubstitutionTrace(), K.family)
        if K.is_concrete:
            states = _run_constant(st)
        else:
            states = _run_parametric(st)
        for fin in states:
            Kf = _label_K(K.family, fin.a)
            fs = FactoredSignature(Kf, tuple(zip(fin.a, fin.bs)), tuple(fin.rest))
            if _never_hyperbolic(fs.base()):
                continue
            key = fs.key()
            if key in seen:
                continue
            seen.add(key)
            results.append(Branch(Signature(head + tail), fs, fin.trace))
    return results


# -------------------------------------------------------- kernel signature

@dataclass(frozen=True)
class KernelSignature:
    """Genus-0 signature with possibly symbolic multiplicities: ((period, count), ...)."""
    parts: tuple

    def expand(self) -> Signature:
        out = []
        for p, c in self.parts:
            if not c.is_finite:
                raise DomainError("multiplicity still symbolic: evaluate parameters first")
            out += [p] * c.value
        return Signature(out)

    def evaluate(self, env):
        return KernelSignature(tuple((p.evaluate(env), c.evaluate(env)) for p, c in self.parts))

    def __str__(self):
        def wrap(p):
            s = str(p)
            return s if s.isalnum() else f"({s})"
        bits = [str(p) if c == Period(1) else f"{wrap(p)}^{wrap(c)}" for p, c in self.parts]
        return "(" + ",".join(bits) + ")"

    def distinct_periods(self):
        seen = []
        for p, _ in self.parts:
            if p not in seen:
                seen.append(p)
        return seen


def kernel_signature(f: FactoredSignature, expand=True):
    """Periods of the kernel group: |K|/a_i copies of b_i per slot, |K| copies of each m_j."""
    order = f.K.order_period()
    parts = []
    for a, b in f.slots:
        if b == Period(1):
            continue
        parts.append((b, order.divide(a)))
    for m in f.rest:
        parts.append((m, order))
    ks = KernelSignature(tuple(parts))
    if expand and all(c.is_finite for _, c in parts):
        return ks.expand()
    return ks


def order_of_C(sig_C) -> int:
    s = sig(sig_C)
    return lcm(*s.values()) if s.periods else 1


def symbolic_lcm(periods):
    """The lcm as a single monomial when that is valid for every parameter value, else None."""
    for p in periods:
        if all(q.divides(p) for q in periods):
            return p
    if len({q.syms for q in periods}) == 1 and not any(q.parabolic for q in periods):
        return Period(lcm(*(q.coeff for q in periods)), periods[0].syms)
    return None


def slot_symmetries(f: FactoredSignature):
    """Slot permutations preserving (a_1, ..., a_e); the identity comes first."""
    a = [x for x, _ in f.slots]
    return [pm for pm in itertools.permutations(range(len(a)))
            if all(a[pm[i]] == a[i] for i in range(len(a)))]


def mirrored(f: FactoredSignature, pm):
    return FactoredSignature(f.K, tuple(f.slots[i] for i in pm), f.rest)


# ------------------------------------------------- triangle (2, d, 2d) table

TRIANGLE_2_D_2D = Signature([Period(2), Period(1, ("x1",)), Period(2, ("x1",))])

_CONDITIONS = [
    ("always", lambda d, k: True),
    ("d odd", lambda d, k: d % 2 == 1),
    ("d even", lambda d, k: d % 2 == 0),
    ("k even", lambda d, k: k is not None and k % 2 == 0),
    ("k odd", lambda d, k: k is not None and k % 2 == 1),
    ("d odd or k even", lambda d, k: d % 2 == 1 or (k is not None and k % 2 == 0)),
]


@dataclass
class TableRow:
    K: str
    K_signature: str
    factored: str
    permuted: str
    mirror: bool
    d: str
    kernel: str
    n: str
    n_monomial: bool
    condition: str
    failures: dict = field(default_factory=dict)
    flag: str = ""
    branch: Branch = None
    instances: list = field(default_factory=list)

    def as_dict(self):
        return {"K": self.K, "K_signature": self.K_signature, "factored": self.factored,
                "permuted": self.permuted, "mirror": self.mirror, "d": self.d,
                "kernel": self.kernel, "n": self.n, "condition": self.condition,
                "harvey_failures": self.failures, "flag": self.flag}


def branch_instances(br: Branch, max_d=24):
    """Concrete hyperbolic instances of a branch with d <= max_d (every K period >= 2)."""
    f = br.factored
    syms = sorted(f.symbols() | (set() if f.K.is_concrete else f.K.k.symbols()))
    d_expr = br.trace.replay(Period(1, ("x1",))) if "x1" in br.permuted.symbols() else None
    out = []
    for vals in itertools.product(*[range(1, max_d + 1)] * len(syms)):
        env = dict(zip(syms, vals))
        d = d_expr.evaluate(env).value if d_expr is not None else None
        if d is not None and d > max_d:
            continue
        slots = tuple((a.evaluate(env), b.evaluate(env)) for a, b in f.slots)
        if any(a.value < 2 for a, _ in slots):
            continue
        fc = FactoredSignature(sphere_group_of([a for a, _ in slots]), slots,
                               tuple(m.evaluate(env) for m in f.rest))
        if not is_hyperbolic(fc.base()):
            continue
        kern = kernel_signature(fc)
        n = order_of_C(kern)
        fails = harvey_failures(n, kern.values())
        genus = riemann_hurwitz_genus(n, kern) if not fails else None
        out.append({
            "env": env, "factored": fc, "kernel": kern, "n": n, "d": d,
            "k": env.get(K_SYMBOL), "failures": fails, "genus": genus,
        })
    return out


def instance_key(fc: FactoredSignature):
    """Concrete factorization up to swapping slots with equal a_i (mirror rows coincide)."""
    slots = [(a.value, b.value) for a, b in fc.slots]
    best = min(tuple(slots[i] for i in pm) for pm in slot_symmetries(fc))
    return (fc.K.label, best, tuple(sorted(m.value for m in fc.rest)))


def _classify(instances):
    ok = [(x["d"], x["k"]) for x in instances if not x["failures"]]
    bad = [(x["d"], x["k"]) for x in instances if x["failures"]]
    if not ok:
        return "never"
    for name, pred in _CONDITIONS:
        if all(pred(d, k) for d, k in ok) and not any(pred(d, k) for d, k in bad):
            return name
    return "irregular"


def table_rows(signature=TRIANGLE_2_D_2D, families=None, max_d=24):
    """Factorizations over every sphere family, with kernel data and derived conditions."""
    s = sig(signature)
    if families is None:
        families = [SphericalGroup("C"), SphericalGroup("D"), SphericalGroup("A4"),
                    SphericalGroup("S4"), SphericalGroup("A5")]
    rows, index = [], {}
    for K in families:
        for br in kcompatible_enumerate(s, K):
            f = br.factored
            key = f.key()
            if key in index:
                continue
            # mirror: the same row with slots of equal a_i swapped
            twin = next((mirrored(f, pm).key() for pm in slot_symmetries(f)[1:]
                         if mirrored(f, pm).key() in index), None)
            if twin is not None:
                rows[index[twin]].mirror = True
                index[key] = index[twin]
                continue
            kern = kernel_signature(f, expand=False)
            distinct = kern.distinct_periods()
            nsym = symbolic_lcm(distinct)
            insts = branch_instances(br, max_d)
            cond = _classify(insts)
            n_text = str(nsym) if nsym is not None else "lcm(" + ",".join(map(str, distinct)) + ")"
            fails = {}
            for x in insts:
                for reason in x["failures"]:
                    fails.setdefault(reason, 0)
                    fails[reason] += 1
            flag = ""
            if nsym is None and cond != "never":
                seen_ratios = sorted({_ratio_text(x) for x in insts if not x["failures"]}, reverse=True)
                flag = (f"n = {n_text} is not a single monomial; with e = b_e and k = a_e "
                        f"it takes the values {', '.join(seen_ratios)}")
            d_expr = br.trace.replay(Period(1, ("x1",))) if "x1" in s.symbols() else None
            row = TableRow(K=f.K.label, K_signature=str(f.K.signature()), factored=str(f),
                           permuted=str(br.permuted), mirror=False,
                           d=str(d_expr) if d_expr is not None else "", kernel=str(kern),
                           n=n_text, n_monomial=nsym is not None, condition=cond,
                           failures=fails, flag=flag, branch=br, instances=insts)
            index[key] = len(rows)
            rows.append(row)
    return rows


def _ratio_text(x):
    # n relative to e*k, where e and k are the b and a of the last slot
    f = x["factored"]
    r = Fraction(x["n"], f.slots[-1][1].value * f.slots[-1][0].value)
    return "e*k" if r == 1 else f"e*k/{r.denominator}" if r.numerator == 1 else f"{r}*e*k"


def reproduce_table4(max_d=24):
    """Rows for T(2,d,2d): admissible rows plus Harvey-rejected ones (annotated).

    Side conditions are read off the concrete instances with d <= max_d.
    """
    rows = table_rows(TRIANGLE_2_D_2D, max_d=max_d)
    accepted = [r for r in rows if r.condition != "never"]
    rejected = [r for r in rows if r.condition == "never"]
    return accepted, rejected


def mu_balance(f: FactoredSignature) -> bool:
    """mu(kernel) == |K| * mu(base) for a concrete factorization."""
    kern = kernel_signature(f)
    return mu(kern) == f.K.order * mu(f.base())


__all__ = [
    "SubstitutionTrace", "FactoredSignature", "Branch", "factored", "kcompatible_enumerate",
    "permuted_signatures", "KernelSignature", "kernel_signature", "order_of_C",
    "symbolic_lcm", "table_rows", "reproduce_table4", "branch_instances", "mu_balance",
    "TRIANGLE_2_D_2D", "slot_symmetries", "instance_key", "mirrored",
]
