"""Split the singular A-orbits of a concrete triple C <| N <= A into N-orbits.

Points over the i-th branch point are the left cosets a<g_i>; N acts on them by
left multiplication, so N-orbits are double cosets N a <g_i> and the stabilizer of
a<g_i> in N is N meet a<g_i>a^-1.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import DomainError
from .permcore import FiniteGroup, verify_generating_vector
from .sigcore import Signature, riemann_hurwitz_genus

TYPES = ("regular", "type1", "type2", "type3")


@dataclass
class NOrbit:
    kind: str
    size: int
    stabilizer_order: int
    c_stabilizer_order: int     # |stabilizer meet C|
    rep: object = None


@dataclass
class OrbitRow:
    generator_order: int
    a_orbit_size: int
    orbits: list = field(default_factory=list)     # NOrbit

    def count(self, kind):
        return sum(1 for o in self.orbits if o.kind == kind)

    def sizes(self, kind):
        return sorted({o.size for o in self.orbits if o.kind == kind})

    @property
    def counts(self):
        return {k: self.count(k) for k in TYPES}

    def total(self):
        return sum(o.size for o in self.orbits)

    def as_dict(self):
        return {"generator_order": self.generator_order, "a_orbit_size": self.a_orbit_size,
                "counts": self.counts, "sizes": {k: self.sizes(k) for k in TYPES}}


def _cyclic_elements(g, identity):
    out, x = [identity], g
    while x != identity:
        out.append(x)
        x = x * g
    return out


def _classify(stab, cset, identity):
    nontriv = [x for x in stab if x != identity]
    if not nontriv:
        return "regular", 1
    inC = [x for x in nontriv if x in cset]
    if len(inC) == len(nontriv):
        return "type1", len(inC) + 1
    if not inC:
        return "type2", 1
    return "type3", len(inC) + 1


def orbit_decomposition(A: FiniteGroup, N: FiniteGroup, C: FiniteGroup, gv, signature=None):
    """One OrbitRow per entry of the generating vector gv of A."""
    gv = tuple(gv)
    sig = signature or Signature([A.order_of(g) for g in gv if g != A.identity])
    if not verify_generating_vector(A, gv, sig):
        raise DomainError("not a generating vector of A for this signature")
    nset, cset = set(N.elements), set(C.elements)
    ident = A.identity
    rows = []
    for g in gv:
        if g == ident:
            continue
        cyc = _cyclic_elements(g, ident)
        seen = set()
        row = OrbitRow(len(cyc), A.order // len(cyc))
        for a in sorted(A.elements, key=lambda x: x.key()):
            if a in seen:
                continue
            double = {x * a * c for x in N.elements for c in cyc}
            seen |= double
            ainv = a.inverse()
            stab = [y for y in (a * c * ainv for c in cyc) if y in nset]
            kind, cstab = _classify(stab, cset, ident)
            size = N.order // len(stab)
            if size * len(cyc) != len(double):
                raise AssertionError("orbit size disagrees with the double coset")
            row.orbits.append(NOrbit(kind, size, len(stab), cstab, a))
        row.orbits.sort(key=lambda o: (TYPES.index(o.kind), -o.size))
        if row.total() != row.a_orbit_size:
            raise AssertionError("N-orbits do not cover the A-orbit")
        rows.append(row)
    return rows


@dataclass
class LawVerdict:
    ok: bool
    checked: bool
    violations: list

    def as_dict(self):
        return {"ok": self.ok, "checked": self.checked, "violations": self.violations}


def check_weak_malnormal_orbit_laws(decomp, wm: bool) -> LawVerdict:
    """Orbit-level consequences of weak malnormality, row by row.

    A Type-2 stabilizer order must divide the generator order; Type-1 and Type-3
    stabilizers have exactly the generator order.
    """
    if not wm:
        return LawVerdict(True, False, ["C not weakly malnormal: checks skipped"])
    bad = []
    for i, row in enumerate(decomp):
        m = row.generator_order
        if row.count("type1") > 1:
            bad.append(f"row {i}: more than one Type-1 N-orbit in an A-orbit")
        if row.count("type2") + row.count("type3") > 3:
            bad.append(f"row {i}: more than three orbits of Type 2 or 3")
        for o in row.orbits:
            if o.kind in ("type1", "type3") and o.stabilizer_order != m:
                bad.append(f"row {i}: {o.kind} stabilizer order {o.stabilizer_order} != {m}")
            if o.kind == "type2" and m % o.stabilizer_order:
                bad.append(f"row {i}: type2 stabilizer order {o.stabilizer_order} does not divide {m}")
    # the K-generators: two or three of them in total, none when K is trivial
    total = sum(r.count("type2") + r.count("type3") for r in decomp)
    if total not in (0, 2, 3):
        bad.append(f"{total} orbits of Type 2 or 3 in total (allowed 0, 2 or 3)")
    return LawVerdict(not bad, True, bad)


def induced_signature_from_orbits(decomp, N: FiniteGroup, C: FiniteGroup):
    """(S(Gamma_N), S(Gamma_C)) read off the singular N-orbits and their C-orbits."""
    n_periods, c_periods = [], []
    for row in decomp:
        for o in row.orbits:
            if o.kind == "regular":
                continue
            n_periods.append(o.stabilizer_order)
            if o.c_stabilizer_order > 1:
                # C is normal in N, so every point of the orbit has the same C-stabilizer size
                c_orbit = C.order // o.c_stabilizer_order
                c_periods += [o.c_stabilizer_order] * (o.size // c_orbit)
    sN, sC = Signature(sorted(n_periods)), Signature(sorted(c_periods))
    return sN, sC


def genus_triple(A_order, sig_A, N_order, sig_N, C_order, sig_C):
    """Genera from the three Riemann-Hurwitz computations (they must agree)."""
    return tuple(riemann_hurwitz_genus(o, s) for o, s in
                 ((A_order, sig_A), (N_order, sig_N), (C_order, sig_C)))


def table7_layout(decomp):
    """Rows of the orbit table: A-orbit sizes, then a count row and a size cell per type."""
    head = [r.generator_order for r in decomp]
    lines = [["order of canonical generator"] + head + ["size of N-orbits"],
             ["size of A-orbit"] + [r.a_orbit_size for r in decomp] + [""]]
    names = {"regular": "regular", "type1": "Type 1", "type2": "Type 2", "type3": "Type 3"}
    for k in TYPES:
        sizes = sorted({s for r in decomp for s in r.sizes(k)})
        cell = ",".join(map(str, sizes)) if sizes else "-"
        lines.append([f"{names[k]} N-orbits"] + [r.count(k) for r in decomp] + [cell])
    return lines


def format_table(lines):
    widths = [max(len(str(row[i])) for row in lines) for i in range(len(lines[0]))]
    return "\n".join("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines)


def stabilizer_law_holds(decomp, N):
    return all(o.stabilizer_order * o.size == N.order for r in decomp for o in r.orbits)


def kind_counter(decomp):
    return [Counter(o.kind for o in r.orbits) for r in decomp]
