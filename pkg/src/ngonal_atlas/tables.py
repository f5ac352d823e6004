"""Regenerate the sphere-group catalog, abelianization and involution tables.

Rows are derived from computation on concrete instances, then written in a fixed
text vocabulary so the output can be compared byte for byte.
"""
from __future__ import annotations

from .cyclicgrp import involutions_with_fixed
from .permcore import abelianization_invariants, sphere_group_realization
from .sigcore import SphericalGroup, abelianization, spherical_catalog

_NAMES = {"C": "C_k", "D": "D_k", "A4": "A4", "S4": "S4", "A5": "A5"}


def _sig_text(K):
    if K.family == "C":
        return "(k,k), k>=2"
    if K.family == "D":
        return "(2,2,k), k>=2"
    return str(K.signature())


def table1():
    return [{"group": _NAMES[K.family], "signature": _sig_text(K)} for K, _ in spherical_catalog()]


def _ab_text(inv):
    if not inv:
        return "<id>"
    return " x ".join(f"Z_{x}" for x in inv)


def _checked_abelianization(K):
    inv = tuple(sorted(abelianization(K)))
    oracle = tuple(sorted(abelianization_invariants(sphere_group_realization(K)[0])))
    if inv != oracle:
        raise AssertionError(f"abelianization of {K.label}: {inv} vs brute force {oracle}")
    return inv


def table2(k_range=range(2, 13)):
    rows = []
    # cyclic: Z_k for every k in range
    for k in k_range:
        if _checked_abelianization(SphericalGroup("C", k)) != (k,):
            raise AssertionError(f"C{k} abelianization is not Z_{k}")
    rows.append({"group": "C_k", "signature": "(k,k), k>=2", "abelianization": "Z_k"})
    for parity, lo in (("even", 2), ("odd", 3)):
        seen = {_checked_abelianization(SphericalGroup("D", k))
                for k in k_range if k >= lo and (k % 2 == 0) == (parity == "even")}
        if len(seen) != 1:
            raise AssertionError(f"dihedral {parity}: abelianization not constant {seen}")
        rows.append({"group": "D_k", "signature": f"(2,2,k), k>={lo}, k {parity}",
                     "abelianization": _ab_text(seen.pop())})
    for name in ("A4", "S4", "A5"):
        K = SphericalGroup(name)
        rows.append({"group": name, "signature": str(K.signature()),
                     "abelianization": _ab_text(_checked_abelianization(K))})
    return rows


# symbolic forms, tried in this order
_A_FORMS = [("1", lambda q, p, e: 1 % q), ("-1", lambda q, p, e: q - 1),
            ("2^(e-1)+1", lambda q, p, e: (q // 2 + 1) % q if p == 2 else None),
            ("2^(e-1)-1", lambda q, p, e: (q // 2 - 1) % q if p == 2 else None)]
_FIX_FORMS = [("Z_(p^e)", lambda q, p, e: 1 % q if p != 2 else None),
              ("Z_(2^e)", lambda q, p, e: 1 % q if p == 2 else None),
              ("<0>", lambda q, p, e: 0),
              ("2^(e-1)Z_(2^e)", lambda q, p, e: q // 2 if p == 2 else None),
              ("2Z_(2^e)", lambda q, p, e: 2 % q if p == 2 else None)]


def table3(odd_primes=(3, 5, 7, 11), max_e=7):
    """Involutions x -> a x of Z_{p^e} and their fixed subgroups, by symbolic row."""
    found = {}
    for p in (*odd_primes, 2):
        fam = "odd p" if p != 2 else "2^e"
        for e in range(1, max_e + 1 if p == 2 else 5):
            q = p ** e
            for a, g in involutions_with_fixed(q):
                label = next(name for name, f in _A_FORMS if f(q, p, e) == a)
                fixes = {name for name, f in _FIX_FORMS if f(q, p, e) == g}
                row = found.setdefault((fam, label), {"min_e": e, "fixed": set(fixes)})
                row["min_e"] = min(row["min_e"], e)
                row["fixed"] &= fixes
    out = []
    for fam in ("odd p", "2^e"):
        for label, _ in _A_FORMS:
            row = found.get((fam, label))
            if row is None:
                continue
            if len(row["fixed"]) != 1:
                raise AssertionError(f"ambiguous fixed subgroup for {fam}, a={label}: {row['fixed']}")
            head = fam if fam == "odd p" else f"2^e, e>={row['min_e']}"
            out.append({"p^e": head, "a": label, "fixed": row["fixed"].pop()})
    return out


TABLES = {1: table1, 2: table2, 3: table3}
