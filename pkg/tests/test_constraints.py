import itertools
from fractions import Fraction

import pytest

from ngonal_atlas.constraints import (branching_report, divisibility_ok, finitely_maximal,
                                      match_table5, normality_consequence, small_area_triangles,
                                      strong_branching, supergroup_candidates, table5_pairs,
                                      triangle_23m_certificate, weakly_malnormal)
from ngonal_atlas.errors import DomainError
from ngonal_atlas.fixtures import bring, fermat, klein
from ngonal_atlas.permcore import Permutation, normalizer, perm_group
from ngonal_atlas.sigcore import Signature, SphericalGroup, codimension, mu, sig

SIX = {"(2,3,7)", "(2,3,8)", "(2,3,9)", "(2,3,10)", "(2,3,11)", "(2,4,5)"}


def test_strong_branching_examples():
    # Klein: genus 3 over the line, 7-gonal
    r = branching_report(7, "(7,7,7)")
    assert (r.R, r.sigma1, r.threshold, r.strongly_branched) == (18, 3, 84, False)
    # hyperelliptic genus 2: six branch points
    r = branching_report(2, "(2,2,2,2,2,2)")
    assert r.sigma1 == 2 and r.strongly_branched
    assert strong_branching(2, 0, r.R)
    for n in range(3, 30):
        r = branching_report(n, Signature([n] * n))
        assert r.sigma1 == (n - 1) * (n - 2) // 2 and not r.strongly_branched


@pytest.mark.parametrize("n", range(2, 12))
def test_strong_branching_genus_form(n):
    # with a genus-0 base, R > 2n(n-1) is the same as sigma1 > (n-1)^2
    for r in range(3, 10):
        if (n - 1) * r % 2:
            continue
        rep = branching_report(n, Signature([n] * r))
        assert rep.strongly_branched == (rep.sigma1 > (n - 1) ** 2)


def test_strong_branching_rejects_bad_input():
    with pytest.raises(DomainError):
        strong_branching(1, 0, 5)


def test_weakly_malnormal_examples():
    assert weakly_malnormal(klein().A, klein().C)
    assert weakly_malnormal(bring().A, bring().C)
    for n in (4, 5, 7):
        assert weakly_malnormal(fermat(n).A, fermat(n).C)
    A = perm_group(["(1,2)", "(1,2,3)"], 3)
    assert weakly_malnormal(A, A.subgroup([Permutation.parse("(1,2,3)", 3)]))


def test_not_weakly_malnormal():
    A = perm_group(["(1,2)", "(1,2,3,4)"], 4)
    H = A.subgroup([Permutation.parse("(1,2)(3,4)", 4), Permutation.parse("(1,3)(2,4)", 4),
                    Permutation.parse("(1,2)", 4)])
    # H is dihedral of order 8, non-normal, and meets its conjugates in the Klein four-group
    assert H.order == 8 and normalizer(A, H).order == 8
    assert not weakly_malnormal(A, H)


def _brute_weakly_malnormal(A, C):
    N = set(normalizer(A, C).elements)
    cs = set(C.elements)
    for g in A.elements:
        if g in N:
            continue
        conj = {g * c * g.inverse() for c in C.elements}
        if len(conj & cs) > 1:
            return False
    return True


def test_weakly_malnormal_matches_brute_force_on_sym4_subgroups():
    A = perm_group(["(1,2)", "(1,2,3,4)"], 4)
    seen = set()
    for a, b in itertools.combinations_with_replacement(A.elements, 2):
        H = A.subgroup([a, b])
        key = frozenset(H.elements)
        if key in seen:
            continue
        seen.add(key)
        assert weakly_malnormal(A, H) == _brute_weakly_malnormal(A, H)
    assert len(seen) > 20


def test_normality_consequence():
    assert normality_consequence(2, 2, True) == "C must be normal in Aut(S)"
    assert normality_consequence(3, 5, True) == "C must be normal in Aut(S)"
    assert all(normality_consequence(3, s, True) == "no conclusion" for s in (2, 3, 4))
    assert normality_consequence(2, 5, False) == "no conclusion"


def test_normalizer_of_c_equals_normalizer_of_subgroup():
    # weakly malnormal, non-normal C and any nontrivial K <= C have the same normalizer
    for t in (klein(), bring(), fermat(4), fermat(6)):
        assert weakly_malnormal(t.A, t.C)
        NC = set(normalizer(t.A, t.C).elements)
        for x in t.C.elements:
            if x == t.A.identity:
                continue
            K = t.A.subgroup([x])
            assert set(normalizer(t.A, K).elements) == NC


def test_table5_templates():
    rows = {p.case: p for p in table5_pairs()}
    assert list(rows) == ["0A", "0B", "1A", "1B", "2A", "2B", "3A"]
    assert str(rows["3A"].A) == "(n1)"
    assert str(rows["0B"].N) == "(k*m1,k*m2,n1)" and str(rows["0B"].A) == "(b1,b2,n1)"
    for p in rows.values():
        assert codimension(p.N, p.A) == p.codim


def test_table5_divisibility_on_instances():
    # with every b_i a common multiple of the a_i m_i, divisibility holds in every row
    for p in table5_pairs(K_sig="(2,3,5)", base_periods=[4, 6]):
        env = {"m1": 2, "m2": 3, "m3": 2}
        env.update({f"b{i}": 180 for i in (1, 2, 3)})
        inst = p.instantiate(env)
        if inst.codim < 3:
            assert divisibility_ok(inst.N, inst.A)
        assert codimension(inst.N, inst.A) == p.codim


def test_table5_k_filter():
    assert [p.case for p in table5_pairs(K_sig="(3,3)")] == ["0B", "1B", "2B"]
    assert [p.case for p in table5_pairs(K_sig="(2,2,5)")] == ["0A", "1A", "2A", "3A"]


def test_match_table5_on_fixtures():
    assert match_table5("(3,3,7)", "(2,3,7)", SphericalGroup("C", 3)) == ["0B"]
    assert match_table5("(2,10,5)", "(2,3,10)", SphericalGroup("D", 5)) == ["0A"]


def test_divisibility():
    assert divisibility_ok("(7,7,7)", "(2,3,7)")
    assert not divisibility_ok("(2,3,9)", "(2,3,7)")


def test_certificate_is_the_six_triangles():
    elim = triangle_23m_certificate()
    assert {str(e.signature) for e in elim} == SIX
    assert {str(s) for s in small_area_triangles()} == SIX


def test_certificate_replays():
    # independent replay: for every eliminated h and k >= 2, m = 6/(1-6kh) is not an
    # integer >= 7 with (2,3,m) dividing into the candidate
    for e in triangle_23m_certificate():
        cand = e.signature
        h = mu(cand)
        vals = cand.values()
        k = 2
        while 1 - 6 * k * h > 0:
            m = Fraction(6) / (1 - 6 * k * h)
            if m.denominator == 1 and m >= 7:
                assert not all(any(q % p == 0 for q in vals) for p in (2, 3, int(m)))
            k += 1


def test_small_area_list_is_complete():
    # brute force over hyperbolic triangles p <= q <= r with mu < 1/12; the loops stop once
    # 1/p + 2/q or 1/p + 1/q + 1/r can no longer exceed 11/12
    bar = Fraction(11, 12)
    found = set()
    for p in range(2, 20):
        if Fraction(3, p) <= bar:
            break
        for q in range(p, 200):
            if Fraction(1, p) + Fraction(2, q) <= bar:
                break
            for r in range(q, 2000):
                s = Fraction(1, p) + Fraction(1, q) + Fraction(1, r)
                if s <= bar:
                    break
                if s < 1:
                    found.add(f"({p},{q},{r})")
    assert found == SIX


@pytest.mark.parametrize("m", [7, 8, 9, 12, 20])
def test_23m_maximal(m):
    v = finitely_maximal(sig(f"(2,3,{m})"))
    assert v.maximal and {str(e.signature) for e in v.eliminated} == SIX


def test_2d2d_candidate():
    for d in (4, 5, 6, 8, 10):
        v = finitely_maximal(Signature([2, d, 2 * d]), search_bound=2 * d + 2)
        assert not v.maximal
        assert (Signature([2, 3, 2 * d]), 3) in v.candidates


def test_777_candidates():
    v = finitely_maximal(sig("(7,7,7)"), 50)
    cands = {(str(s), k) for s, k in v.candidates}
    assert ("(2,3,7)", 24) in cands and ("(3,3,7)", 3) in cands
    for s, k in v.candidates:
        assert mu(sig("(7,7,7)")) == k * mu(s)
        assert divisibility_ok("(7,7,7)", s)


def test_supergroup_search_matches_brute_force():
    s = sig("(3,3,7)")
    want = []
    for ns in itertools.combinations_with_replacement(range(2, 31), 3):
        c = Signature(list(ns))
        if mu(c) > 0 and (mu(s) / mu(c)).denominator == 1 and mu(s) / mu(c) >= 2 and divisibility_ok(s, c):
            want.append((c, int(mu(s) / mu(c))))
    assert supergroup_candidates(s, 30) == want


def test_maximal_rejects():
    with pytest.raises(DomainError):
        finitely_maximal(sig("(2,3,6)"))
    with pytest.raises(DomainError):
        finitely_maximal(sig("(1; 2)"))
