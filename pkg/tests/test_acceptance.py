"""Acceptance criteria, one test each, every one timed against its budget.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""
import importlib.util
import itertools
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from ngonal_atlas.constraints import (branching_report, strong_branching, triangle_23m_certificate,
                                      weakly_malnormal)
from ngonal_atlas.cyclicgrp import harvey_admissible
from ngonal_atlas.fixtures import fermat, klein
from ngonal_atlas.genvectors import (aut_orbit_reps, enumerate_X, enumerate_k_actions, fixed_vectors,
                                     is_fixed, k_apply, normalizer_extension_exists)
from ngonal_atlas.kmaps import factored, kernel_signature, order_of_C, reproduce_table4
from ngonal_atlas.monodromy import (MonodromyVector, compatible_cycle_vectors, find_monodromy_vectors,
                                    stabilizer_signature)
from ngonal_atlas.orbits import induced_signature_from_orbits, orbit_decomposition
from ngonal_atlas.permcore import coset_action, verify_generating_vector
from ngonal_atlas.sigcore import NGonalData, Signature, SphericalGroup, mu, ngonal_genus, sig

from oracles import (accepted_instances, exponent_tuples, period_multisets_with_existence, rh_genus_oracle,
                     table4_instances, word_map_contract)
from test_genvectors import ACTION_CASES
from test_genvectors import _small_factorizations as small_factorizations

GOLDEN = Path(__file__).parent / "golden"
_spec = importlib.util.spec_from_file_location("golden_regen", GOLDEN / "regen.py")
regen = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(regen)


@contextmanager
def criterion(num, label, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {num}: {label} "
                                f"({dt:.2f}s, budget {budget}s)")
    assert dt < budget, f"criterion {num} took {dt:.2f}s, budget {budget}s"


def test_c1_genus():
    with criterion(1, "genus: sigma=3 for n=7 p=(1,2,4); Riemann-Hurwitz sweep n<=12, r<=6", 5):
        assert ngonal_genus(NGonalData(7, (1, 2, 4))) == 3
        count = 0
        for n in range(2, 13):
            for r in range(1, 7):
                for ps in exponent_tuples(n, r):
                    assert ngonal_genus(NGonalData(n, ps)) == rh_genus_oracle(n, ps)
                    count += 1
        assert count > 1000


@pytest.mark.parametrize("which", [
    1,
    pytest.param(2, marks=pytest.mark.xfail(
        strict=True, reason="A4 abelianization computes to Z_3; the golden cell reads Z_2 x Z_2")),
    3,
])
def test_c2_tables(which):
    with criterion(2, f"table {which} byte-identical to golden JSON", 1):
        out = regen.render(["tables", "--which", str(which)])
        assert out == (GOLDEN / f"table{which}.json").read_text()


def test_c3_table4():
    with criterion(3, "factor --table4: exact row set, line 13 flagged", 5):
        res = regen.render(["factor", "--table4"])
        assert res == (GOLDEN / "cli" / "factor_table4.json").read_text()
        acc, rej = reproduce_table4(40)
        assert accepted_instances(acc) == table4_instances(40)
        assert [r.K for r in acc] == ["C2", "C2", "C_k", "D_k", "D_2*k", "D_4*k", "D_k", "D2",
                                      "A4", "S4", "S4", "A5", "A5"]
        assert rej == []
        line13 = next(r for r in acc if r.factored == "(2·1,2·k*x1,k·4*x1)/(2,2,k)")
        assert line13.flag and line13.n == "lcm(k*x1,4*x1)"
        assert "e*k/4, e*k/2, e*k" in line13.flag


def test_c4_c66():
    with criterion(4, "C66 over D3: one Aut-orbit, omega inverts the C3 and C11 parts", 10):
        f = factored(SphericalGroup("D", 3), [(2, 2), (2, 2), (3, 3)], [11])
        v = normalizer_extension_exists(f)
        assert v.exists and v.n == 66
        fixed = [x for a in enumerate_k_actions(f) for x in fixed_vectors(a)]
        assert len(aut_orbit_reps(fixed, 66)) == 1
        assert len(v.witnesses) == 1
        act, _ = v.witnesses[0]
        comp = act.omega_components()
        assert comp[2] == (1, 1, 1)
        assert comp[3] == (2, 2, 1) and comp[11] == (10, 10, 1)


def _search(sub, sup, m):
    out = []
    for P in compatible_cycle_vectors(sig(sub), sig(sup), m):
        out += find_monodromy_vectors(P)
    return out


def test_c5_monodromy():
    with criterion(5, "monodromy: Sigma3 class at m=3; A6 case at m=6 with image 360", 30):
        target = MonodromyVector.parse(["(1,2)", "(1,2,3)", "(1,3)"], 3).canonical().key()
        for d in (4, 5, 7, 10):
            assert [M.key() for M in _search(f"(2,{d},{2 * d})", f"(2,3,{2 * d})", 3)] == [target]
        assert [M.key() for M in _search("(2,x1,2*x1)", "(2,3,2*x1)", 3)] == [target]
        found = _search("(2,2,2,5)", "(2,4,5)", 6)
        known = MonodromyVector.parse(["(1,3)(4,6)", "(1,2)(3,5,4,6)", "(1,2,3,4,5)"], 6)
        assert known.canonical().key() in {M.key() for M in found}
        assert found and all(M.image().order == 360 for M in found)


def test_c6_word_map_contract():
    with criterion(6, "word-map contract on Klein, Fermat 4/5/7 and A6", 10):
        k = klein()
        assert word_map_contract(k.A, k.vector_A, k.N, "(2,3,7)", [3, 3, 7]) == []
        for n in (4, 5, 7):
            f = fermat(n)
            assert word_map_contract(f.A, f.vector_A, f.N, "(2,3,2*x1)", [2, 2 * n, n], {"x1": n}) == []
        for M in _search("(2,2,2,5)", "(2,4,5)", 6):
            A = M.image()
            H = A.subgroup([x for x in A.elements if x(0) == 0 and not x.is_identity()])
            assert word_map_contract(A, M.perms, H, "(2,4,5)", [2, 2, 2, 5]) == []


def test_c7_certificate():
    with criterion(7, "(2,3,m) certificate is exactly the six small triangles", 1):
        got = {str(e.signature) for e in triangle_23m_certificate()}
        assert got == {"(2,3,7)", "(2,3,8)", "(2,3,9)", "(2,3,10)", "(2,3,11)", "(2,4,5)"}


def test_c8_klein_table():
    with criterion(8, "Klein orbit table: sizes, counts, N-orbit sizes, induced signatures", 5):
        k = klein()
        rows = orbit_decomposition(k.A, k.N, k.C, k.vector_A, k.signature_A)
        assert [r.a_orbit_size for r in rows] == [84, 56, 24]
        assert [(r.count("regular"), r.count("type1"), r.count("type2"), r.count("type3"))
                for r in rows] == [(4, 0, 0, 0), (2, 0, 2, 0), (1, 1, 0, 0)]
        sizes = {kind: sorted({s for r in rows for s in r.sizes(kind)})
                 for kind in ("regular", "type1", "type2")}
        assert sizes == {"regular": [21], "type1": [3], "type2": [7]}
        assert induced_signature_from_orbits(rows, k.N, k.C) == (sig("(3,3,7)"), sig("(7,7,7)"))


def test_c9_fermat():
    with criterion(9, "Fermat n=4,5,7: vectors, weakly malnormal, not strongly branched, M(G,N)=Sym3", 30):
        for n in (4, 5, 7):
            f = fermat(n)
            assert verify_generating_vector(f.A, f.vector_A, sig(f"(2,3,{2 * n})"))
            assert verify_generating_vector(f.N, f.vector_N, sig(f"(2,{2 * n},{n})"))
            assert weakly_malnormal(f.A, f.C)
            rep = branching_report(n, Signature([n] * n))
            assert not rep.strongly_branched and not strong_branching(n, 0, rep.R)
            act, _ = coset_action(f.A, f.N)
            img = act.image_group()
            assert act.degree == 3 and img.order == 6 and not img.is_abelian()


def test_c10_property_suites():
    with criterion(10, "properties: harvey = brute force, k_apply action, fixed_vectors shortcut, mu-additivity", 60):
        checked = 0
        for n in range(2, 61):
            for periods, exists in period_multisets_with_existence(n, 6):
                assert harvey_admissible(n, periods) == (len(periods) >= 3 and exists), (n, periods)
                checked += 1
        assert checked > 30000

        for f in ACTION_CASES.values():
            kern = kernel_signature(f)
            X = list(enumerate_X(order_of_C(kern), kern.values()))[:40]
            for act in enumerate_k_actions(f):
                for v in X:
                    for g, h in itertools.product(act.elements, repeat=2):
                        assert k_apply(act, g * h, v) == k_apply(act, g, k_apply(act, h, v))

        cases = 0
        for f, X in small_factorizations():
            for act in enumerate_k_actions(f):
                assert fixed_vectors(act) == sorted(v for v in X if is_fixed(act, v))
            cases += 1
        assert cases > 400

        for sub, sup, m in [("(2,2,2,5)", "(2,4,5)", 6), ("(3,3,7)", "(2,3,7)", 8), ("(7,7,7)", "(3,3,7)", 3)]:
            for P in compatible_cycle_vectors(sig(sub), sig(sup), m):
                for M in find_monodromy_vectors(P):
                    assert mu(stabilizer_signature(M, sig(sup))) == m * mu(sig(sup))
        for row in reproduce_table4(24)[0]:
            for x in row.instances:
                assert mu(x["kernel"]) == x["factored"].K.order * mu(x["factored"].base())
