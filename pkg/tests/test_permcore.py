import itertools
import random

import pytest

from ngonal_atlas.errors import ResourceBound
from ngonal_atlas.fixtures import bring, fermat, klein
from ngonal_atlas.permcore import (FiniteGroup, Permutation, SemidirectProduct,
                                   abelianization_invariants, close, conjugate, core,
                                   coset_action, cycle_type, is_transitive, normalizer,
                                   perm_group, sphere_group_realization, verify_generating_vector)
from ngonal_atlas.sigcore import SphericalGroup, abelianization, sig

A6_TRIPLE = ("(1,3)(4,6)", "(3,5,4,6)(1,2)", "(1,2,3,4,5)")


def test_parse_and_print():
    p = Permutation.parse("(1,3)(4,6)", 6)
    assert str(p) == "(1,3)(4,6)"
    assert str(Permutation.identity(4)) == "()"
    assert Permutation.parse("()", 3).is_identity()


def test_right_action_convention():
    a, b = Permutation.parse("(1,2)", 3), Permutation.parse("(2,3)", 3)
    # a first, then b: 1 -> 2 -> 3
    assert (a * b)(0) == 2
    assert conjugate(a, b) == b.inverse() * a * b


def test_cycle_type_examples():
    assert cycle_type(Permutation.parse("(1,3)(4,6)", 6)) == [2, 2, 1, 1]
    assert cycle_type(Permutation.identity(5)) == [1] * 5
    assert cycle_type(Permutation.parse("(1,2,3,4,5)", 6)) == [5, 1]


def test_permutation_order_and_power():
    p = Permutation.parse("(1,2,3)(4,5)", 5)
    assert p.order == 6
    assert (p ** 6).is_identity() and p ** -1 == p.inverse()


def test_closures():
    assert perm_group(["(1,2)", "(1,2,3)"], 3).order == 6
    assert perm_group(list(A6_TRIPLE), 6).order == 360
    assert klein().A.order == 168


def test_closure_cap():
    with pytest.raises(ResourceBound, match="desk scale"):
        perm_group(["(1,2)", "(1,2,3,4,5,6,7)"], 7, cap=100)


def test_closure_independent_of_generator_order():
    rng = random.Random(5)
    for gens in [list(A6_TRIPLE), ["(1,2)", "(1,2,3,4,5)"], ["(1,2,3)", "(3,4,5)", "(1,5)(2,4)"]]:
        ref = set(perm_group(gens, 6).elements)
        for _ in range(4):
            rng.shuffle(gens)
            assert set(perm_group(gens, 6).elements) == ref


def test_transitivity():
    assert is_transitive(perm_group(["(1,2)", "(1,2,3)"], 3))
    assert not is_transitive(perm_group(["(1,2)"], 3))
    assert is_transitive([Permutation.parse(t, 6) for t in A6_TRIPLE], 6)


def test_normalizers_on_fixtures():
    assert klein().N.order == 21
    assert bring().N.order == 20
    A = perm_group(["(1,2)", "(1,2,3)"], 3)
    H = A.subgroup([Permutation.parse("(1,2,3)", 3)])
    assert normalizer(A, H).order == 6


def test_coset_action_klein_is_faithful_on_eight_points():
    k = klein()
    act, cr = coset_action(k.A, k.N)
    assert act.degree == 8
    assert cr.order == 1
    assert act.image_group().order == 168


@pytest.mark.parametrize("n", [4, 5, 7])
def test_fermat_monodromy_is_sym3(n):
    f = fermat(n)
    act, cr = coset_action(f.A, f.N)
    img = act.image_group()
    assert act.degree == 3 and img.order == 6
    assert img.order * cr.order == f.A.order


def test_coset_action_of_whole_group():
    G = perm_group(["(1,2)", "(1,2,3)"], 3)
    act, cr = coset_action(G, G)
    assert act.degree == 1 and cr.order == 6


@pytest.mark.parametrize("name", ["klein", "bring", "fermat5"])
def test_image_times_core_is_group_order(name):
    t = {"klein": klein, "bring": bring, "fermat5": lambda: fermat(5)}[name]()
    for H in (t.C, t.N):
        act, cr = coset_action(t.A, H)
        assert act.image_group().order * cr.order == t.A.order
        # the core is the kernel of the action
        assert set(cr.elements) == set(act.kernel().elements)


def test_faithful_on_weakly_malnormal_non_normal():
    for t in (klein(), bring()):
        act, cr = coset_action(t.A, t.C)
        assert cr.order == 1 and act.image_group().order == t.A.order


def test_core_by_brute_force():
    t = bring()
    for H in (t.C, t.N, t.A.subgroup([Permutation.parse("(1,2)(3,4)", 5)])):
        want = set(H.elements)
        for g in t.A.elements:
            want &= {g * h * g.inverse() for h in H.elements}
        assert set(core(t.A, H).elements) == want


@pytest.mark.parametrize("n", [4, 5, 7, 11])
def test_fermat_vectors(n):
    f = fermat(n)
    assert f.A.order == 6 * n * n and f.N.order == 2 * n * n and f.C.order == n
    assert verify_generating_vector(f.N, f.vector_N, sig(f"(2,{2 * n},{n})"))
    assert verify_generating_vector(f.A, f.vector_A, sig(f"(2,3,{2 * n})"))


def test_generating_vector_rejections():
    k = klein()
    x, y, z = k.vector_A
    assert not verify_generating_vector(k.A, (x, y, y), sig("(2,3,3)"))
    assert not verify_generating_vector(k.A, (x, y, z), sig("(2,3,8)"))
    # right orders and product one, but only a proper subgroup
    G = perm_group(["(1,2)", "(1,2,3)"], 3)
    t = Permutation.parse("(1,2)", 3)
    assert not verify_generating_vector(G, (t, t), sig("(2,2)"))


def test_semidirect_product_law_and_check():
    sd = fermat(5).extra["sd"]
    els = list(fermat(5).A.elements)
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * a.inverse() == sd.identity
    s12 = Permutation.parse("(1,2)", 3)
    with pytest.raises(Exception, match="homomorphism"):
        SemidirectProduct([s12], [((2, 0), (0, 1))], 5)


@pytest.mark.parametrize("K", [SphericalGroup("C", 6), SphericalGroup("D", 5), SphericalGroup("D", 6),
                               SphericalGroup("S4"), SphericalGroup("A5")])
def test_sphere_group_realization(K):
    G, gens = sphere_group_realization(K)
    assert G.order == K.order
    assert verify_generating_vector(G, gens, K.signature())
    assert tuple(sorted(abelianization_invariants(G))) == tuple(sorted(abelianization(K)))


def test_a4_abelianization_by_brute_force():
    G, _ = sphere_group_realization(SphericalGroup("A4"))
    # the derived subgroup of A4 is the Klein four-group, so the quotient is cyclic of order 3
    assert abelianization_invariants(G) == (3,)
    assert abelianization(SphericalGroup("A4")) == (3,)


def test_close_with_structured_elements():
    sd = fermat(4).extra["sd"]
    G = close([sd.element(None, (1, 0)), sd.element(None, (0, 1))])
    assert G.order == 16 and G.is_abelian()


def test_group_helpers():
    G = perm_group(["(1,2,3,4)"], 4)
    assert G.is_cyclic() and G.is_abelian()
    S3 = perm_group(["(1,2)", "(1,2,3)"], 3)
    assert not S3.is_cyclic()
    cosets, reps = S3.right_cosets(S3.subgroup([Permutation.parse("(1,2)", 3)]))
    assert len(cosets) == 3 and len(reps) == 3
    assert sorted(len(c) for c in cosets) == [2, 2, 2]
    assert all(FiniteGroup([r], S3.identity) for r in reps)
    assert set(itertools.chain.from_iterable(cosets)) == set(S3.elements)
