import itertools
import random

import pytest

from quasicartan import finring as fr, groupoid as gp, grouprings as gr


def _ring(name):
    return {"gf3": fr.make_gf(3), "gf4": fr.make_gf(2, 2),
            "z4": fr.make_zmod(4), "z6": fr.make_zmod(6),
            "z8": fr.make_zmod(8), "gf5": fr.make_gf(5)}[name]


def test_ring_axioms_of_group_ring():
    # the group ring is itself a ring: spot-check the laws randomly
    T = gr.TwistedGroupRing(fr.make_gf(5), gp.cyclic_group(3))
    rng = random.Random(1)
    elems = T.elements()
    for _ in range(200):
        f, g, h = (elems[rng.randrange(len(elems))] for _ in range(3))
        assert T.mul(T.mul(f, g), h) == T.mul(f, T.mul(g, h))
        assert T.mul(f, T.add(g, h)) == T.add(T.mul(f, g), T.mul(f, h))
        assert T.mul(T.one(), f) == f and T.mul(f, T.one()) == f


def test_twisted_multiplication_example():
    # over GF(5) with c(g,g) = 4: δ_g * δ_g = 4·δ_e
    T = gr.TwistedGroupRing(fr.make_gf(5), gp.cyclic_group(2), {(1, 1): 4})
    assert T.mul(T.delta(1), T.delta(1)) == T.delta(0, 4)


def test_rejects_bad_cocycles():
    with pytest.raises(ValueError):
        gr.TwistedGroupRing(fr.make_zmod(4), gp.cyclic_group(2), {(1, 1): 2})
    with pytest.raises(ValueError):
        gr.TwistedGroupRing(fr.make_gf(3), gp.cyclic_group(2), {(0, 1): 2})


@pytest.mark.parametrize("ring_name,n,expect_total,expect_nontrivial", [
    ("gf3", 2, 4, 0),
    ("z4", 2, 8, 4),
    ("gf4", 2, 12, 6),
])
def test_unit_counts(ring_name, n, expect_total, expect_nontrivial):
    T = gr.TwistedGroupRing(_ring(ring_name), gp.cyclic_group(n))
    units, trivial, nontrivial = gr.enumerate_units(T)
    assert len(units) == expect_total
    assert len(nontrivial) == expect_nontrivial
    assert len(trivial) == expect_total - expect_nontrivial


@pytest.mark.parametrize("ring_name,n", [("gf3", 2), ("z4", 2), ("z6", 2),
                                         ("gf5", 3), ("gf4", 2)])
def test_units_against_pairwise_oracle(ring_name, n):
    T = gr.TwistedGroupRing(_ring(ring_name), gp.cyclic_group(n))
    fast = gr.enumerate_units(T)
    slow = gr.enumerate_units(T, oracle=True)
    assert fast == slow


def test_units_of_twisted_ring_against_oracle():
    T = gr.TwistedGroupRing(fr.make_gf(5), gp.cyclic_group(2), {(1, 1): 4})
    fast = gr.enumerate_units(T)
    slow = gr.enumerate_units(T, oracle=True)
    assert fast == slow
    # c(g,g) = 4 = (2·g)² means the twist is a coboundary, so the unit count
    # matches the untwisted ring
    untwisted = gr.TwistedGroupRing(fr.make_gf(5), gp.cyclic_group(2))
    assert len(fast[0]) == len(gr.enumerate_units(untwisted)[0])


def test_every_enumerated_unit_is_invertible():
    T = gr.TwistedGroupRing(fr.make_zmod(4), gp.cyclic_group(2))
    units, _, _ = gr.enumerate_units(T)
    unit_set = set(units)
    for f in units:
        assert any(T.mul(f, x) == T.one() and T.mul(x, f) == T.one()
                   for x in unit_set)


def test_decomposable_unit_z6():
    # 3 is a nontrivial idempotent of Z/6
    T = gr.TwistedGroupRing(fr.make_zmod(6), gp.cyclic_group(2))
    a, b = gr.decomposable_unit(T, 3, 1)
    assert a == (3, 4)
    assert T.mul(a, b) == T.one() and T.mul(b, a) == T.one()
    assert not T.is_trivial_unit(a)


def test_decomposable_unit_rejects_bad_input():
    T = gr.TwistedGroupRing(fr.make_zmod(6), gp.cyclic_group(2))
    with pytest.raises(ValueError):
        gr.decomposable_unit(T, 2, 1)  # 2 is not idempotent in Z/6
    with pytest.raises(ValueError):
        gr.decomposable_unit(T, 3, 0)  # identity group element


def test_nonreduced_unit_z4():
    # 2² = 0 in Z/4: 1 - 2δ_g is a self-inverse nontrivial unit
    T = gr.TwistedGroupRing(fr.make_zmod(4), gp.cyclic_group(2))
    a, inv = gr.nonreduced_unit(T, 2, 1)
    assert a == (1, 2) and inv == (1, 2)
    assert T.mul(a, a) == T.one()


def test_nonreduced_unit_z8_geometric_series():
    T = gr.TwistedGroupRing(fr.make_zmod(8), gp.cyclic_group(2))
    a, inv = gr.nonreduced_unit(T, 2, 1)
    assert a == (1, 6)
    assert T.mul(a, inv) == T.one() and T.mul(inv, a) == T.one()
    assert inv != a


def test_nonreduced_unit_rejects_non_nilpotent():
    T = gr.TwistedGroupRing(fr.make_zmod(6), gp.cyclic_group(2))
    with pytest.raises(ValueError):
        gr.nonreduced_unit(T, 2, 1)  # 2 is not nilpotent mod 6
    with pytest.raises(ValueError):
        gr.nonreduced_unit(T, 0, 1)


def test_unique_products_finite_group():
    H = gp.cyclic_group(5)
    assert gr.unique_product_search(H, [0, 1], [0, 2]) is not None
    # the whole group against itself has no unique product
    full = list(H.elements)
    assert gr.unique_product_search(H, full, full) is None


def test_unique_products_free_abelian():
    A = [(0,), (1,), (5,)]
    B = [(0,), (2,)]
    w = gr.unique_product_search("free_abelian", A, B)
    assert w is not None
    counts = {}
    for a in A:
        for b in B:
            counts[a[0] + b[0]] = counts.get(a[0] + b[0], 0) + 1
    assert counts[w[0]] == 1


def test_unique_products_rank_two():
    A = [(0, 0), (1, 2), (3, 1)]
    B = [(0, 0), (2, 2)]
    w = gr.unique_product_search("free_abelian", A, B)
    assert w is not None
    assert gr.strojnowski_check("free_abelian", A, B)


def test_strojnowski_second_witness():
    # in an ordered group both extremes are unique products
    rng = random.Random(42)
    for _ in range(20):
        A = sorted({(rng.randrange(-5, 6),) for _ in range(4)})
        B = sorted({(rng.randrange(-5, 6),) for _ in range(3)})
        if len(A) + len(B) <= 2:
            continue
        assert gr.strojnowski_check("free_abelian", A, B)
    with pytest.raises(ValueError):
        gr.strojnowski_check("free_abelian", [(0,)], [(1,)])


def test_subgroup_certifies_no_unique_product():
    # A = B = a nontrivial finite subgroup: every product has |H| factorizations
    H = gp.cyclic_group(4)
    sub = [0, 2]
    counts = gr._pairwise_products(H, sub, sub)
    assert all(len(v) == 2 for v in counts.values())
    assert gr.unique_product_search(H, sub, sub) is None


def test_elements_cap():
    T = gr.TwistedGroupRing(fr.make_zmod(8), gp.cyclic_group(8))
    with pytest.raises(gr.CapExceeded):
        T.elements(cap=10 ** 6)
