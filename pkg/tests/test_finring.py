import itertools

import pytest

from quasicartan import finring as fr


FIXTURE_RINGS = [fr.make_zmod(n) for n in (2, 4, 6, 8)] + \
    [fr.make_gf(2), fr.make_gf(3), fr.make_gf(5), fr.make_gf(2, 2),
     fr.make_gf(3, 2), fr.make_gf(2, 3)]


@pytest.mark.parametrize("R", FIXTURE_RINGS, ids=lambda R: R.name)
def test_ring_axioms(R):
    assert fr.validate_ring(R) == []


def test_zmod_basic_facts():
    R2 = fr.make_zmod(2)
    assert R2.add(R2.one, R2.one) == R2.zero
    R4 = fr.make_zmod(4)
    assert R4.mul(2, 2) == R4.zero
    R6 = fr.make_zmod(6)
    assert R6.mul(3, 3) == 3  # idempotent


def test_zmod_rejects_small_n():
    with pytest.raises(ValueError):
        fr.make_zmod(1)


def test_units_by_exhaustive_inverse_scan():
    # oracle: directly scan for multiplicative inverses
    for R, expected in [(fr.make_zmod(6), {1, 5}),
                        (fr.make_gf(5), {1, 2, 3, 4}),
                        (fr.make_zmod(4), {1, 3})]:
        oracle = {a for a in R.all_indices()
                  if any(R.mul(a, b) == R.one for b in R.all_indices())}
        assert fr.ring_units(R) == expected == oracle


def test_units_form_a_group():
    for R in FIXTURE_RINGS:
        units = fr.ring_units(R)
        assert R.one in units
        for a in units:
            inv = R.unit_inverse(a)
            assert inv in units
            assert R.mul(a, inv) == R.one
            # uniqueness of the inverse
            assert sum(1 for b in R.all_indices() if R.mul(a, b) == R.one) == 1
            for b in units:
                assert R.mul(a, b) in units


def test_idempotents():
    assert fr.ring_idempotents(fr.make_zmod(6)) == {0, 1, 3, 4}
    assert fr.ring_idempotents(fr.make_zmod(4)) == {0, 1}
    R = fr.make_gf(3)
    assert fr.ring_idempotents(R) == {R.zero, R.one}


def test_indecomposable_and_reduced():
    assert not fr.is_indecomposable(fr.make_zmod(6))
    assert fr.is_indecomposable(fr.make_zmod(4))
    assert fr.is_indecomposable(fr.make_gf(2))
    assert not fr.is_reduced(fr.make_zmod(4))
    assert fr.is_reduced(fr.make_zmod(6))
    assert fr.is_reduced(fr.make_gf(2, 2))
    F5 = fr.make_gf(5)
    assert fr.is_reduced(F5) and fr.is_indecomposable(F5)


def test_gf_constructions():
    F4 = fr.make_gf(2, 2)
    assert F4.size == 4 and len(fr.ring_units(F4)) == 3
    F3 = fr.make_gf(3, 1)
    assert fr.ring_units(F3) == {1, 2}
    with pytest.raises(ValueError):
        fr.make_gf(4, 1)  # not prime
    with pytest.raises(ValueError):
        fr.make_gf(2, 2, modulus=[0, 0, 1])  # x^2 is reducible
    F8 = fr.make_gf(2, 3)
    assert F8.size == 8 and len(fr.ring_units(F8)) == 7


def test_solve_linear_examples():
    F3 = fr.make_gf(3)
    assert fr.solve_linear(F3, [([2], F3.one)], 1) == [(2,)]
    R4 = fr.make_zmod(4)
    assert fr.solve_linear(R4, [([2], R4.zero)], 1) == [(0,), (2,)]
    F2 = fr.make_gf(2)
    sols = fr.solve_linear(F2, [([1, 1], F2.one), ([1, 1], F2.zero)], 2)
    assert sols == []


def test_solve_linear_matches_direct_enumeration():
    # oracle: re-verify every returned vector, and confirm the count by a
    # fully independent scan
    R = fr.make_zmod(6)
    equations = [([2, 3], 0), ([1, 1], 5)]
    sols = fr.solve_linear(R, equations, 2)
    direct = []
    for x in R.all_indices():
        for y in R.all_indices():
            if R.add(R.mul(2, x), R.mul(3, y)) == R.zero and \
                    R.add(x, y) == 5:
                direct.append((x, y))
    assert sols == direct


def test_solve_linear_cap():
    R = fr.make_zmod(16)
    with pytest.raises(fr.CapExceeded) as exc:
        fr.solve_linear(R, [], 6, cap=10 ** 6)
    assert exc.value.attempted_size == 16 ** 6


def test_validate_catches_broken_table():
    R = fr.make_zmod(4)
    broken_mul = [list(row) for row in R.mul_table]
    broken_mul[2][3] = 1  # 2*3 = 1 breaks commutativity/associativity
    bad = fr.validate_ring(
        fr.FiniteRing("broken", R.elements, R.add_table, broken_mul, 0, 1))
    assert bad != []
