import random
from fractions import Fraction

import pytest

from toricpos import (
    NotIntegral,
    ToricDivisor,
    asymptotic_nonvanishing,
    canonical_divisor,
    cohomology_dims,
    divisor_of_character,
    full_subcomplex,
    lattice_points,
    reduced_cohomology,
    section_polyhedron,
    zero_divisor,
)
from toricpos.cohomology import bad_subsets

from .conftest import random_divisors
from .oracles import brute_force_cohomology


def test_reduced_cohomology_conventions(totaro, p2):
    assert reduced_cohomology(full_subcomplex(totaro, ()), 3) == (1, 0, 0, 0)
    assert reduced_cohomology(full_subcomplex(totaro, (2, 3, 4, 5)), 3) == (0, 0, 1, 0)
    assert reduced_cohomology(full_subcomplex(p2, (0, 1, 2)), 2) == (0, 0, 1)
    assert reduced_cohomology(full_subcomplex(totaro, (0, 1)), 3) == (0, 1, 0, 0)


def test_bad_subset_index_totaro(totaro):
    index = bad_subsets(totaro)
    assert index[0] == (((), 1),)
    assert [s for s, _ in index[1]] == [(0, 1), (2, 4), (3, 5)]
    assert [s for s, _ in index[2]] == [(0, 1, 2, 4), (0, 1, 3, 5), (2, 3, 4, 5)]
    assert [s for s, _ in index[3]] == [(0, 1, 2, 3, 4, 5)]


def test_structure_sheaf_of_complete_fan(example_fans):
    for fan in example_fans:
        dims = cohomology_dims(zero_divisor(fan)).dims
        assert dims[0] == 1 and all(d == 0 for d in dims[1:]), fan.name


def test_negative_degree_on_p1(p1):
    dims = cohomology_dims(ToricDivisor(p1, (-2, 0))).dims
    assert dims == (0, 1)
    table = cohomology_dims(ToricDivisor(p1, (0, -2)))
    assert table.dims == (0, 1)
    # the unique contributing weight for this orientation
    assert table.witnesses[0][1] == ((-1,),)


def test_p2_twists(p2):
    assert cohomology_dims(ToricDivisor(p2, (-4, 0, 0))).dims == (0, 0, 3)
    assert cohomology_dims(ToricDivisor(p2, (3, 0, 0))).dims == (10, 0, 0)


def test_h2_of_small_positive_twist(totaro, totaro_L, totaro_H):
    # 2L + H = 2(L + H/2): the smallest integral class along a small positive
    # twist of the example direction; its H^2 is exactly one dimensional
    table = cohomology_dims(2 * totaro_L + totaro_H)
    assert table.dims[2] == 1
    witness = [w for w in table.witnesses if w[0] == (2, 3, 4, 5)]
    assert witness and witness[0][1] == ((0, 0, 0),)
    # and at the larger twist L + H the obstructing region is empty
    assert cohomology_dims(totaro_L + totaro_H).dims[2] == 0


def test_rejects_non_integral(totaro, totaro_L):
    with pytest.raises(NotIntegral):
        cohomology_dims(Fraction(1, 2) * totaro_L)


def test_serre_duality_randomized(example_fans):
    for fan in example_fans:
        k = canonical_divisor(fan)
        for d in random_divisors(fan, 40, seed="serre"):
            left = cohomology_dims(d).dims
            right = cohomology_dims(k - d).dims
            assert left == tuple(reversed(right)), (fan.name, d.coeffs)


def test_linear_equivalence_invariance(totaro):
    rng = random.Random(9)
    for d in random_divisors(totaro, 10, seed="lin"):
        m = tuple(rng.randint(-3, 3) for _ in range(3))
        shifted = d + divisor_of_character(totaro, m)
        assert cohomology_dims(shifted).dims == cohomology_dims(d).dims


def test_h0_equals_section_polytope_count(example_fans):
    for fan in example_fans:
        for d in random_divisors(fan, 25, seed="h0"):
            expected = len(lattice_points(section_polyhedron(d)))
            assert cohomology_dims(d).dims[0] == expected


def test_euler_characteristic_equivalence_invariant(totaro):
    rng = random.Random(4)
    for d in random_divisors(totaro, 8, seed="euler"):
        m = tuple(rng.randint(-2, 2) for _ in range(3))
        shifted = d + divisor_of_character(totaro, m)
        assert (
            cohomology_dims(d).euler_characteristic
            == cohomology_dims(shifted).euler_characteristic
        )


def test_brute_force_oracle_agreement(example_fans):
    for fan in example_fans:
        for d in random_divisors(fan, 6, lo=-3, hi=3, seed="oracle"):
            assert cohomology_dims(d).dims == brute_force_cohomology(
                fan, d.coeffs
            ), (fan.name, d.coeffs)


def test_asymptotic_nonvanishing_on_p1(p1):
    assert asymptotic_nonvanishing(ToricDivisor(p1, (1, 0)), 1) == (False, None)
    verdict, witness = asymptotic_nonvanishing(ToricDivisor(p1, (-1, 0)), 1)
    assert verdict and witness.subset == (0, 1)


def test_asymptotic_nonvanishing_of_perturbed_example(totaro, totaro_L, totaro_H):
    eps = Fraction(1, 100)
    verdict, witness = asymptotic_nonvanishing(totaro_L - eps * totaro_H, 2)
    assert verdict and witness.subset == (2, 3, 4, 5)
    verdict_up, witness_up = asymptotic_nonvanishing(totaro_L + eps * totaro_H, 2)
    assert verdict_up and witness_up.subset == (2, 3, 4, 5)
    # far enough along the ample direction the obstruction dies
    assert asymptotic_nonvanishing(totaro_L + 2 * totaro_H, 2)[0] is False


def test_witness_totals_match_dims(totaro):
    for d in random_divisors(totaro, 6, seed="witness"):
        table = cohomology_dims(d)
        index = bad_subsets(totaro)
        by_subset = {s: p for p in range(4) for s, _ in index[p]}
        totals = [0, 0, 0, 0]
        for s, pts, dim in table.witnesses:
            totals[by_subset[s]] += dim * len(pts)
        assert tuple(totals) == table.dims
