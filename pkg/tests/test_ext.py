import random
from math import comb

import pytest

from pnderived.complex import LineBundleComplex, direct_sum, shift, twist
from pnderived.ext import (
    INDETERMINATE,
    ExtTable,
    coordinate_point,
    default_sample,
    ext_table,
    koszul_point,
    line_bundle_object_check,
    point_forms,
    point_object_check,
    serre_duality_check,
    serre_functor,
    sheaf_cohomology,
)
from pnderived.linalg import PrimeField
from pnderived.poly import HomogPoly
from pnderived.randgen import random_complex


def O(n, d, degree=0):
    return LineBundleComplex.single(n, d, degree)


def test_ext_table_behaves_like_a_sparse_vector():
    t = ExtTable({0: 1, 2: 0, -1: 3})
    assert dict(t) == {0: 1, -1: 3}
    assert t[5] == 0
    assert t.euler() == 1 - 3
    assert t.shifted(1) == ExtTable({-1: 1, -2: 3})
    assert (t + t)[-1] == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_ext_between_line_bundles_is_bott(n):
    # Ext^k(O(a), O(b)) = H^k(O(b - a))
    for a in (-2, 0, 1):
        for b in (-5, -1, 0, 3):
            d = b - a
            want = {0: comb(n + d, n)} if d >= 0 else ({n: comb(-d - 1, n)} if d <= -n - 1 else {})
            assert dict(ext_table(O(n, a), O(n, b))) == want


def test_shifts_move_ext_degrees():
    a, b = O(2, 0), O(2, -3)
    base = ext_table(a, b)
    assert ext_table(shift(a, 1), b) == base.shifted(-1)
    assert ext_table(a, shift(b, 2)) == base.shifted(2)


def test_serre_functor_and_check():
    c = O(2, 1)
    s = serre_functor(c)
    assert s.terms == {-2: (-2,)}
    rng = random.Random(5)
    for _ in range(5):
        a = random_complex(2, rng, (-4, 2), max_length=2, max_rank=2)
        b = random_complex(2, rng, (-4, 2), max_length=2, max_rank=2)
        assert serre_duality_check(a, b)


def test_skyscrapers_from_random_forms():
    rng = random.Random(17)
    for n in (1, 2, 3):
        c1 = [rng.randint(-3, 3) for _ in range(n + 1)]
        c1[0] = 1
        c2 = list(c1)
        c2[-1] += 1
        p, q = koszul_point(point_forms(c1), n), koszul_point(point_forms(c2), n)
        assert dict(ext_table(p, q)) == {}
        assert dict(ext_table(p, p)) == {k: comb(n, k) for k in range(n + 1)}
        # a point has one global section and Euler characteristic 1 against O(d)
        assert dict(sheaf_cohomology(p)) == {0: 1}


def test_koszul_point_validation():
    with pytest.raises(ValueError):
        koszul_point([HomogPoly.var(3, 0), HomogPoly.var(3, 0)], 2)
    with pytest.raises(ValueError):
        point_forms([0, 0, 0])


def test_point_check_accepts_skyscraper():
    rep = point_object_check(coordinate_point(2, 1))
    assert rep.serre_fixed is True and rep.simple and rep.no_negative_self_ext
    assert rep.is_point
    assert rep.self_ext == ExtTable({0: 1, 1: 2, 2: 1})


def test_point_check_rejects_line_bundle_by_dimensions():
    rep = point_object_check(O(2, 0))
    assert rep.serre_fixed is False and rep.mode == "dimension"
    assert not rep.is_point


def test_point_check_rejects_non_simple():
    p = coordinate_point(1, 0)
    rep = point_object_check(direct_sum(p, p))
    assert not rep.simple and not rep.is_point


def test_point_check_on_elliptic_like_object_is_not_claimed():
    # on P^1, O(-1) is simple but not Serre-fixed up to shift
    rep = point_object_check(O(1, -1))
    assert rep.serre_fixed in (False, INDETERMINATE)
    assert not rep.is_point


def test_line_bundle_check():
    rep = line_bundle_object_check(O(2, 3))
    assert rep.passed and rep.common_shift == 0
    rep = line_bundle_object_check(shift(O(2, -1), 1))
    assert rep.passed and rep.common_shift == 1
    rep = line_bundle_object_check(coordinate_point(2, 0))
    assert not rep.passed and rep.common_shift is None
    rep = line_bundle_object_check(direct_sum(O(1, 0), O(1, 1)))
    assert not rep.passed


def test_default_sample_is_seeded():
    assert default_sample(2, seed=3) == default_sample(2, seed=3)
    assert default_sample(2)[:3] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_prime_field_ext_matches_rationals_for_generic_prime():
    rng = random.Random(23)
    for _ in range(5):
        a = random_complex(2, rng, max_length=2)
        b = random_complex(2, rng, max_length=2)
        assert ext_table(a, b, PrimeField(32003)) == ext_table(a, b)


def test_prime_field_can_see_more_ext():
    # O(-1) --2*x0--> O on P^1 is a skyscraper over Q; mod 2 the map is zero
    # and the complex splits as O(-1)[1] + O
    two_x0 = HomogPoly(2, 1, {(1, 0): 2})
    c = LineBundleComplex(1, {-1: (-1,), 0: (0,)}, {-1: ((two_x0,),)})
    assert ext_table(c, c) == ExtTable({0: 1, 1: 1})
    assert ext_table(c, c, PrimeField(2)) == ExtTable({0: 2, 1: 2})
    assert ext_table(c, c, PrimeField(3)) == ExtTable({0: 1, 1: 1})


def test_twisting_both_arguments_preserves_ext():
    rng = random.Random(29)
    for _ in range(5):
        a = random_complex(2, rng, max_length=2)
        b = random_complex(2, rng, max_length=2)
        assert ext_table(twist(a, 2), twist(b, 2)) == ext_table(a, b)


def test_mismatched_dimensions():
    with pytest.raises(ValueError):
        ext_table(O(1, 0), O(2, 0))
