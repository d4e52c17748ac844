import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pnderived.complex import (
    ChainMap,
    LineBundleComplex,
    cone,
    direct_sum,
    dual,
    prune,
    shift,
    tensor,
    twist,
    validate,
    validate_chain_map,
)
from pnderived.ext import ext_table
from pnderived.numerics import chern_character
from pnderived.poly import HomogPoly, parse_poly
from pnderived.randgen import random_chain_map, random_complex


def p(text, nvars=2):
    return parse_poly(text, nvars)


def euler_sequence_p1():
    # O(-1) --(-x1, x0)--> O^2
    return LineBundleComplex(1, {-1: (-1,), 0: (0, 0)}, {-1: ((p("-x1"),), (p("x0"),))})


def test_single_and_accessors():
    c = LineBundleComplex.single(2, -1, degree=3)
    assert c.degrees() == [3]
    assert c.term(3) == (-1,) and c.term(0) == ()
    assert c.size() == 1
    assert LineBundleComplex.zero(2).is_empty()


def test_validate_accepts_euler_sequence():
    assert validate(euler_sequence_p1()).ok


def test_validate_reports_nonzero_square():
    x1 = p("x1")
    c = LineBundleComplex(1, {0: (0,), 1: (1,), 2: (2,)}, {0: ((x1,),), 1: ((x1,),)})
    rep = validate(c)
    assert not rep.ok
    assert rep.violation.degree == 0 and rep.violation.entry == (0, 0)


def test_validate_reports_wrong_degree():
    c = LineBundleComplex(1, {0: (0,), 1: (2,)}, {0: ((p("x0"),),)})
    rep = validate(c)
    assert not rep.ok and "degree" in rep.violation.message


def test_dual_of_single_map():
    # [O --x0--> O(1)] in degrees 0, 1 dualises to [O(-1) --x0--> O] in degrees -1, 0
    c = LineBundleComplex(1, {0: (0,), 1: (1,)}, {0: ((p("x0"),),)})
    d = dual(c)
    assert d.terms == {-1: (-1,), 0: (0,)}
    assert d.diff(-1) == ((p("x0"),),)
    assert dual(d) == c


def test_shift_signs():
    c = euler_sequence_p1()
    s = shift(c, 1)
    assert s.terms == {-2: (-1,), -1: (0, 0)}
    assert s.diff(-2) == ((p("x1"),), (p("-x0"),))
    assert shift(shift(c, 1), -1) == c
    assert shift(c, 2).diff(-3) == c.diff(-1)


def test_twist_keeps_differentials():
    c = twist(euler_sequence_p1(), 3)
    assert c.terms == {-1: (2,), 0: (3, 3)}
    assert validate(c).ok


def test_cone_of_identity_is_contractible():
    c = euler_sequence_p1()
    k = cone(ChainMap.identity(c))
    assert validate(k).ok
    assert prune(k).is_empty()


def test_cone_layout_and_sign():
    a = LineBundleComplex.single(1, -1)
    b = LineBundleComplex.single(1, 0)
    f = ChainMap(a, b, {0: ((p("x0"),),)})
    c = cone(f)
    assert c.terms == {-1: (-1,), 0: (0,)}
    assert c.diff(-1) == ((p("x0"),),)


def test_cone_rejects_non_chain_map():
    c = euler_sequence_p1()
    f = ChainMap(c, c, {-1: ((HomogPoly.constant(2, 1),),)})
    assert not validate_chain_map(f).ok
    with pytest.raises(ValueError):
        cone(f)


def test_tensor_with_structure_sheaf_is_identity():
    c = euler_sequence_p1()
    assert tensor(c, LineBundleComplex.single(1, 0)) == c
    assert tensor(LineBundleComplex.single(1, 2), c) == twist(c, 2)


def test_direct_sum_adds_ext():
    a, b = LineBundleComplex.single(2, 0), LineBundleComplex.single(2, -1)
    o = LineBundleComplex.single(2, 0)
    assert ext_table(o, direct_sum(a, b)) == ext_table(o, a) + ext_table(o, b)


def test_prune_removes_constant_pairs():
    one = HomogPoly.constant(2, 1)
    c = LineBundleComplex(1, {0: (0, -1), 1: (0,)}, {0: ((one, p("x0")),)})
    # O + O(-1) --[1, x0]--> O: the unit cancels and O(-1) survives
    pc = prune(c)
    assert pc.terms == {0: (-1,)}
    assert validate(pc).ok
    assert ext_table(LineBundleComplex.single(1, 0), pc) == ext_table(LineBundleComplex.single(1, 0), c)


seeds = st.integers(0, 10**6)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 3))
def test_random_complexes_are_valid_and_closed_under_operations(seed, n):
    rng = random.Random(seed)
    a = random_complex(n, rng, (-n - 1, 1))
    b = random_complex(n, rng, (-n - 1, 1), max_length=2, max_rank=2)
    for c in (a, b, shift(a, 3), twist(a, -2), dual(a), direct_sum(a, b), tensor(a, b), prune(a)):
        assert validate(c).ok
    assert dual(dual(a)) == a
    assert chern_character(prune(a)) == chern_character(a)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_chain_maps_commute(seed):
    rng = random.Random(seed)
    a = random_complex(2, rng)
    b = random_complex(2, rng)
    f = random_chain_map(a, b, rng)
    assert validate_chain_map(f).ok
    c = cone(f)
    assert validate(c).ok
    assert chern_character(c) == chern_character(b) - chern_character(a)
