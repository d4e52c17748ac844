import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pnderived import _kernels_py as pure
from pnderived import kernels

compiled = pytest.importorskip("pnderived._kernels")


def random_matrix(rng, rows, cols, lo, hi, density=0.6):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def low_rank(rng, rows, cols, rank, bound):
    a = random_matrix(rng, rows, rank, -bound, bound, 1.0)
    b = random_matrix(rng, rank, cols, -bound, bound, 1.0)
    return [[sum(x * y for x, y in zip(r, col)) for col in zip(*b)] for r in a]


@pytest.mark.skipif(os.environ.get("PNDERIVED_PURE_PYTHON", "") not in ("", "0"), reason="fallback forced")
def test_selected_backend():
    assert kernels.BACKEND == "cython"
    assert compiled.BACKEND == "cython" and pure.BACKEND == "python"


def test_environment_forces_fallback():
    env = dict(os.environ, PNDERIVED_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import pnderived; print(pnderived.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


matrices = st.builds(
    lambda seed, r, c, b: random_matrix(random.Random(seed), r, c, -b, b),
    st.integers(0, 10**6),
    st.integers(0, 9),
    st.integers(0, 9),
    st.sampled_from([1, 3, 10**3, 10**12, 10**30]),
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_int_agrees(m):
    assert compiled.rank_int(m) == pure.rank_int(m)


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 32003, 2147483647, 2**61 - 1]))
def test_mod_p_agrees(m, p):
    assert compiled.rank_mod_p(m, p) == pure.rank_mod_p(m, p)
    assert compiled.rref_mod_p(m, p) == pure.rref_mod_p(m, p)


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(1, 12))
def test_rref_frac_agrees(m, den):
    q = [[Fraction(x, den) for x in row] for row in m]
    assert compiled.rref_frac(q) == pure.rref_frac(q)


def test_rank_deficient_with_overflowing_entries():
    rng = random.Random(5)
    for bound in (10, 10**5, 10**9):
        for _ in range(10):
            m = low_rank(rng, 12, 14, rng.randint(1, 8), bound)
            want = pure.rank_int(m)
            assert compiled.rank_int(m) == want
            assert compiled.rref_frac(m) == pure.rref_frac(m)


def test_inputs_are_not_mutated():
    m = random_matrix(random.Random(2), 6, 6, -5, 5)
    copy = [list(r) for r in m]
    compiled.rank_int(m)
    compiled.rref_frac(m)
    compiled.rref_mod_p(m, 7)
    assert m == copy


def test_empty_shapes():
    for m in ([], [[]], [[], []]):
        assert compiled.rank_int(m) == pure.rank_int(m) == 0
        assert compiled.rref_frac(m) == pure.rref_frac(m)
