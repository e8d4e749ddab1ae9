import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import vp, zp_lattice_from_integer_lattice
from padicprec.errors import DeficientRank
from padicprec.lattice import canonical_residue, diffused_digits, hnf


def test_hnf_diagonal():
    assert hnf([[1024, 0], [0, 32]], 2) == [[1024, 0], [0, 32]]


def test_hnf_combines_generators():
    # generated by (1024, 1024) and (32, -32): the lattice of u, v = x + y, x - y
    assert hnf([[1024, 1024], [32, -32], [2**40, 0], [0, 2**40]], 2) == [[32, 2016], [0, 2048]]


def test_hnf_units_become_one():
    assert hnf([[3, 5], [0, 7]], 2) == [[1, 0], [0, 1]]


def test_hnf_rational_entries():
    out = hnf([[Fraction(1, 4), Fraction(1, 3)], [0, 2]], 2)
    assert out[0][0] == Fraction(1, 4)
    assert out[1] == [0, 2]
    assert 0 <= out[0][1] < 2


def test_hnf_rank_deficient():
    with pytest.raises(DeficientRank):
        hnf([[2, 4], [1, 2]], 2)


def test_canonical_residue():
    assert canonical_residue(13, 2, 3) == 5
    assert canonical_residue(Fraction(1, 3), 2, 4) == 11
    assert canonical_residue(Fraction(3, 4), 2, 1) == Fraction(3, 4)
    assert canonical_residue(Fraction(3, 4), 2, -2) == 0


@st.composite
def integer_lattices(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(1, 4))
    k = draw(st.integers(n, n + 3))
    rows = [[draw(st.integers(-(p**6), p**6)) for _ in range(n)] for _ in range(k)]
    return p, n, rows


@given(integer_lattices())
def test_hnf_matches_integer_oracle(case):
    p, n, rows = case
    big = p**8
    gens = rows + [[big if i == j else 0 for j in range(n)] for i in range(n)]
    ours = hnf(gens, p, n)
    theirs = zp_lattice_from_integer_lattice(rows, p, n, big)
    assert ours == theirs


def _closure_size(gens, p, K):
    """Number of points of the lattice spanned by ``gens`` modulo ``p**K``."""
    mod = p**K
    gens = [tuple(x % mod for x in g) for g in gens]
    seen = {tuple(0 for _ in gens[0])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % mod for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("seed", range(25))
def test_diffused_digits_by_counting(seed):
    rng = random.Random(seed)
    p = rng.choice((2, 3))
    K = 5 if p == 2 else 3
    n = 2
    rows = [[rng.randrange(p**K) * p ** rng.randrange(2) for _ in range(n)] for _ in range(2)]
    gens = rows + [[p**K if i == j else 0 for j in range(n)] for i in range(n)]
    H = hnf(gens, p, n)
    # H0 is the product of the coordinate projections of H
    colmins = [min(vp(g[j], p) for g in gens if g[j] % p**K) if any(g[j] % p**K for g in gens) else K
               for j in range(n)]
    h0 = p ** (sum(K - c for c in colmins))
    count = _closure_size(gens, p, K)
    index = h0 // count
    assert h0 % count == 0
    assert p ** diffused_digits(H, p) == index


def test_diffused_digits_example():
    assert diffused_digits([[32, 2016], [0, 2048]], 2) == 6
    assert diffused_digits([[1024, 0], [0, 32]], 2) == 0


def test_hnf_is_idempotent():
    for rows in itertools.product([2, 6, 9], repeat=2):
        H = hnf([list(rows), [0, 4]], 3)
        assert hnf(H, 3) == H
