import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkenergy import expand_energy, leading_data, taylor_polynomial
from rkenergy.linalg import (
    hilbert,
    is_negative_definite_exact,
    is_symmetric,
    leading_principal_minors,
    symmetric_eigenvalues,
)

# mpmath eigsy at 60 digits, frozen
ORACLE_EIGS = {
    11: [-7.870182892435128e-11, -3.8735087220926209e-8, -9.9096636169406648e-6,
         -0.0013868814300448482, -0.082261305244614448, -1.303842666515403],
    12: [1.4545802987334061e-10, -8.54170471866404e-11, -3.9333417052825339e-8,
         -9.9161747650886928e-6, -0.0013869110197108372, -0.082261362226104802,
         -1.3038427211984861],
}
HILBERT6_EIGS = [1.6188998589243391, 0.24236087057520955, 0.016321521319875822,
                 0.0006157483541826577, 1.2570757122625195e-5, 1.0827994845655498e-7]


def det_by_permutations(M):
    n = len(M)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = F(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= M[i][j]
        total += term
    return total


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


@st.composite
def symmetric_rational(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    G = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = draw(rationals)
    return G


@settings(max_examples=150, deadline=None)
@given(symmetric_rational())
def test_minors_match_permutation_determinants(G):
    minors = leading_principal_minors(G)
    for k, m in enumerate(minors):
        assert m == det_by_permutations([row[: k + 1] for row in G[: k + 1]])
    # stops exactly at the first vanishing minor
    assert all(m != 0 for m in minors[:-1])
    if len(minors) < len(G):
        assert minors[-1] == 0


@settings(max_examples=150, deadline=None)
@given(symmetric_rational())
def test_definiteness_agrees_with_float_eigenvalues(G):
    eigs = np.linalg.eigvalsh(np.array(G, dtype=float))
    exact = is_negative_definite_exact(G)
    if eigs.max() < -1e-9:
        assert exact
    if eigs.max() > 1e-9:
        assert not exact


def test_definiteness_examples():
    assert is_negative_definite_exact([[F(-1)]])
    assert not is_negative_definite_exact([[F(0)]])
    assert not is_negative_definite_exact([[F(-1), F(0)], [F(0), F(0)]])
    # leading 1x1 is fine, the 2x2 minor is negative
    assert not is_negative_definite_exact([[F(-1), F(2)], [F(2), F(-1)]])
    assert is_negative_definite_exact([[-x for x in row] for row in hilbert(8)])


def test_definiteness_rejects_bad_input():
    with pytest.raises(ValueError):
        is_negative_definite_exact([])
    with pytest.raises(ValueError):
        is_negative_definite_exact([[F(-1), F(1)], [F(0), F(-1)]])


def test_is_symmetric():
    assert is_symmetric([[1, 2], [2, 3]])
    assert not is_symmetric([[1, 2], [3, 3]])
    assert not is_symmetric([[1, 2]])


def test_hilbert_minors_are_known_determinants():
    # det H_n = c_n^4 / c_2n with c_n = prod_{k<n} k!
    def c(n):
        return math.prod(math.factorial(k) for k in range(n))

    minors = leading_principal_minors(hilbert(7))
    assert minors == [F(c(n) ** 4, c(2 * n)) for n in range(1, 8)]


@pytest.mark.parametrize("p", [11, 12])
def test_jacobi_against_high_precision_oracle(p):
    G = leading_data(expand_energy(taylor_polynomial(p))).gamma_star
    got = symmetric_eigenvalues(G)
    for g, w in zip(got, ORACLE_EIGS[p]):
        assert g == pytest.approx(w, rel=1e-8)


def test_jacobi_hilbert_small_eigenvalue():
    got = symmetric_eigenvalues(hilbert(6))
    assert got == pytest.approx(HILBERT6_EIGS, rel=1e-9)


def test_jacobi_live_mpmath_oracle():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    G = hilbert(9)
    M = mp.matrix([[mp.mpf(x.numerator) / x.denominator for x in row] for row in G])
    want = sorted((float(e) for e in mp.eigsy(M)[0]), reverse=True)
    assert symmetric_eigenvalues(G) == pytest.approx(want, rel=1e-6)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_jacobi_matches_numpy_on_random_matrices(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    A = A + A.T
    got = np.array(symmetric_eigenvalues(A.tolist()))
    want = np.sort(np.linalg.eigvalsh(A))[::-1]
    assert np.allclose(got, want, rtol=0, atol=1e-12 * max(1.0, np.abs(want).max()))


def test_jacobi_trivial_cases():
    assert symmetric_eigenvalues([[F(-3)]]) == [-3.0]
    assert symmetric_eigenvalues([[2.0, 0.0], [0.0, 5.0]]) == [5.0, 2.0]
    with pytest.raises(ValueError):
        symmetric_eigenvalues([[1.0, 2.0]])
