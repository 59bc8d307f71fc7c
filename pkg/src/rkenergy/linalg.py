"""Small dense linear algebra: exact rational definiteness and Jacobi eigenvalues."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def is_symmetric(G: Matrix) -> bool:
    n = len(G)
    return all(len(row) == n for row in G) and all(
        G[i][j] == G[j][i] for i in range(n) for j in range(i + 1, n)
    )


def leading_principal_minors(G: Matrix) -> list[Fraction]:
    """Determinants of the leading 1x1, 2x2, ... blocks of a rational matrix.

    The matrix is scaled to integers by the lcm of its denominators and
    reduced with Bareiss' fraction-free elimination (no pivoting), so every
    intermediate is an exact integer. The k-th pivot of the elimination is
    the k-th leading minor of the scaled matrix. Elimination stops at the
    first vanishing minor; the remaining minors are not computed and the
    returned list is shorter than ``len(G)``.
    """
    n = len(G)
    if n == 0:
        return []
    scale = 1
    for row in G:
        for x in row:
            scale = math.lcm(scale, Fraction(x).denominator)
    a = [[int(Fraction(x) * scale) for x in row] for row in G]

    minors = []
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        minors.append(Fraction(pivot, scale ** (k + 1)))
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def is_negative_definite_exact(G: Matrix) -> bool:
    """Sylvester's criterion for -G, decided in exact arithmetic."""
    if len(G) == 0:
        raise ValueError("empty matrix")
    if not is_symmetric(G):
        raise ValueError("matrix is not symmetric")
    minors = leading_principal_minors(G)
    if len(minors) < len(G):
        return False
    return all((-1) ** (j + 1) * m > 0 for j, m in enumerate(minors))


def hilbert(n: int) -> list[list[Fraction]]:
    return [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]


def symmetric_eigenvalues(G, max_sweeps: int = 100) -> list[float]:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.

    Works on the float image of ``G``. A rotation is skipped once
    ``|a_pq| <= eps * sqrt(|a_pp a_qq|)``; this threshold (rather than one
    relative to the whole matrix) keeps small eigenvalues of graded matrices
    accurate to high relative precision, where a global off-diagonal mass
    test would stop far too early.
    """
    a = [[float(x) for x in row] for row in G]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    eps = 2.0**-53

    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                if abs(apq) <= eps * math.sqrt(abs(a[p][p] * a[q][q])):
                    a[p][q] = a[q][p] = 0.0
                    continue
                rotated = True
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = a[p][k] = c * akp - s * akq
                    a[k][q] = a[q][k] = s * akp + c * akq
                a[p][p] -= t * apq
                a[q][q] += t * apq
                a[p][q] = a[q][p] = 0.0
        if not rotated:
            break
    return sorted((a[i][i] for i in range(n)), reverse=True)
