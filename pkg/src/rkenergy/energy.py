"""Exact energy equality of a stability polynomial.

For ``L^T H + H L <= 0`` and ``[v, w] = -<v, (L^T H + H L) w>``::

    ||R(tau L) u||_H^2 = sum_k beta_k tau^(2k) ||L^k u||_H^2
                       + sum_{i,j<s} gamma_ij tau^(i+j+1) [L^i u, L^j u]

with gamma symmetric. The coefficients are unique, so comparing them with
closed forms is an exact test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import StabilityPolynomial, linear_order

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class EnergyEquality:
    beta: tuple[Fraction, ...]
    gamma: Matrix
    poly: StabilityPolynomial

    @property
    def stages(self) -> int:
        return len(self.beta) - 1


@dataclass(frozen=True)
class LeadingData:
    k_star: int
    beta_star: Fraction
    gamma_star: Matrix


def expand_energy(r: StabilityPolynomial) -> EnergyEquality:
    """Integrate every <L^i u, L^j u> term of ||R u||^2 by parts down to beta/gamma form."""
    s = r.degree
    a = r.alpha
    beta = [Fraction(0)] * (s + 1)
    gamma = [[Fraction(0)] * s for _ in range(s)]

    for i in range(s + 1):
        if a[i] == 0:
            continue
        for j in range(i, s + 1):
            if a[j] == 0:
                continue
            w = a[i] * a[j] * (1 if i == j else 2)
            d = j - i
            if d % 2 == 0:
                beta[(i + j) // 2] += w if (d // 2) % 2 == 0 else -w
            else:
                m = (i + j - 1) // 2
                sign = 1 if ((d + 1) // 2) % 2 == 0 else -1
                gamma[m][m] += sign * w / 2
            # -sum_k (-1)^k [L^(i+k) u, L^(j-1-k) u]; never lands on the diagonal
            for k in range(d // 2):
                half = (w if k % 2 else -w) / 2
                p, q = i + k, j - 1 - k
                gamma[p][q] += half
                gamma[q][p] += half

    return EnergyEquality(tuple(beta), tuple(tuple(row) for row in gamma), r)


def leading_data(e: EnergyEquality) -> LeadingData:
    """First nonzero beta_k (k >= 1) and the matching leading block of gamma."""
    for k in range(1, len(e.beta)):
        if e.beta[k] != 0:
            block = tuple(tuple(e.gamma[i][j] for j in range(k)) for i in range(k))
            return LeadingData(k, e.beta[k], block)
    raise AssertionError("beta_s = alpha_s^2 is nonzero, so some beta_k must be")


def energy_accuracy(l: LeadingData) -> int:
    return 2 * l.k_star - 1


def _exp_coeff(k: int) -> Fraction:
    return Fraction(1, math.factorial(k))


def base_gamma(i: int, j: int) -> Fraction:
    """-1 / (i! j! (i+j+1)): the leading gamma entries shared by all methods of high enough order."""
    return Fraction(-1, math.factorial(i) * math.factorial(j) * (i + j + 1))


@dataclass(frozen=True)
class ClosedForm:
    """What the closed forms in the linear order p predict.

    ``beta_index``/``beta_value`` is always predicted; ``k_star`` only when
    that value is nonzero (otherwise the true leading index lies beyond it).
    ``gamma_block`` gives gamma_ij for ``0 <= i, j < len(gamma_block)``.
    """

    p: int
    beta_index: int
    beta_value: Fraction
    gamma_block: Matrix
    k_star: int | None

    @property
    def predictive(self) -> bool:
        return self.k_star is not None

    def leading(self) -> LeadingData | None:
        if self.k_star is None:
            return None
        return LeadingData(self.k_star, self.beta_value,
                           tuple(row[: self.k_star] for row in self.gamma_block[: self.k_star]))


def closed_form_leading(r: StabilityPolynomial) -> ClosedForm | None:
    """Leading data from the linear order alone; ``None`` when p = 0."""
    p = linear_order(r)
    if p < 1:
        return None
    a = r.coefficient
    if p % 2 == 1:
        k = (p + 1) // 2
        # alpha_{p+1} != 1/(p+1)! holds by definition of p
        beta = (-1) ** k * 2 * (a(p + 1) - _exp_coeff(p + 1))
        block = tuple(tuple(base_gamma(i, j) for j in range(k)) for i in range(k))
        return ClosedForm(p, k, beta, block, k)

    h = p // 2
    beta = (-1) ** (h + 1) * 2 * (a(p + 2) - a(p + 1) + Fraction(1, math.factorial(p) * (p + 2)))
    iota = (-1) ** (h + 1) * (a(p + 1) - _exp_coeff(p + 1))
    block = tuple(
        tuple(base_gamma(i, j) + (iota if i == j == h else 0) for j in range(h + 1))
        for i in range(h + 1)
    )
    return ClosedForm(p, h + 1, beta, block, h + 1 if beta != 0 else None)
