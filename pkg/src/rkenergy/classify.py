"""Strong-stability verdicts from the leading data of the energy equality."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .energy import EnergyEquality, expand_energy, leading_data
from .linalg import hilbert, is_negative_definite_exact, symmetric_eigenvalues
from .polynomial import StabilityPolynomial, linear_order

NOTE_COUNTEREXAMPLE = "counterexample known"
NOTE_APPROXIMATE = "approximate-input"

# Polynomials with a concrete semi-negative system on which one step expands
# the H-norm: the classic RK4 and SSPRK(5,4), which is RK4
# plus a tiny fifth-order term.
_KNOWN_COUNTEREXAMPLES = {
    (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)),
    (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24),
     Fraction("4.477718303076007e-3")),
}


class Status(enum.Enum):
    STRONGLY_STABLE = "StronglyStable"
    NOT_STRONGLY_STABLE = "NotStronglyStable"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    k_star: int
    beta_star: Fraction
    gamma_star_definite: bool
    gamma_star_eigenvalues: tuple[float, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def table_mark(self) -> str:
        """The yes / no / ? / no* mark used in the stability tables."""
        if self.status is Status.STRONGLY_STABLE:
            return "yes"
        if self.status is Status.NOT_STRONGLY_STABLE:
            return "no"
        return "no*" if NOTE_COUNTEREXAMPLE in self.notes else "?"


def classify_strong_stability(e: EnergyEquality) -> StabilityVerdict:
    lead = leading_data(e)
    definite = is_negative_definite_exact(lead.gamma_star)
    eigs = tuple(symmetric_eigenvalues(lead.gamma_star))
    if lead.beta_star > 0:
        status = Status.NOT_STRONGLY_STABLE
    elif definite:
        status = Status.STRONGLY_STABLE
    else:
        status = Status.UNDETERMINED

    notes = []
    if status is Status.UNDETERMINED and e.poly.alpha in _KNOWN_COUNTEREXAMPLES:
        notes.append(NOTE_COUNTEREXAMPLE)
    if e.poly.approximate:
        notes.append(NOTE_APPROXIMATE)
    return StabilityVerdict(status, lead.k_star, lead.beta_star, definite, eigs, tuple(notes))


def classify(r: StabilityPolynomial) -> StabilityVerdict:
    return classify_strong_stability(expand_energy(r))


def odd_order_criterion(r: StabilityPolynomial) -> bool:
    """Exact iff-test for odd linear order: (-1)^((p+1)/2) (alpha_{p+1} - 1/(p+1)!) < 0."""
    p = linear_order(r)
    if p % 2 == 0:
        raise ValueError(f"linear order {p} is not odd")
    excess = r.coefficient(p + 1) - Fraction(1, math.factorial(p + 1))
    return (-1) ** ((p + 1) // 2) * excess < 0


@dataclass(frozen=True)
class EvenOrderCheck:
    """Both inequalities of the even-order sufficient condition.

    ``beta_condition`` is exact. ``perturbation`` is compared against
    ``hilbert_min``, the smallest eigenvalue of the Hilbert matrix of order
    p/2 + 1; it only counts as satisfied with a relative margin of 1e-9,
    and anything inside that band is ``borderline``.
    """

    p: int
    beta_condition: bool
    perturbation: Fraction
    hilbert_min: float
    perturbation_condition: bool
    borderline: bool

    @property
    def holds(self) -> bool:
        return self.beta_condition and self.perturbation_condition


def even_order_check(r: StabilityPolynomial, margin: float = 1e-9) -> EvenOrderCheck:
    p = linear_order(r)
    if p % 2 == 1 or p == 0:
        raise ValueError(f"linear order {p} is not a positive even number")
    h = p // 2
    a = r.coefficient
    sign = (-1) ** (h + 1)
    beta_term = sign * (a(p + 2) - a(p + 1) + Fraction(1, math.factorial(p) * (p + 2)))
    pert = sign * math.factorial(h) ** 2 * (a(p + 1) - Fraction(1, math.factorial(p + 1)))
    eps = min(symmetric_eigenvalues(hilbert(h + 1)))
    lhs = float(pert)
    ok = lhs < eps * (1 - margin)
    borderline = not ok and lhs < eps * (1 + margin)
    return EvenOrderCheck(p, beta_term < 0, pert, eps, ok, borderline)


def even_order_sufficient(r: StabilityPolynomial) -> bool:
    return even_order_check(r).holds


def closed_form_verdict(r: StabilityPolynomial) -> bool | None:
    """Shortcut from the linear order: True/False for odd p, True or None for even p."""
    p = linear_order(r)
    if p == 0:
        return None
    if p % 2:
        return odd_order_criterion(r)
    return True if even_order_sufficient(r) else None


__all__ = [
    "Status",
    "StabilityVerdict",
    "classify",
    "classify_strong_stability",
    "closed_form_verdict",
    "even_order_check",
    "even_order_sufficient",
    "odd_order_criterion",
]
