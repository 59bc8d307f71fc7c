"""Explicit Runge-Kutta methods as exact stability polynomials.

One step of an explicit RK method on ``u' = L u`` is ``u -> R(tau L) u`` with
``R(z) = sum_k alpha_k z^k``. Everything here is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence


class DegenerateMethodError(ValueError):
    """The polynomial has no term beyond alpha_0 (the method never moves u)."""


class TableauError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse an integer, ``p/q`` or decimal literal into an exact Fraction.

    Decimals are converted exactly (``"0.1"`` is 1/10, never the binary
    float). Factorial shorthand such as ``"4!"`` is rejected.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational entries must be strings, got {text!r}")
    s = text.strip()
    if not s or "!" in s:
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class StabilityPolynomial:
    """Coefficients alpha_0..alpha_s, alpha_0 = 1 and alpha_s != 0.

    ``approximate`` marks coefficients that stand in for irrational values.
    ``name`` is a display label only; neither takes part in equality.
    """

    alpha: tuple[Fraction, ...]
    name: str | None = field(default=None, compare=False)
    approximate: bool = field(default=False, compare=False)

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) < 2:
            raise DegenerateMethodError("stability polynomial must have degree >= 1")
        if alpha[0] != 1:
            raise ValueError(f"alpha_0 must be 1, got {alpha[0]}")
        if alpha[-1] == 0:
            raise ValueError("leading coefficient alpha_s must be nonzero")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, name: str | None = None,
                          approximate: bool = False) -> "StabilityPolynomial":
        """Build from any rational-like values, trimming trailing zeros."""
        alpha = [c if isinstance(c, Fraction) else parse_rational(c) for c in coeffs]
        while len(alpha) > 1 and alpha[-1] == 0:
            alpha.pop()
        if len(alpha) < 2:
            raise DegenerateMethodError("degenerate method: no terms beyond alpha_0")
        return cls(tuple(alpha), name=name, approximate=approximate)

    @property
    def degree(self) -> int:
        return len(self.alpha) - 1

    def coefficient(self, k: int) -> Fraction:
        """alpha_k, zero beyond the degree."""
        return self.alpha[k] if 0 <= k < len(self.alpha) else Fraction(0)

    def __call__(self, z):
        acc = 0
        for a in reversed(self.alpha):
            acc = acc * z + a
        return acc

    def label(self) -> str:
        if self.name:
            return self.name
        return "[" + ", ".join(format_rational(a) for a in self.alpha) + "]"


@dataclass(frozen=True)
class ButcherTableau:
    """Explicit tableau. ``approximate`` flags rational stand-ins for irrational
    entries in A or b, ``approximate_bhat`` the same for the embedded weights."""

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    bhat: tuple[Fraction, ...] | None = None
    name: str | None = field(default=None, compare=False)
    approximate: bool = field(default=False, compare=False)
    approximate_bhat: bool = field(default=False, compare=False)

    def __post_init__(self):
        A = tuple(tuple(Fraction(x) for x in row) for row in self.A)
        b = tuple(Fraction(x) for x in self.b)
        c = tuple(Fraction(x) for x in self.c)
        bhat = None if self.bhat is None else tuple(Fraction(x) for x in self.bhat)
        s = len(b)
        if s == 0:
            raise TableauError("tableau has no stages")
        if len(A) != s or any(len(row) != s for row in A):
            raise TableauError(f"A must be {s}x{s}")
        if len(c) != s or (bhat is not None and len(bhat) != s):
            raise TableauError(f"c and bhat must have length {s}")
        for i in range(s):
            for j in range(i, s):
                if A[i][j] != 0:
                    raise TableauError(
                        f"not explicit: A[{i}][{j}] = {A[i][j]} on or above the diagonal")
        for i in range(s):
            if sum(A[i]) != c[i]:
                warnings.warn(f"row {i}: c_i != sum_j A_ij (ignored for linear analysis)",
                              stacklevel=3)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "bhat", bhat)

    @property
    def stages(self) -> int:
        return len(self.b)


def tableau_stability_coefficients(t: ButcherTableau, which: str = "main") -> StabilityPolynomial:
    """alpha_k = w^T A^(k-1) 1 with w = b (``main``) or bhat (``embedded``)."""
    if which == "main":
        w = t.b
    elif which == "embedded":
        if t.bhat is None:
            raise TableauError("tableau has no embedded weights")
        w = t.bhat
    else:
        raise ValueError(f"which must be 'main' or 'embedded', got {which!r}")

    s = t.stages
    v = [Fraction(1)] * s
    alpha = [Fraction(1)]
    for _ in range(s):
        alpha.append(sum((wi * vi for wi, vi in zip(w, v)), Fraction(0)))
        v = [sum((t.A[i][j] * v[j] for j in range(i)), Fraction(0)) for i in range(s)]
    suffix = "" if which == "main" else ".embedded"
    name = f"{t.name}{suffix}" if t.name else None
    approx = t.approximate or (which == "embedded" and t.approximate_bhat)
    return StabilityPolynomial.from_coefficients(alpha, name=name, approximate=approx)


def taylor_polynomial(p: int) -> StabilityPolynomial:
    if p < 1:
        raise ValueError("Taylor order must be >= 1")
    return StabilityPolynomial(tuple(Fraction(1, math.factorial(k)) for k in range(p + 1)),
                               name=f"taylor({p})")


def _multiply(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def compose_steps(r: StabilityPolynomial, m: int) -> StabilityPolynomial:
    """The polynomial of m successive steps, i.e. r**m."""
    if m < 1:
        raise ValueError("number of steps must be >= 1")
    if m == 1:
        return r
    result: list[Fraction] = [Fraction(1)]
    base = list(r.alpha)
    k = m
    while k:
        if k & 1:
            result = _multiply(result, base)
        k >>= 1
        if k:
            base = _multiply(base, base)
    name = f"{r.label()}^{m}"
    return StabilityPolynomial(tuple(result), name=name, approximate=r.approximate)


def linear_order(r: StabilityPolynomial) -> int:
    """Largest p <= s with alpha_k = 1/k! for every k <= p."""
    p = 0
    for k in range(1, r.degree + 1):
        if r.alpha[k] != Fraction(1, math.factorial(k)):
            break
        p = k
    return p


def tableau_from_dict(data: dict, name: str | None = None) -> ButcherTableau:
    """Tableau from the file schema: ``s``, ``A``, ``b``, ``c`` and optional ``bhat``.

    All numeric entries are strings (integer, ``p/q`` or decimal literal).
    """
    try:
        s = int(data["s"])
        A = [[parse_rational(x) for x in row] for row in data["A"]]
        b = [parse_rational(x) for x in data["b"]]
        c = [parse_rational(x) for x in data["c"]]
        bhat = data.get("bhat")
        if bhat is not None:
            bhat = [parse_rational(x) for x in bhat]
    except KeyError as exc:
        raise TableauError(f"tableau is missing field {exc.args[0]!r}") from exc
    if len(b) != s:
        raise TableauError(f"declared s={s} but b has {len(b)} entries")
    return ButcherTableau(A, b, c, bhat, name=name or data.get("name"))


def tableau_to_dict(t: ButcherTableau) -> dict:
    out = {
        "s": t.stages,
        "A": [[format_rational(x) for x in row] for row in t.A],
        "b": [format_rational(x) for x in t.b],
        "c": [format_rational(x) for x in t.c],
    }
    if t.bhat is not None:
        out["bhat"] = [format_rational(x) for x in t.bhat]
    if t.name:
        out["name"] = t.name
    return out


def load_tableau(path) -> ButcherTableau:
    path = Path(path)
    with open(path) as fh:
        data = json.load(fh)
    return tableau_from_dict(data, name=data.get("name", path.stem))
