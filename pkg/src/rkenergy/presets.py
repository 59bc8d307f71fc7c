"""Catalog of named methods.

Names: ``euler``, ``rk4``, ``taylor(p)``, ``ssprk(4,3)``, ``ssprk(5,4)``,
``ssprk(10,4)``, ``pair2(1)``, ``pair3(2)``, ``pair4(3)``. A bare pair name
gives its tableau; ``pairX(Y).main`` / ``pairX(Y).embedded`` give polynomials.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction as F

from .polynomial import (
    ButcherTableau,
    StabilityPolynomial,
    tableau_stability_coefficients,
    taylor_polynomial,
)


class UnknownPresetError(KeyError):
    def __str__(self):
        return f"unknown preset {self.args[0]!r}; known: {', '.join(preset_names())}"


SQRT82_DIGITS = 40
# sqrt(82) truncated to 40 decimals; the pair 3(2) embedded weights are irrational
SQRT82 = F(math.isqrt(82 * 10 ** (2 * SQRT82_DIGITS)), 10**SQRT82_DIGITS)


def _taylor_plus(p: int, tail) -> tuple:
    return tuple(F(1, math.factorial(k)) for k in range(p + 1)) + tuple(tail)


_POLYNOMIALS = {
    "ssprk(4,3)": _taylor_plus(3, [F(1, 48)]),
    # printed to 16 digits; stored as the exact rational of that decimal string
    "ssprk(5,4)": _taylor_plus(4, [F("4.477718303076007e-3")]),
    "ssprk(10,4)": _taylor_plus(4, [F(17, 2160), F(7, 6480), F(1, 9720), F(1, 155520),
                                    F(1, 4199040), F(1, 251942400)]),
}


def _pair21() -> ButcherTableau:
    return ButcherTableau(
        A=[[0, 0, 0], [1, 0, 0], [F(1, 2), F(1, 2), 0]],
        b=[F(1, 2), F(1, 2), 0],
        c=[0, 1, 1],
        bhat=[1, F(-1, 6), F(1, 6)],
        name="pair2(1)",
    )


def _pair32() -> ButcherTableau:
    r = SQRT82
    return ButcherTableau(
        A=[[0, 0, 0, 0], [F(1, 2), 0, 0, 0], [-1, 2, 0, 0], [F(1, 6), F(2, 3), F(1, 6), 0]],
        b=[F(1, 6), F(2, 3), F(1, 6), 0],
        c=[0, F(1, 2), 1, 1],
        bhat=[(22 - r) / 72, (r + 14) / 36, (r - 4) / 144, (16 - r) / 48],
        name="pair3(2)",
        approximate_bhat=True,
    )


def _pair43() -> ButcherTableau:
    d = 8970912
    return ButcherTableau(
        A=[
            [0, 0, 0, 0, 0],
            [F(2, 5), 0, 0, 0, 0],
            [F(-3, 20), F(3, 4), 0, 0, 0],
            [F(19, 44), F(-15, 44), F(10, 11), 0, 0],
            [F(11, 72), F(25, 72), F(25, 72), F(11, 72), 0],
        ],
        b=[F(11, 72), F(25, 72), F(25, 72), F(11, 72), 0],
        c=[0, F(2, 5), F(3, 5), 1, 1],
        bhat=[F(1251515, d), F(3710105, d), F(2519695, d), F(61105, d), F(119041, 747576)],
        name="pair4(3)",
    )


_TABLEAUX = {"pair2(1)": _pair21, "pair3(2)": _pair32, "pair4(3)": _pair43}
_ALIASES = {"euler": "taylor(1)", "rk4": "taylor(4)"}
_TAYLOR = re.compile(r"taylor\((\d+)\)")


def preset_names() -> list[str]:
    names = ["euler", "rk4", "taylor(p)"] + list(_POLYNOMIALS)
    for pair in _TABLEAUX:
        names += [pair, f"{pair}.main", f"{pair}.embedded"]
    return names


def _normalize(name: str) -> str:
    return re.sub(r"\s+", "", name.lower())


def preset(name: str):
    """Look up a method by name: a StabilityPolynomial, or a ButcherTableau for bare pairs."""
    key = _normalize(name)
    key = _ALIASES.get(key, key)
    m = _TAYLOR.fullmatch(key)
    if m:
        return taylor_polynomial(int(m.group(1)))
    if key in _POLYNOMIALS:
        return StabilityPolynomial(_POLYNOMIALS[key], name=key)
    if key in _TABLEAUX:
        return _TABLEAUX[key]()
    pair, _, which = key.partition(".")
    if pair in _TABLEAUX and which in ("main", "embedded"):
        poly = tableau_stability_coefficients(_TABLEAUX[pair](), which)
        return StabilityPolynomial(poly.alpha, name=key, approximate=poly.approximate)
    raise UnknownPresetError(name)


def preset_polynomial(name: str, which: str = "main") -> StabilityPolynomial:
    """Like :func:`preset`, reducing bare pair tableaux with ``which``."""
    obj = preset(name)
    if isinstance(obj, ButcherTableau):
        poly = tableau_stability_coefficients(obj, which)
        return StabilityPolynomial(poly.alpha, name=f"{obj.name}.{which}",
                                   approximate=poly.approximate)
    return obj


def catalog() -> dict[str, StabilityPolynomial]:
    """Every concrete polynomial preset (Taylor orders 1..12)."""
    out = {f"taylor({p})": taylor_polynomial(p) for p in range(1, 13)}
    for key in _POLYNOMIALS:
        out[key] = preset(key)
    for pair in _TABLEAUX:
        for which in ("main", "embedded"):
            out[f"{pair}.{which}"] = preset(f"{pair}.{which}")
    return out
