"""Published reference rows for the stability tables.

Each row records the leading index, leading coefficient, leading submatrix
(when printed exactly), eigenvalues of the leading submatrix (6 significant
digits) and the strong-stability mark. ``beta_star`` is a Fraction when the
published value is exact and a float when it was printed as a decimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F


@dataclass(frozen=True)
class Row:
    method: str
    k_star: int
    beta_star: F | float
    eigenvalues: tuple[float, ...]
    mark: str
    gamma_star: tuple | None = None
    # entries printed as decimals: ((i, j), value) pairs, compared at rel 1e-4
    gamma_decimals: tuple = ()
    stages: int | None = None
    order: int | None = None
    erratum: str | None = None
    notes: tuple[str, ...] = field(default=())


def _neg(rows):
    return tuple(tuple(-F(x) for x in row) for row in rows)


_H4 = [[1, F(1, 2), F(1, 6)], [F(1, 2), F(1, 3), F(1, 8)]]

LINEAR = (
    Row("taylor(1)", 1, F(1), (-1.0,), "no", _neg([[1]])),
    Row("taylor(2)", 2, F(1, 4), (-1.30902, -1.90983e-1), "no",
        _neg([[1, F(1, 2)], [F(1, 2), F(1, 2)]])),
    Row("taylor(3)", 2, F(-1, 12), (-1.26759, -6.57415e-2), "yes",
        _neg([[1, F(1, 2)], [F(1, 2), F(1, 3)]])),
    Row("taylor(4)", 3, F(-1, 72), (-1.30128, -7.93266e-2, 5.60618e-3), "no*",
        _neg(_H4 + [[F(1, 6), F(1, 8), F(1, 24)]])),
    Row("taylor(5)", 3, F(1, 360), (-1.30150, -8.07336e-2, -1.10151e-3), "no",
        _neg(_H4 + [[F(1, 6), F(1, 8), F(1, 20)]])),
    Row("taylor(6)", 4, F(1, 2880), (-1.30375, -8.21871e-2, -1.40529e-3, -1.60133e-4), "no",
        _neg([[1, F(1, 2), F(1, 6), F(1, 24)], [F(1, 2), F(1, 3), F(1, 8), F(1, 30)],
              [F(1, 6), F(1, 8), F(1, 20), F(1, 72)], [F(1, 24), F(1, 30), F(1, 72), F(1, 240)]])),
    Row("taylor(7)", 4, F(-1, 20160), (-1.30375, -8.21836e-2, -1.36301e-3, -7.86229e-6), "yes",
        _neg([[1, F(1, 2), F(1, 6), F(1, 24)], [F(1, 2), F(1, 3), F(1, 8), F(1, 30)],
              [F(1, 6), F(1, 8), F(1, 20), F(1, 72)], [F(1, 24), F(1, 30), F(1, 72), F(1, 252)]])),
    Row("taylor(8)", 5, F(-1, 201600),
        (-1.30384, -8.22588e-2, -1.38580e-3, -9.32706e-6, 2.24989e-6), "?",
        _neg([[1, F(1, 2), F(1, 6), F(1, 24), F(1, 120)],
              [F(1, 2), F(1, 3), F(1, 8), F(1, 30), F(1, 144)],
              [F(1, 6), F(1, 8), F(1, 20), F(1, 72), F(1, 336)],
              [F(1, 24), F(1, 30), F(1, 72), F(1, 252), F(1, 1152)],
              [F(1, 120), F(1, 144), F(1, 336), F(1, 1152), F(23, 120960)]])),
    Row("taylor(9)", 5, F(1, 1814400),
        (-1.30384, -8.22588e-2, -1.38585e-3, -9.75366e-6, -3.11800e-8), "no"),
    # printed as 1/221772800; 2/(10! * 12) = 1/21772800 and the row's eigenvalues
    # match the latter, so the printed denominator carries a stray digit
    Row("taylor(10)", 6, F(1, 21772800),
        (-1.30384, -8.22613e-2, -1.38688e-3, -9.91006e-6, -4.70638e-8, -1.63872e-8), "no",
        erratum="printed as 1/221772800"),
    Row("taylor(11)", 6, F(-1, 239500800),
        (-1.30384, -8.22613e-2, -1.38688e-3, -9.90966e-6, -3.87351e-8, -7.87018e-11), "yes"),
    Row("taylor(12)", 7, F(-1, 3353011200),
        (-1.30384, -8.22614e-2, -1.38691e-3, -9.91617e-6, -3.93334e-8, 1.45458e-10,
         -8.54170e-11), "?"),
)

PRINTED_TAYLOR10_BETA = F(1, 221772800)

RK4_MULTISTEP = (
    Row("taylor(4)^2", 3, F(-1, 36), (-5.73797, -4.99093e-1, -1.29329e-2), "yes",
        _neg([[2, 2, F(4, 3)], [2, F(8, 3), 2], [F(4, 3), 2, F(19, 12)]])),
    Row("taylor(4)^3", 3, F(-1, 24), (-2.28380e1, -1.21069, -7.62892e-2), "yes",
        _neg([[3, F(9, 2), F(9, 2)], [F(9, 2), 9, F(81, 8)], [F(9, 2), F(81, 8), F(97, 8)]])),
)

SSPRK = (
    Row("ssprk(4,3)", 2, F(-1, 24), (-1.26759, -6.57415e-2), "yes",
        _neg([[1, F(1, 2)], [F(1, 2), F(1, 3)]])),
    Row("ssprk(10,4)", 3, F(-1, 3240), (-1.30149, -8.06493e-2, -7.35115e-4), "yes",
        _neg(_H4 + [[F(1, 6), F(1, 8), F(107, 2160)]])),
    # gamma_22 printed as -1/24 (the P4 value); the alpha_5 term shifts it to
    # about -0.0461444, and only that value reproduces the printed eigenvalues
    Row("ssprk(5,4)", 3, -4.93345e-3, (-1.30140, -8.00541e-2, 1.97309e-3), "no*",
        gamma_decimals=(((0, 0), -1.0), ((0, 1), -0.5), ((0, 2), -1 / 6), ((1, 1), -1 / 3),
                        ((1, 2), -0.125), ((2, 2), -0.0461444)),
        erratum="gamma_22 printed as -1/24"),
    Row("ssprk(5,4)^2", 3, -9.86690e-3, (-5.74021, -5.01739e-1, -1.70056e-2), "yes",
        gamma_decimals=(((0, 0), -2.0), ((0, 1), -2.0), ((0, 2), -4 / 3), ((1, 1), -8 / 3),
                        ((1, 2), -2.0), ((2, 2), -1.5923))),
    Row("ssprk(5,4)^3", 3, -1.48004e-2, (-2.28450e1, -1.21415, -7.93174e-2), "yes",
        gamma_decimals=(((0, 0), -3.0), ((0, 1), -4.5), ((0, 2), -4.5), ((1, 1), -9.0),
                        ((1, 2), -10.125), ((2, 2), -12.138))),
)

# Embedded pairs: rows with tableaux printed in full are checked by default;
# the rest only when a tableau file is supplied.
PAIRS = (
    Row("pair2(1).main", 2, F(1, 4), (-1.30902, -1.90983e-1), "no", stages=3, order=2),
    Row("pair2(1).embedded", 1, F(1), (-1.0,), "no", stages=3, order=1),
    Row("pair3(2).main", 2, F(-1, 12), (-1.26759, -6.57415e-2), "yes", stages=4, order=3),
    Row("pair3(2).embedded", 2, F(1, 12), (-1.28130, -1.11257e-1), "no", stages=4, order=2,
        notes=("approximate-input",)),
    Row("pair4(3).main", 3, F(-1, 72), (-1.30128, -7.93266e-2, 5.60618e-3), "no*",
        stages=5, order=4),
    Row("pair4(3).embedded", 2, F(-119041, 4485456), (-1.26759, -6.57415e-2), "yes",
        stages=5, order=3),
)

EXTERNAL_PAIRS = (
    Row("pair5(4).main", 3, F(-43, 6209280), (-1.3015, -8.07336e-2, -1.10151e-3), "yes",
        stages=8, order=5),
    Row("pair5(4).embedded", 3, F(51767, 367590960), (-1.30150, -8.07430e-2, -1.14174e-3),
        "no", stages=8, order=4),
    Row("pair6(5).main", 4, F(79007, 2560896000),
        (-1.30375, -8.21839e-2, -1.36689e-3, -2.38718e-5), "no", stages=9, order=6),
    Row("pair6(5).embedded", 3, F(1233467, 9027158400), (-1.30150, -8.07336e-2, -1.10151e-3),
        "no", stages=9, order=5),
    Row("pair7(6).main", 4, F(29615605063, 38967665360400000),
        (-1.30375, -8.21836e-2, -1.36301e-3, -7.86229e-6), "no", stages=10, order=7),
    Row("pair7(6).embedded", 4, F(-20202919901, 1855603112400000),
        (-1.30375, -8.21833e-2, -1.35985e-3, 5.49402e-6), "?", stages=10, order=6),
    Row("pair8(7).main", 5, -3.21308e-7,
        (-1.30384, -8.22588e-2, -1.38584e-3, -9.71236e-6, 1.43671e-7), "?", stages=13, order=8),
    Row("pair8(7).embedded", 4, -2.39706e-6, (-1.30375, -8.21836e-2, -1.36301e-3, -7.86229e-6),
        "yes", stages=13, order=7),
    Row("pair9(8).main", 5, -8.95352e-9,
        (-1.30384, -8.22588e-2, -1.38585e-3, -9.75366e-6, -3.11800e-8), "yes",
        stages=16, order=9),
    Row("pair9(8).embedded", 5, -5.46447e-7,
        (-1.30384, -8.22588e-2, -1.38585e-3, -9.78641e-6, -1.64476e-7), "yes",
        stages=16, order=8),
)

TABLES = {
    "linear": LINEAR,
    "rk4-multistep": RK4_MULTISTEP,
    "ssprk": SSPRK,
    "pairs": PAIRS,
}
