"""Analysis reports and their text / JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import StabilityVerdict, classify_strong_stability
from .energy import energy_accuracy, expand_energy, leading_data
from .fixtures import Row
from .polynomial import StabilityPolynomial, format_rational, linear_order, parse_rational

EIG_RTOL = 1e-5
DECIMAL_RTOL = 1e-4


def sig6(x: float) -> str:
    """Six significant digits in scientific notation, e.g. -8.21836e-2."""
    mant, exp = f"{x:.5e}".split("e")
    return f"{mant}e{int(exp)}"


def round6(x: float) -> float:
    return float(f"{x:.5e}")


@dataclass
class AnalysisReport:
    method: dict
    p: int
    k_star: int
    beta_star: Fraction
    gamma_star: tuple
    eigenvalues: tuple[float, ...]
    verdict: str
    mark: str
    energy_accuracy: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "p": self.p,
            "k_star": self.k_star,
            "beta_star": {"exact": format_rational(self.beta_star),
                          "float": float(self.beta_star)},
            "gamma_star": {
                "exact": [[format_rational(x) for x in row] for row in self.gamma_star],
                "eigenvalues": [round6(x) for x in self.eigenvalues],
            },
            "verdict": self.verdict,
            "mark": self.mark,
            "energy_accuracy": self.energy_accuracy,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(
            method=d["method"],
            p=d["p"],
            k_star=d["k_star"],
            beta_star=parse_rational(d["beta_star"]["exact"]),
            gamma_star=tuple(tuple(parse_rational(x) for x in row)
                             for row in d["gamma_star"]["exact"]),
            eigenvalues=tuple(d["gamma_star"]["eigenvalues"]),
            verdict=d["verdict"],
            mark=d["mark"],
            energy_accuracy=d["energy_accuracy"],
            notes=list(d["notes"]),
        )


def analyze(r: StabilityPolynomial, method: dict | None = None,
            order: int | None = None) -> tuple[AnalysisReport, StabilityVerdict]:
    """Full report for ``r``; ``order`` overrides the linear order (for composed steps)."""
    e = expand_energy(r)
    lead = leading_data(e)
    v = classify_strong_stability(e)
    if method is None:
        method = {"name": r.label()}
    method = dict(method)
    method.setdefault("alpha", [format_rational(a) for a in r.alpha])
    rep = AnalysisReport(
        method=method,
        p=linear_order(r) if order is None else order,
        k_star=lead.k_star,
        beta_star=lead.beta_star,
        gamma_star=lead.gamma_star,
        eigenvalues=v.gamma_star_eigenvalues,
        verdict=v.status.value,
        mark=v.table_mark,
        energy_accuracy=energy_accuracy(lead),
        notes=list(v.notes),
    )
    return rep, v


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


CSV_FIELDS = ["method", "p", "k_star", "beta_star", "beta_star_float", "gamma_star",
              "eigenvalues", "verdict", "mark", "notes"]


def csv_row(rep: AnalysisReport) -> dict:
    return {
        "method": rep.method.get("name", ""),
        "p": rep.p,
        "k_star": rep.k_star,
        "beta_star": format_rational(rep.beta_star),
        "beta_star_float": sig6(float(rep.beta_star)),
        "gamma_star": ";".join(" ".join(format_rational(x) for x in row) for row in rep.gamma_star),
        "eigenvalues": " ".join(sig6(x) for x in rep.eigenvalues),
        "verdict": rep.verdict,
        "mark": rep.mark,
        "notes": ";".join(rep.notes),
    }


def to_csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def format_matrix(G) -> list[str]:
    cells = [[format_rational(x) for x in row] for row in G]
    width = max((len(c) for row in cells for c in row), default=1)
    return ["  [" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells]


def render_text(rep: AnalysisReport) -> str:
    lines = [
        f"method       {rep.method.get('name', '')}",
        f"alpha        {', '.join(rep.method.get('alpha', []))}",
        f"linear order {rep.p}",
        f"k*           {rep.k_star}",
        f"beta_k*      {format_rational(rep.beta_star)}  ({sig6(float(rep.beta_star))})",
        "Gamma*",
        *format_matrix(rep.gamma_star),
        f"eig(Gamma*)  {'  '.join(sig6(x) for x in rep.eigenvalues)}",
        f"energy acc.  {rep.energy_accuracy}",
        f"verdict      {rep.verdict} ({rep.mark})",
    ]
    if rep.notes:
        lines.append(f"notes        {'; '.join(rep.notes)}")
    return "\n".join(lines)


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def compare_row(rep: AnalysisReport, row: Row) -> list[str]:
    """Mismatches between a computed report and a reference row (empty when equal)."""
    bad = []
    if rep.k_star != row.k_star:
        bad.append(f"k*: got {rep.k_star}, expected {row.k_star}")
    if isinstance(row.beta_star, Fraction):
        if rep.beta_star != row.beta_star:
            bad.append(f"beta*: got {format_rational(rep.beta_star)}, "
                       f"expected {format_rational(row.beta_star)}")
    elif not _close(float(rep.beta_star), row.beta_star, EIG_RTOL):
        bad.append(f"beta*: got {sig6(float(rep.beta_star))}, expected {sig6(row.beta_star)}")
    if row.gamma_star is not None and tuple(rep.gamma_star) != row.gamma_star:
        bad.append("Gamma* differs from the reference matrix")
    for (i, j), val in row.gamma_decimals:
        got = float(rep.gamma_star[i][j])
        if not _close(got, val, DECIMAL_RTOL):
            bad.append(f"gamma[{i},{j}]: got {got:.6g}, expected {val}")
    got_eigs = sorted(rep.eigenvalues)
    want = sorted(row.eigenvalues)
    if len(got_eigs) != len(want):
        bad.append(f"eigenvalue count: got {len(got_eigs)}, expected {len(want)}")
    else:
        for g, w in zip(got_eigs, want):
            if not _close(g, w, EIG_RTOL):
                bad.append(f"eigenvalue: got {sig6(g)}, expected {sig6(w)}")
    if rep.mark != row.mark:
        bad.append(f"SS: got {rep.mark}, expected {row.mark}")
    for note in row.notes:
        if note not in rep.notes:
            bad.append(f"missing note {note!r}")
    return bad


_ALPHA_SPLIT = re.compile(r"[,\s]+")


def parse_alpha(text: str) -> list[Fraction]:
    parts = [p for p in _ALPHA_SPLIT.split(text.strip()) if p]
    if not parts:
        raise ValueError("empty coefficient list")
    return [parse_rational(p) for p in parts]
