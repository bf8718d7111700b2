"""JSON documents for matrices, maps and reports, plus the text renderings.

Rationals are written as decimal strings so documents round-trip exactly.
Matrix documents use the display layout: ``entries[r][c]`` holds the
coefficient of ``x^(d-r) y^(d-c)``, so the top-left entry belongs to
``x^d y^d``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .correspondence import (
    Classification,
    Correspondence,
    Factorization,
    FractionalMap,
    NotMapOfTuples,
    PerfectPower,
    Rank2,
    SymmetryReport,
)
from .errors import ValidationError
from .gaussian import GaussianRational, format_gaussian


def _q_doc(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _q_load(doc: Any) -> Fraction:
    try:
        num, den = int(doc["num"]), int(doc["den"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed rational {doc!r}") from exc
    if den <= 0:
        raise ValidationError(f"denominator must be positive, got {den}")
    return Fraction(num, den)


def gaussian_doc(z: GaussianRational) -> dict:
    return {"re": _q_doc(z.re), "im": _q_doc(z.im)}


def gaussian_load(doc: Any) -> GaussianRational:
    try:
        return GaussianRational(_q_load(doc["re"]), _q_load(doc["im"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed complex rational {doc!r}") from exc


def save_matrix(f: Correspondence) -> dict:
    d = f.d
    return {
        "d": d,
        "entries": [[gaussian_doc(f.A[d - r][d - c]) for c in range(d + 1)] for r in range(d + 1)],
    }


def load_matrix(doc: Any) -> Correspondence:
    try:
        d = int(doc["d"])
        rows = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("matrix document needs integer 'd' and 'entries'") from exc
    if d < 1 or len(rows) != d + 1 or any(len(r) != d + 1 for r in rows):
        raise ValidationError(f"entries must be a {d + 1}x{d + 1} array")
    A = [[gaussian_load(rows[d - i][d - j]) for j in range(d + 1)] for i in range(d + 1)]
    return Correspondence(A)


def dumps(doc: Any) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def map_doc(phi: FractionalMap, var: str = "x") -> dict:
    num, den = phi.desc()
    return {
        "d": phi.d,
        "num": [gaussian_doc(c) for c in num],
        "den": [gaussian_doc(c) for c in den],
        "text": phi.to_str(var),
    }


def factorization_doc(fact: Factorization) -> dict:
    return {
        "phi": map_doc(fact.phi, "x"),
        "psi": map_doc(fact.psi, "y"),
        "scalar": None if fact.scalar is None else gaussian_doc(fact.scalar),
    }


def classification_doc(cls: Classification) -> dict:
    if isinstance(cls, Rank2):
        return {
            "type": "Rank2",
            "d": cls.d,
            "map_of_tuples": True,
            "factorization": factorization_doc(cls.factorization),
        }
    if isinstance(cls, PerfectPower):
        return {
            "type": "PerfectPower",
            "m": cls.m,
            "c": gaussian_doc(cls.c),
            "map_of_tuples": True,
            "base": save_matrix(cls.base),
            "base_text": str(cls.base),
            "base_class": classification_doc(cls.base_class),
        }
    return {"type": "NotMapOfTuples", "rank": cls.rank, "map_of_tuples": False}


def symmetry_doc(rep: SymmetryReport) -> dict:
    def opt(z):
        return None if z is None else gaussian_doc(z)

    return {
        "symmetric": rep.symmetric,
        "swap_scalar": opt(rep.swap_scalar),
        "real_up_to_constant": rep.real_up_to_constant,
        "real_constant": opt(rep.real_constant),
        "hermitian_up_to_unimodular": opt(rep.hermitian_up_to_unimodular),
        "notes": list(rep.notes),
    }


# -- text ---------------------------------------------------------------------


def classification_text(cls: Classification, indent: str = "") -> str:
    if isinstance(cls, Rank2):
        fact = cls.factorization
        return (
            f"{indent}Rank2: map of {cls.d}-tuples\n"
            f"{indent}  Phi(x) = {fact.phi.to_str('x')}\n"
            f"{indent}  Psi(y) = {fact.psi.to_str('y')}"
        )
    if isinstance(cls, PerfectPower):
        base = cls.base_class
        k = cls.base.d
        head = f"{indent}PerfectPower m={cls.m}, base: map of {k}-tuples"
        lines = [head, f"{indent}  f = ({format_gaussian(cls.c)})*({cls.base})^{cls.m}"]
        lines.append(classification_text(base, indent + "  "))
        return "\n".join(lines)
    return f"{indent}NotMapOfTuples: rank {cls.rank}"


def symmetry_text(rep: SymmetryReport) -> str:
    def opt(z):
        return "none" if z is None else format_gaussian(z)

    herm = rep.hermitian_up_to_unimodular
    if herm is None:
        herm_s = "none"
    elif herm == -1:
        herm_s = "u = -1 (skew-Hermitian)"
    elif herm == 1:
        herm_s = "u = 1 (Hermitian)"
    else:
        herm_s = f"u = {format_gaussian(herm)}"
    real = "true" if rep.real_up_to_constant else "false"
    if rep.real_constant is not None:
        real += f" (constant = {format_gaussian(rep.real_constant)})"
    lines = [
        f"symmetric: {'true' if rep.symmetric else 'false'}",
        f"swap_scalar: {opt(rep.swap_scalar)}",
        f"real_up_to_constant: {real}",
        f"hermitian_up_to_unimodular: {herm_s}",
    ]
    lines += [f"note: {n}" for n in rep.notes]
    return "\n".join(lines)


def matrix_text(f: Correspondence) -> str:
    """Display-layout grid, one row per x-power from ``x^d`` down."""
    d = f.d
    cells = [[format_gaussian(f.A[d - r][d - c]) for c in range(d + 1)] for r in range(d + 1)]
    w = max(len(s) for row in cells for s in row)
    return "\n".join("  ".join(s.rjust(w) for s in row) for row in cells)
