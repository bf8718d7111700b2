"""Exact rank and row-space decomposition over Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .errors import RankNotTwo
from .gaussian import ZERO, GaussianRational, Scalar


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[GaussianRational, ...]

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> ExactMatrix:
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        flat = tuple(GaussianRational.coerce(c) for r in rows for c in r)
        return cls(len(rows), ncols, flat)

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]
        )


def _as_rows(m) -> list[list[GaussianRational]]:
    if isinstance(m, ExactMatrix):
        return m.to_rows()
    return [[GaussianRational.coerce(c) for c in r] for r in m]


# Gaussian integers are (re, im) pairs of Python ints below.

def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_exact_div(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    assert re % n == 0 and im % n == 0, "Bareiss step must divide exactly"
    return (re // n, im // n)


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators to land in Z[i]."""
    out = []
    for r in rows:
        den = lcm(*(d for c in r for d in (c.re.denominator, c.im.denominator)), 1)
        out.append([(int(c.re * den), int(c.im * den)) for c in r])
    return out


def rank_exact(m) -> int:
    """Rank over Q(i) by fraction-free (Bareiss) elimination with pivoting.

    Rows are first scaled into the Gaussian integers, which leaves the rank
    unchanged; every Bareiss division is then exact in Z[i].
    """
    rows = _integer_rows(_as_rows(m))
    if not rows or not rows[0]:
        raise ValueError("rank_exact needs a nonempty matrix")
    nr, nc = len(rows), len(rows[0])
    prev = (1, 0)
    rank = 0
    for col in range(nc):
        if rank == nr:
            break
        piv = next((r for r in range(rank, nr) if rows[r][col] != (0, 0)), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, nr):
            a = rows[r][col]
            for c in range(col + 1, nc):
                num = _gi_sub(_gi_mul(p, rows[r][c]), _gi_mul(a, rows[rank][c]))
                rows[r][c] = _gi_exact_div(num, prev)
            rows[r][col] = (0, 0)
        prev = p
        rank += 1
    return rank


def _independent(u, v) -> tuple[int, int] | None:
    """Column pair with a nonzero 2x2 minor of rows ``u, v``; ``None`` if parallel."""
    n = len(u)
    for p in range(n):
        for q in range(p + 1, n):
            if not (u[p] * v[q] - u[q] * v[p]).is_zero():
                return p, q
    return None


def row_basis_decompose(m):
    """Write every row as a combination of the first two independent rows.

    Returns ``(a, b, sigma, tau)`` with ``R_j = sigma[j]*R_a + tau[j]*R_b``
    exactly for every row index ``j``. Raises ``RankNotTwo`` otherwise.
    """
    rows = _as_rows(m)
    a = next((i for i, r in enumerate(rows) if any(not c.is_zero() for c in r)), None)
    if a is None:
        raise RankNotTwo(0)
    b = cols = None
    for j in range(a + 1, len(rows)):
        cols = _independent(rows[a], rows[j])
        if cols is not None:
            b = j
            break
    if b is None:
        raise RankNotTwo(1)
    p, q = cols
    ra, rb = rows[a], rows[b]
    det = ra[p] * rb[q] - ra[q] * rb[p]
    sigma, tau = [], []
    for j, r in enumerate(rows):
        s = (r[p] * rb[q] - r[q] * rb[p]) / det
        t = (ra[p] * r[q] - ra[q] * r[p]) / det
        if any(not (s * x + t * y - z).is_zero() for x, y, z in zip(ra, rb, r)):
            raise RankNotTwo(rank_exact(rows))
        sigma.append(s)
        tau.append(t)
    return a, b, tuple(sigma), tuple(tau)


def zeros(n: int, k: int) -> list[list[GaussianRational]]:
    return [[ZERO] * k for _ in range(n)]
