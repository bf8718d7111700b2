"""Floating-point check of the map-of-d-tuples property on the Riemann sphere.

Fibers are computed by root finding, padded with the point at infinity up
to the full degree, and compared as multisets under the chordal metric
using an optimal assignment. Near-coincident roots are consolidated into a
repeated centroid so that genuinely multiple fibers (perfect powers) are
compared stably. A merged cluster wider than ``CLUSTER_SPREAD`` cannot be
told apart from two distinct nearby roots, so such a sample is treated as
non-generic and redrawn.

Internally points live in complex arrays with infinity encoded as
``inf+0j``, and many fibers are solved at once through stacked companion
matrices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from .correspondence import Correspondence, Factorization, swap_variables
from .errors import (
    DegenerateFiber,
    DegenerateSample,
    LengthMismatch,
    NumericallyZeroPolynomial,
    TooManyDegenerateSamples,
)

DEADBAND = 1e-12
RESIDUAL_BOUND = 1e-8
LEADING_GENERIC = 1e-9
CLUSTER_RADIUS = 1e-2
CLUSTER_SPREAD = 2e-3
DEFAULT_TOL = 1e-6
SAMPLE_RADIUS = 3.0

_ENC_INF = complex(np.inf, 0)
# below this the diagonal pairing of two sorted fibers is reported as is
_EXACT_ENOUGH = 1e-9


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
SpherePoint = Union[complex, _Infinity]


def is_inf(p: SpherePoint) -> bool:
    return p is INF


def _encode(pts: Sequence[SpherePoint]) -> np.ndarray:
    return np.array([_ENC_INF if p is INF else complex(p) for p in pts], dtype=complex)


def _decode(arr: np.ndarray) -> list[SpherePoint]:
    return [INF if math.isinf(z.real) else complex(z) for z in arr]


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    if p is INF and q is INF:
        return 0.0
    if p is INF:
        return 2.0 / math.sqrt(1.0 + abs(q) ** 2)
    if q is INF:
        return 2.0 / math.sqrt(1.0 + abs(p) ** 2)
    return 2.0 * abs(p - q) / math.sqrt((1.0 + abs(p) ** 2) * (1.0 + abs(q) ** 2))


def chordal_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise chordal distances over the last axis, broadcasting leading axes."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    ia, ib = np.isinf(a.real), np.isinf(b.real)
    fa = np.where(ia, 0, a)
    fb = np.where(ib, 0, b)
    na = np.sqrt(1 + np.abs(fa) ** 2)[..., :, None]
    nb = np.sqrt(1 + np.abs(fb) ** 2)[..., None, :]
    ia, ib = ia[..., :, None], ib[..., None, :]
    out = 2 * np.abs(fa[..., :, None] - fb[..., None, :]) / (na * nb)
    out = np.where(ia & ~ib, 2 / nb, out)
    out = np.where(~ia & ib, 2 / na, out)
    return np.where(ia & ib, 0.0, out)


def canonical_order(pts: Sequence[SpherePoint]) -> list[SpherePoint]:
    """Sort by modulus, then argument in ``[0, 2pi)``; infinity last. Stable."""

    def key(p):
        if p is INF:
            return (1, 0.0, 0.0)
        return (0, abs(p), cmath.phase(p) % (2 * math.pi))

    return sorted(pts, key=key)


def _canonical_rows(arr: np.ndarray) -> np.ndarray:
    inf = np.isinf(arr.real)
    fin = np.where(inf, 0, arr)
    order = np.lexsort((np.angle(fin) % (2 * np.pi), np.abs(fin), inf), axis=-1)
    return np.take_along_axis(arr, order, axis=-1)


@dataclass(frozen=True)
class Fiber:
    """``d`` points in canonical order; multiple points appear repeatedly."""

    points: tuple[SpherePoint, ...]
    spread: float = 0.0
    encoded: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_array(cls, arr: np.ndarray, spread: float = 0.0) -> Fiber:
        return cls(tuple(_decode(arr)), float(spread), arr)

    @property
    def array(self) -> np.ndarray:
        return self.encoded if self.encoded is not None else _encode(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        return self.points[k]


# -- root finding -----------------------------------------------------------------


def _polyval_rows(C: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Evaluate row ``n`` of ascending coefficients ``C`` at every entry of ``Z[n]``."""
    acc = np.zeros(Z.shape, dtype=complex)
    for k in range(C.shape[1] - 1, -1, -1):
        acc = acc * Z + C[:, k, None]
    return acc


def _relative_residual(C: np.ndarray, Z: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", over="ignore"):
        scale = _polyval_rows(np.abs(C).astype(complex), np.abs(Z).astype(complex)).real
        num = np.abs(_polyval_rows(C, Z))
        # an exact root at zero of a polynomial with zero constant term gives 0/0
        return np.where((num == 0) & (scale == 0), 0.0, num / scale)


def _full_degree_roots(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Roots of each row of ``C``, whose last coefficient must be nonzero.

    Returns ``(roots, ok)``; ``ok`` flags rows whose roots all satisfy
    ``|p(r)| <= 1e-8 * sum |c_k| |r|^k``. Isolated roots get a few Newton
    steps, kept only when they do not increase the residual.
    """
    n, m = C.shape
    d = m - 1
    comp = np.zeros((n, d, d), dtype=complex)
    comp[:, 0, :] = -(C[:, :-1] / C[:, -1:])[:, ::-1]
    if d > 1:
        idx = np.arange(d - 1)
        comp[:, idx + 1, idx] = 1
    roots = np.linalg.eigvals(comp)
    if d > 1:
        gaps = chordal_matrix(roots, roots)
        gaps[:, np.arange(d), np.arange(d)] = np.inf
        isolated = gaps.min(axis=-1) > CLUSTER_RADIUS
    else:
        isolated = np.ones(roots.shape, dtype=bool)
    before = _relative_residual(C, roots)
    if isolated.any():
        dC = C[:, 1:] * np.arange(1, m)
        z = roots
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            for _ in range(3):
                dv = _polyval_rows(dC, z)
                step = _polyval_rows(C, z) / np.where(dv != 0, dv, 1)
                z = z - np.where(dv != 0, step, 0)
        after = _relative_residual(C, z)
        better = isolated & np.isfinite(after) & (after <= before)
        roots = np.where(better, z, roots)
        before = np.where(better, after, before)
    ok = np.all(before <= RESIDUAL_BOUND, axis=-1)
    return roots, ok


def _roots_batch(C: np.ndarray, scale: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Roots of every row of ``C`` padded with infinity to ``C.shape[1] - 1`` entries.

    Coefficients at or below ``1e-12 * scale`` count as zero. Returns the
    root array and a mask of rows that are numerically zero or fail the
    residual bound.
    """
    n, m = C.shape
    d = m - 1
    C = np.where(np.abs(C) <= DEADBAND * scale[:, None], 0, C)
    nonzero = C != 0
    bad = ~nonzero.any(axis=1)
    top = np.where(bad, 0, d - np.argmax(nonzero[:, ::-1], axis=1))
    R = np.full((n, d), _ENC_INF, dtype=complex)
    for t in np.unique(top[~bad]):
        if t == 0:
            continue
        rows = np.flatnonzero((top == t) & ~bad)
        roots, ok = _full_degree_roots(C[rows, : t + 1])
        R[rows, :t] = roots
        bad[rows[~ok]] = True
    return R, bad


def poly_roots(coeffs: Sequence[complex], d: Optional[int] = None) -> list[SpherePoint]:
    """All roots of ``sum coeffs[k] t^k``, padded with infinity up to ``d``.

    Coefficients below ``1e-12`` times the largest count as zero; each
    missing degree becomes one root at infinity. Roots are companion-matrix
    eigenvalues, Newton-polished when isolated.
    """
    c = np.asarray(coeffs, dtype=complex)
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        raise NumericallyZeroPolynomial("polynomial is numerically zero")
    n = len(c) - 1
    if d is None:
        d = n
    elif d > n:
        c = np.concatenate([c, np.zeros(d - n, dtype=complex)])
    elif d < n and np.any(np.abs(c[d + 1:]) > DEADBAND * scale):
        raise ValueError(f"polynomial of degree above {d} in a degree-{d} fiber")
    else:
        c = c[: d + 1]
    R, bad = _roots_batch(c[None, :], np.array([scale]))
    if bad[0]:
        raise DegenerateFiber("roots fail the residual bound")
    return _decode(R[0])


def aberth_roots(coeffs: Sequence[complex], max_iter: int = 500) -> list[complex]:
    """Aberth-Ehrlich simultaneous iteration; an independent root finder."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    n = len(c) - 1
    if n < 1:
        return []
    monic = c / c[-1]
    radius = 1 + float(np.max(np.abs(monic[:-1])))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    dc = c[1:] * np.arange(1, n + 1)
    for _ in range(max_iter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        ratio = np.where(dp != 0, p / np.where(dp != 0, dp, 1), 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        inv = 1 / diff
        np.fill_diagonal(inv, 0)
        w = ratio / (1 - ratio * inv.sum(axis=1))
        z = z - w
        if np.all(np.abs(w) <= 1e-15 * np.maximum(1, np.abs(z))):
            break
    return [complex(r) for r in z]


# -- clustering -------------------------------------------------------------------


def _consolidate_rows(R: np.ndarray, radius: float = CLUSTER_RADIUS) -> tuple[np.ndarray, np.ndarray]:
    """Single-linkage merge within each row; returns centroids and cluster diameters."""
    n, d = R.shape
    if d < 2:
        return R.copy(), np.zeros(n)
    dist = chordal_matrix(R, R)
    close = dist < radius
    label = np.broadcast_to(np.arange(d), (n, d)).copy()
    for _ in range(d):
        nxt = np.where(close, label[:, None, :], d).min(axis=-1)
        if np.array_equal(nxt, label):
            break
        label = nxt
    same = label[:, :, None] == label[:, None, :]
    spread = np.where(same, dist, 0.0).max(axis=(1, 2))
    inf = np.isinf(R.real)
    fin = np.where(inf, 0, R)
    means = (same * fin[:, None, :]).sum(axis=-1) / same.sum(axis=-1)
    has_inf = (same & inf[:, None, :]).any(axis=-1)
    return np.where(has_inf, _ENC_INF, means), spread


def consolidate(pts: Sequence[SpherePoint], radius: float = CLUSTER_RADIUS) -> tuple[list[SpherePoint], float]:
    """Merge points closer than ``radius`` (chordal, single linkage).

    Each cluster is replaced by its centroid repeated once per member, so
    multiplicities survive. Returns the new list and the largest chordal
    diameter of any cluster.
    """
    arr = _encode(pts)
    if arr.size == 0:
        return [], 0.0
    out, spread = _consolidate_rows(arr[None, :], radius)
    return _decode(out[0]), float(spread[0])


# -- fibers -----------------------------------------------------------------------


def _float_matrix(f: Correspondence) -> np.ndarray:
    return np.array([[complex(c) for c in row] for row in f.A], dtype=complex)


@dataclass
class _FiberBatch:
    points: np.ndarray
    spread: np.ndarray
    degenerate: np.ndarray
    leading: np.ndarray


def _fibers_from_coeffs(C: np.ndarray, scale: np.ndarray) -> _FiberBatch:
    d = C.shape[1] - 1
    with np.errstate(invalid="ignore", divide="ignore"):
        leading = np.abs(C[:, d]) / scale
    R, bad = _roots_batch(C, scale)
    bad |= ~(scale > 0) | ~np.isfinite(scale)
    R, spread = _consolidate_rows(R)
    return _FiberBatch(_canonical_rows(R), spread, bad, np.nan_to_num(leading))


def _fibers(Af: np.ndarray, X: np.ndarray) -> _FiberBatch:
    """``y``-fibers of the matrix ``Af`` over every point of ``X``.

    The scale of a fiber is the largest ``|A[i][j] x^i|``, so that the
    deadband and the genericity threshold are relative to the terms that
    were actually summed. Over infinity the fiber polynomial is row ``d``.
    """
    d = Af.shape[0] - 1
    inf = np.isinf(X.real)
    fin = np.where(inf, 0, X)
    powers = fin[:, None] ** np.arange(d + 1)
    C = powers @ Af
    scale = (np.abs(powers)[:, :, None] * np.abs(Af)[None]).max(axis=(1, 2))
    C[inf] = Af[d]
    scale[inf] = np.abs(Af[d]).max()
    return _fibers_from_coeffs(C, scale)


def _single_fiber(Af: np.ndarray, x0: SpherePoint) -> Fiber:
    batch = _fibers(Af, _encode([x0]))
    if batch.degenerate[0]:
        raise DegenerateFiber(f"fiber over {x0} is degenerate")
    return Fiber.from_array(batch.points[0], batch.spread[0])


def fiber_y(f: Correspondence, x0: SpherePoint) -> Fiber:
    """The ``d`` values of ``y`` with ``f(x0, y) = 0``, counting infinity."""
    return _single_fiber(_float_matrix(f), x0)


def fiber_x(f: Correspondence, y0: SpherePoint) -> Fiber:
    """The ``d`` values of ``x`` with ``f(x, y0) = 0``, counting infinity."""
    return _single_fiber(_float_matrix(f).T, y0)


def _as_array(pts) -> np.ndarray:
    if isinstance(pts, Fiber):
        return pts.array
    if isinstance(pts, np.ndarray):
        return pts
    return _encode(pts)


def _assignment_max(cost: np.ndarray) -> float:
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _sorted_match(cost: np.ndarray) -> float:
    """Worst pair of a matching between two canonically sorted fibers."""
    diag = float(np.diagonal(cost).max())
    if diag <= _EXACT_ENOUGH:
        return diag
    return min(diag, _assignment_max(cost))


def multiset_match(fa, fb, tol: float) -> tuple[bool, float]:
    """Optimal chordal assignment between two fibers; ``(all pairs <= tol, worst pair)``."""
    if len(fa) != len(fb):
        raise LengthMismatch(f"fibers of length {len(fa)} and {len(fb)}")
    if not len(fa):
        return True, 0.0
    worst = _assignment_max(chordal_matrix(_as_array(fa), _as_array(fb)))
    return worst <= tol, worst


# -- witnesses --------------------------------------------------------------------


@dataclass(frozen=True)
class TupleWitness:
    x1: SpherePoint
    forward: Fiber
    back: tuple[Fiber, ...]
    verdict: bool
    max_mismatch: float
    side: str = "x"


@dataclass
class _WitnessBatch:
    X: np.ndarray
    forward: _FiberBatch
    back: _FiberBatch
    mismatch: np.ndarray
    usable: np.ndarray
    generic: np.ndarray

    def witness(self, k: int, tol: float, side: str) -> TupleWitness:
        d = self.forward.points.shape[1]
        fwd = Fiber.from_array(self.forward.points[k], self.forward.spread[k])
        back = tuple(
            Fiber.from_array(self.back.points[k * d + j], self.back.spread[k * d + j])
            for j in range(d)
        )
        x1 = _decode(self.X[k:k + 1])[0]
        m = float(self.mismatch[k])
        return TupleWitness(x1, fwd, back, m <= tol, m, side)


def _witness_batch(Af: np.ndarray, X: np.ndarray) -> _WitnessBatch:
    d = Af.shape[0] - 1
    n = len(X)
    fwd = _fibers(Af, X)
    back = _fibers(Af.T, fwd.points.reshape(-1))
    B = back.points.reshape(n, d, d)
    usable = ~fwd.degenerate & ~back.degenerate.reshape(n, d).any(axis=1)
    spreads = np.maximum(fwd.spread, back.spread.reshape(n, d).max(axis=1))
    generic = usable & (fwd.leading >= LEADING_GENERIC) & (spreads <= CLUSTER_SPREAD)
    # x1 itself must lie in every back-fiber
    own = chordal_matrix(X[:, None, None], B)[:, :, 0, :].min(axis=-1).max(axis=1)
    cost = chordal_matrix(B, np.broadcast_to(B[:, :1, :], B.shape))
    mismatch = np.full(n, np.inf)
    for k in np.flatnonzero(usable):
        worst = float(own[k])
        for j in range(1, d):
            worst = max(worst, _sorted_match(cost[k, j]))
        mismatch[k] = worst
    return _WitnessBatch(X, fwd, back, mismatch, usable, generic)


def d_tuple_witness(f: Correspondence, x1: SpherePoint, tol: float = DEFAULT_TOL) -> TupleWitness:
    """Follow ``x1`` forward to its ``y``-fiber and back; the back-fibers must coincide.

    The verdict also requires every back-fiber to contain ``x1``.
    """
    batch = _witness_batch(_float_matrix(f), _encode([x1]))
    if not batch.usable[0]:
        raise DegenerateSample(f"a fiber through {x1} is degenerate")
    return batch.witness(0, tol, "x")


@dataclass(frozen=True)
class OracleVerdict:
    passed: bool
    samples: int
    rejected: int
    worst: TupleWitness
    tol: float
    seed: int


def sample_points(n: int, seed: int) -> np.ndarray:
    """Candidate sample points for a seed: uniform on the disk of radius 3."""
    rng = np.random.default_rng(seed)
    r = SAMPLE_RADIUS * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return r * np.exp(1j * t)


def _choose(generic: np.ndarray, n_samples: int) -> tuple[np.ndarray, int]:
    chosen = np.flatnonzero(generic)[:n_samples]
    if len(chosen) < n_samples:
        raise TooManyDegenerateSamples(
            f"only {len(chosen)} of {len(generic)} samples were generic"
        )
    considered = int(chosen[-1]) + 1
    return chosen, considered - n_samples


def verify_map_of_tuples(
    f: Correspondence,
    n_samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    both_sides: bool = True,
) -> OracleVerdict:
    """Numerically test the map-of-d-tuples property at random points.

    Candidates come from a fixed seed and are taken in order. A candidate is
    skipped when the leading coefficient of ``f(x1, .)`` is below ``1e-9`` of
    its scale or when any fiber along the way has an ambiguous root cluster.
    With ``both_sides`` each accepted point is also used as a ``y``-side
    start. At most ``10 * n_samples`` candidates are drawn.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    mats = [("x", _float_matrix(f))]
    if both_sides:
        mats.append(("y", _float_matrix(swap_variables(f))))
    X = sample_points(10 * n_samples, seed)
    # most candidates are generic, so try a short prefix first
    for size in (n_samples + n_samples // 4 + 4, len(X)):
        batches = [(side, _witness_batch(Af, X[:size])) for side, Af in mats]
        generic = np.logical_and.reduce([b.generic for _, b in batches])
        if generic.sum() >= n_samples or size == len(X):
            break
    chosen, rejected = _choose(generic, n_samples)
    best = None
    for side, b in batches:
        j = int(np.argmax(b.mismatch[chosen]))
        if best is None or b.mismatch[chosen[j]] > best[0]:
            best = (float(b.mismatch[chosen[j]]), side, b, int(chosen[j]))
    value, side, b, k = best
    return OracleVerdict(value <= tol, n_samples, rejected, b.witness(k, tol, side), tol, seed)


def factorization_mismatch(
    f: Correspondence,
    fact: Factorization,
    n_samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> float:
    """Worst chordal distance between ``f``-fibers and ``Psi = Phi(x1)``-fibers."""
    d = f.d
    if fact.phi.d != d or fact.psi.d != d:
        return math.inf
    Af = _float_matrix(f)
    kap, lam, mu, nu = (
        np.array([complex(c) for c in v])
        for v in (fact.phi.num_coeffs, fact.phi.den_coeffs, fact.psi.num_coeffs, fact.psi.den_coeffs)
    )
    X = sample_points(10 * n_samples, seed)
    ours = _fibers(Af, X)
    # lambda(x1) * mu(y) - kappa(x1) * nu(y) = 0
    la = np.polyval(lam[::-1], X)[:, None]
    ka = np.polyval(kap[::-1], X)[:, None]
    T = la * mu[None, :] - ka * nu[None, :]
    scale = (np.abs(la) * np.abs(mu)[None, :]).max(axis=1)
    scale = np.maximum(scale, (np.abs(ka) * np.abs(nu)[None, :]).max(axis=1))
    theirs = _fibers_from_coeffs(T, scale)
    generic = (
        ~ours.degenerate
        & ~theirs.degenerate
        & (ours.leading >= LEADING_GENERIC)
        & (np.maximum(ours.spread, theirs.spread) <= CLUSTER_SPREAD)
    )
    chosen, _ = _choose(generic, n_samples)
    cost = chordal_matrix(ours.points[chosen], theirs.points[chosen])
    return max(_sorted_match(c) for c in cost)


def verify_factorization(
    f: Correspondence,
    fact: Factorization,
    n_samples: int = 100,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> bool:
    """True when ``Phi(x) = Psi(y)`` has the same ``y``-fibers as ``f`` at every sample."""
    return factorization_mismatch(f, fact, n_samples, tol, seed) <= tol
