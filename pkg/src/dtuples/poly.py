"""Dense univariate and bivariate polynomials over the Gaussian rationals.

``UniPoly`` is a univariate polynomial stored low degree first. ``BiPoly``
is a polynomial in ``y`` whose coefficients are ``UniPoly`` objects in ``x``,
which is the shape the y-direction GCD and squarefree machinery wants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import BadExponent, BothZero, ZeroPolynomial
from .gaussian import ZERO, GaussianRational, Scalar, format_gaussian

G = GaussianRational


def _coerce(c) -> GaussianRational:
    return G.coerce(c)


def _term(coeff: GaussianRational, mono: str, first: bool) -> str:
    """Render one signed term for the textual polynomial form."""
    if not mono:
        s = format_gaussian(coeff)
        if first or s.startswith("-"):
            return s
        return "+" + s
    if coeff == 1:
        return mono if first else "+" + mono
    if coeff == -1:
        return "-" + mono
    if coeff.is_real() or not coeff.re:
        s = format_gaussian(coeff)
        body = f"{s}*{mono}"
        if s.startswith("-"):
            return body
        return body if first else "+" + body
    return ("" if first else "+") + f"({format_gaussian(coeff)})*{mono}"


def _power(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


class UniPoly:
    """Univariate polynomial; ``coeffs[k]`` is the coefficient of ``t^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> UniPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> UniPoly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def padded(self, n: int) -> tuple[GaussianRational, ...]:
        """Coefficient vector of length ``n`` (low degree first)."""
        if len(self.coeffs) > n:
            raise ValueError(f"degree {self.degree} does not fit in {n} slots")
        return self.coeffs + (ZERO,) * (n - len(self.coeffs))

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> UniPoly:
        c = _coerce(c)
        return UniPoly([c * a for a in self.coeffs])

    def __pow__(self, n: int) -> UniPoly:
        result = UniPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [ZERO] * (dq + 1)
        inv = 1 / other.lc
        m = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            c = rem[k + m] * inv
            quo[k] = c
            if c.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return UniPoly(quo), UniPoly(rem[:m])

    __divmod__ = divmod

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def exact_div(self, other: UniPoly) -> Optional[UniPoly]:
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        q, r = self.divmod(other)
        return None if r else q

    def derivative(self) -> UniPoly:
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def __call__(self, t):
        """Exact for ints, fractions and Gaussian rationals; floating otherwise."""
        exact = isinstance(t, (int, Fraction, GaussianRational))
        if exact:
            t = GaussianRational.coerce(t)
        acc = ZERO if exact else 0
        for c in reversed(self.coeffs):
            acc = acc * t + (c if exact else complex(c))
        return acc

    def conjugate(self) -> UniPoly:
        return UniPoly([c.conjugate() for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.to_str()!r})"

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            parts.append(_term(c, _power(var, k), not parts))
        return "".join(parts)

    __str__ = to_str


# a prime congruent to 3 mod 4, so Z[i]/(P) is the field with P^2 elements
_P = 2_147_483_647


def _mod_p(c: GaussianRational) -> Optional[tuple[int, int]]:
    den = c.re.denominator * c.im.denominator
    if den % _P == 0:
        return None
    inv = pow(den, -1, _P)
    return (
        c.re.numerator * c.im.denominator * inv % _P,
        c.im.numerator * c.re.denominator * inv % _P,
    )


def _fp2_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1]) % _P, (a[0] * b[1] + a[1] * b[0]) % _P


def _fp2_inv(a):
    n = pow((a[0] * a[0] + a[1] * a[1]) % _P, -1, _P)
    return a[0] * n % _P, -a[1] * n % _P


def _coprime_mod_p(p: UniPoly, q: UniPoly) -> bool:
    """True only if ``p`` and ``q`` are certainly coprime.

    Reduction modulo a prime that keeps both leading coefficients nonzero
    can only raise the degree of the gcd, so a unit gcd modulo the prime
    proves a unit gcd over Q(i). ``False`` means undecided.
    """
    polys = []
    for u in (p, q):
        red = [_mod_p(c) for c in u.coeffs]
        if any(r is None for r in red) or red[-1] == (0, 0):
            return False
        polys.append(red)
    a, b = polys
    while len(b) > 1:
        inv = _fp2_inv(b[-1])
        a = list(a)
        while len(a) >= len(b):
            c = _fp2_mul(a[-1], inv)
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                t = _fp2_mul(c, bj)
                a[shift + j] = ((a[shift + j][0] - t[0]) % _P, (a[shift + j][1] - t[1]) % _P)
            a.pop()
            while a and a[-1] == (0, 0):
                a.pop()
        if not a:
            return False
        a, b = b, a
    return True


def unipoly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic GCD by the Euclidean algorithm over Q(i).

    Coprime inputs, the common case, are settled first by a modular check.
    """
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd of two zero polynomials is undefined")
    if p.degree > 0 and q.degree > 0 and _coprime_mod_p(p, q):
        return UniPoly.constant(1)
    while q:
        p, q = q, p % q
    return p.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: returns ``[(a_k, k)]`` with ``p = lc * prod a_k^k``.

    Only factors of positive degree are listed; each ``a_k`` is monic.
    """
    if p.degree <= 0:
        return []
    dp = p.derivative()
    a = unipoly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        a = unipoly_gcd(b, d)
        if a.degree > 0:
            out.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


def unipoly_root(p: UniPoly, m: int) -> Optional[UniPoly]:
    """Monic ``r`` with ``p = lc(p) * r^m``, or ``None`` if there is none."""
    if p.is_zero():
        return None
    r = UniPoly.constant(1)
    for a, k in squarefree_decomposition(p):
        if k % m:
            return None
        r = r * a ** (k // m)
    if (r ** m).scale(p.lc) != p:
        return None
    return r


# ---------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Bivariate polynomial ``sum_j ys[j](x) * y^j``."""

    __slots__ = ("ys",)

    def __init__(self, ys: Iterable[UniPoly] = ()):
        cs = list(ys)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "ys", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Scalar]) -> BiPoly:
        """Build from ``{(x_power, y_power): coefficient}``."""
        if not terms:
            return cls()
        dy = max(j for _, j in terms)
        dx = max(i for i, _ in terms)
        grid = [[ZERO] * (dx + 1) for _ in range(dy + 1)]
        for (i, j), c in terms.items():
            grid[j][i] = grid[j][i] + _coerce(c)
        return cls(UniPoly(row) for row in grid)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[Scalar]]) -> BiPoly:
        """``rows[i][j]`` is the coefficient of ``x^i y^j``."""
        ncols = max((len(r) for r in rows), default=0)
        return cls(UniPoly(rows[i][j] for i in range(len(rows))) for j in range(ncols))

    @classmethod
    def constant(cls, c: Scalar) -> BiPoly:
        return cls((UniPoly.constant(c),))

    @classmethod
    def from_x(cls, p: UniPoly) -> BiPoly:
        return cls((p,))

    def to_matrix(self, nx: int | None = None, ny: int | None = None) -> list[list[GaussianRational]]:
        """Dense ``[x_power][y_power]`` coefficient grid."""
        nx = self.deg_x + 1 if nx is None else nx
        ny = self.deg_y + 1 if ny is None else ny
        if self.deg_x >= nx or self.deg_y >= ny:
            raise ValueError("polynomial does not fit in the requested grid")
        return [[self.coeff(i, j) for j in range(ny)] for i in range(nx)]

    def coeff(self, i: int, j: int) -> GaussianRational:
        return self.ys[j].coeff(i) if j < len(self.ys) else ZERO

    def terms(self) -> Iterator[tuple[int, int, GaussianRational]]:
        for j, p in enumerate(self.ys):
            for i, c in enumerate(p.coeffs):
                if not c.is_zero():
                    yield i, j, c

    @property
    def deg_y(self) -> int:
        return len(self.ys) - 1

    @property
    def deg_x(self) -> int:
        return max((p.degree for p in self.ys), default=-1)

    def is_zero(self) -> bool:
        return not self.ys

    def __bool__(self):
        return bool(self.ys)

    @property
    def lc_y(self) -> UniPoly:
        return self.ys[-1] if self.ys else UniPoly()

    def lex_lc(self) -> GaussianRational:
        """Coefficient of the lexicographically largest term (x before y)."""
        best = None
        for i, j, c in self.terms():
            if best is None or (i, j) > best[0]:
                best = ((i, j), c)
        return best[1] if best else ZERO

    def __add__(self, other: BiPoly) -> BiPoly:
        a, b = self.ys, other.ys
        if len(a) < len(b):
            a, b = b, a
        return BiPoly([p + q for p, q in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> BiPoly:
        return BiPoly(-p for p in self.ys)

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other) -> BiPoly:
        if isinstance(other, UniPoly):
            return BiPoly(p * other for p in self.ys)
        if not isinstance(other, BiPoly):
            return self.scale(other)
        if not self.ys or not other.ys:
            return BiPoly()
        out = [UniPoly()] * (len(self.ys) + len(other.ys) - 1)
        for j, p in enumerate(self.ys):
            if p.is_zero():
                continue
            for k, q in enumerate(other.ys):
                out[j + k] = out[j + k] + p * q
        return BiPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> BiPoly:
        return BiPoly(p.scale(c) for p in self.ys)

    def __pow__(self, n: int) -> BiPoly:
        result = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift_y(self, k: int) -> BiPoly:
        """Multiply by ``y^k``."""
        return BiPoly([UniPoly()] * k + list(self.ys))

    def diff_y(self) -> BiPoly:
        return BiPoly([p.scale(j) for j, p in enumerate(self.ys)][1:])

    def swap(self) -> BiPoly:
        """Exchange the roles of ``x`` and ``y``."""
        return BiPoly.from_terms({(j, i): c for i, j, c in self.terms()})

    def conjugate(self) -> BiPoly:
        return BiPoly(p.conjugate() for p in self.ys)

    def quo_x(self, p: UniPoly) -> Optional[BiPoly]:
        """Divide every y-coefficient by ``p`` exactly; ``None`` if impossible."""
        out = []
        for q in self.ys:
            r = q.exact_div(p)
            if r is None:
                return None
            out.append(r)
        return BiPoly(out)

    def content_y(self) -> UniPoly:
        if self.is_zero():
            raise ZeroPolynomial("content of the zero polynomial")
        g = UniPoly()
        for p in self.ys:
            if p:
                g = unipoly_gcd(g, p) if g else p.monic()
            if g.degree == 0:
                break
        return g

    def primitive_y(self) -> BiPoly:
        q = self.quo_x(self.content_y())
        assert q is not None
        return q

    def normalized(self) -> BiPoly:
        """Scale so the lexicographically leading coefficient is 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self.lex_lc())

    def __call__(self, x, y):
        acc = 0
        for p in reversed(self.ys):
            acc = acc * y + p(x)
        return acc

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.ys == other.ys
        return NotImplemented

    def __hash__(self):
        return hash(self.ys)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    def __str__(self) -> str:
        ts = sorted(self.terms(), key=lambda t: (t[0], t[1]), reverse=True)
        if not ts:
            return "0"
        parts = []
        for i, j, c in ts:
            mono = "*".join(s for s in (_power("x", i), _power("y", j)) if s)
            parts.append(_term(c, mono, not parts))
        return "".join(parts)


def bipoly_content_y(f: BiPoly) -> UniPoly:
    """Monic GCD of the y-coefficients of ``f``; non-constant means a factor in x alone."""
    return f.content_y()


def bipoly_exact_div(f: BiPoly, g: BiPoly) -> Optional[BiPoly]:
    """``f / g`` in Q(i)[x][y] when the division is exact, else ``None``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q = BiPoly()
    r = f
    lg = g.lc_y
    while r and r.deg_y >= g.deg_y:
        t = r.lc_y.exact_div(lg)
        if t is None:
            return None
        k = r.deg_y - g.deg_y
        step = BiPoly.from_x(t).shift_y(k)
        q = q + step
        r = r - g * step
    return None if r else q


def _prem(f: BiPoly, g: BiPoly) -> BiPoly:
    """Pseudo-remainder of ``f`` by ``g`` with respect to ``y``."""
    n, m = f.deg_y, g.deg_y
    if n < m:
        return f
    lg = g.lc_y
    r = f
    count = n - m + 1
    while r and r.deg_y >= m:
        k = r.deg_y - m
        r = r * lg - (g * r.lc_y).shift_y(k)
        count -= 1
    return r * (lg ** count)


def _subresultant_last(f: BiPoly, g: BiPoly) -> BiPoly:
    """Last nonzero term of the subresultant PRS of ``f`` and ``g`` in y."""
    if f.deg_y < g.deg_y:
        f, g = g, f
    if g.is_zero():
        return f
    n, m = f.deg_y, g.deg_y
    d = n - m
    b = UniPoly.constant((-1) ** (d + 1))
    h = _prem(f, g) * b
    lc = g.lc_y
    c = -(lc ** d)
    last = g
    while h:
        k = h.deg_y
        last = h
        f, g, m, d = g, h, k, m - k
        b = -(lc * c ** d)
        h = _prem(f, g).quo_x(b)
        assert h is not None, "subresultant division must be exact"
        lc = g.lc_y
        if d > 1:
            c = ((-lc) ** d).exact_div(c ** (d - 1))
            assert c is not None
        else:
            c = -lc
    return last


def _gcd_y(f: BiPoly, g: BiPoly) -> BiPoly:
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomial("gcd of two zero polynomials")
    if f.is_zero():
        return g.primitive_y().normalized()
    if g.is_zero():
        return f.primitive_y().normalized()
    h = _subresultant_last(f.primitive_y(), g.primitive_y())
    return h.primitive_y().normalized()


def bipoly_gcd_y(f: BiPoly, g: BiPoly) -> BiPoly:
    """GCD over Q(i)(x)[y], returned primitive in y with unit leading term.

    Computed from the subresultant pseudo-remainder sequence of the
    primitive parts, then stripped of its x-content.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("bipoly_gcd_y needs nonzero operands")
    return _gcd_y(f, g)


def _squarefree_y(f: BiPoly) -> list[tuple[BiPoly, int]]:
    """Yun decomposition in y of a primitive ``f``; positive-degree factors only."""
    if f.deg_y <= 0:
        return []
    fp = f.diff_y()
    a = _gcd_y(f, fp)
    b = bipoly_exact_div(f, a)
    c = bipoly_exact_div(fp, a)
    if b is None or c is None:
        return []
    d = c - b.diff_y()
    out = []
    k = 1
    while b.deg_y > 0:
        a = _gcd_y(b, d)
        if a.deg_y > 0:
            out.append((a, k))
        b = bipoly_exact_div(b, a)
        c = bipoly_exact_div(d, a)
        if b is None or c is None:
            return []
        d = c - b.diff_y()
        k += 1
    return out


def _root_y(f: BiPoly, m: int) -> Optional[BiPoly]:
    """Candidate ``g`` with ``f = c * g^m``, built from the y-direction."""
    cont = f.content_y()
    prim = f.quo_x(cont)
    root_x = unipoly_root(cont, m) if cont.degree > 0 else UniPoly.constant(1)
    if root_x is None or prim is None:
        return None
    g = BiPoly.from_x(root_x)
    for a, k in _squarefree_y(prim):
        if k % m:
            return None
        g = g * a ** (k // m)
    return g.normalized()


def _certainly_not_power(f: BiPoly) -> bool:
    """True if some specialization ``f(x0, y)`` is provably squarefree.

    When ``f = c * g^m`` with ``m >= 2`` and the y-leading coefficient of
    ``f`` is nonzero at ``x0``, ``g(x0, y)`` has positive degree and divides
    both ``f(x0, y)`` and its derivative. Coprimality therefore rules out
    every perfect power. ``False`` means undecided.
    """
    if f.deg_y < 1:
        return False
    lead = f.ys[-1]
    for x0 in range(4):
        if lead(x0).is_zero():
            continue
        u = UniPoly([q(x0) for q in f.ys])
        return _coprime_mod_p(u, u.derivative())
    return False


def perfect_power_extract(f: BiPoly, m: int) -> Optional[tuple[GaussianRational, BiPoly]]:
    """Find ``(c, g)`` with ``f = c * g^m`` exactly, or return ``None``.

    ``g`` is normalized so its lexicographically leading coefficient is 1.
    The candidate comes from a squarefree decomposition (the first step of
    which is ``gcd(f, df/dy)``); it is accepted only if ``c * g^m``
    re-expands to ``f``. If the y-direction fails the x-direction is tried.
    An ``m`` that does not divide both degrees gives ``None`` at once.
    """
    if f.is_zero():
        raise ZeroPolynomial("perfect_power_extract of the zero polynomial")
    if not isinstance(m, int) or m < 2:
        raise BadExponent(f"exponent must be an integer >= 2, got {m!r}")
    if f.deg_x % m or f.deg_y % m:
        return None
    if _certainly_not_power(f) or _certainly_not_power(f.swap()):
        return None
    for swapped in (False, True):
        src = f.swap() if swapped else f
        g = _root_y(src, m)
        if g is None:
            continue
        if swapped:
            g = g.swap().normalized()
        gm = g ** m
        c = f.lex_lc() / gm.lex_lc()
        if gm.scale(c) == f:
            return c, g
    return None
