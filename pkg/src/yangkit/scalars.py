"""Exact scalar tower: Q(z8), polynomials and rational functions in u, truncated
series in 1/u.

The base field K = Q(z8) = Q[x]/(x^4+1) is the 8th cyclotomic field.  It houses
every irrational constant the kit needs:

    sqrt(2)  = z8 + z8^-1 = z8 - z8^3,
    i        = z8^2,
    sqrt(-2) = z8 + z8^3.

Elements are stored as four rationals (a, b, c, d) <-> a + b*z8 + c*z8^2 + d*z8^3.
Arithmetic is exact; purely rational elements (b = c = d = 0) take a fast path
since almost all matrix entries in practice are rational.

Rationals are gmpy2.mpq when available (much faster), fractions.Fraction
otherwise.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

QZERO = Q(0)
QONE = Q(1)


def rat(x) -> "Q":
    """Coerce an int, string 'p/q', or rational to Q."""
    if isinstance(x, (int, str)):
        return Q(x)
    return Q(x)


class K:
    """An element of Q(z8), with z8^4 = -1."""

    __slots__ = ("a", "b", "c", "d", "rational")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = a if type(a) is type(QZERO) else Q(a)
        self.b = b if type(b) is type(QZERO) else Q(b)
        self.c = c if type(c) is type(QZERO) else Q(c)
        self.d = d if type(d) is type(QZERO) else Q(d)
        self.rational = not (self.b or self.c or self.d)

    # -- construction helpers -------------------------------------------------
    @staticmethod
    def of(x) -> "K":
        if isinstance(x, K):
            return x
        return K(x)

    def __add__(self, other):
        other = K.of(other)
        if self.rational and other.rational:
            return K(self.a + other.a)
        return K(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return K(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-K.of(other))

    def __rsub__(self, other):
        return K.of(other) + (-self)

    def __mul__(self, other):
        other = K.of(other)
        if self.rational:
            if other.rational:
                return K(self.a * other.a)
            q = self.a
            return K(q * other.a, q * other.b, q * other.c, q * other.d)
        if other.rational:
            q = other.a
            return K(q * self.a, q * self.b, q * self.c, q * self.d)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # negacyclic convolution mod x^4 + 1
        return K(
            a1 * a2 - b1 * d2 - c1 * c2 - d1 * b2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + b1 * b2 + c1 * a2 - d1 * d2,
            a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
        )

    __rmul__ = __mul__

    def conj(self, k: int) -> "K":
        """Galois conjugate z8 -> z8^k for odd k in {1,3,5,7}."""
        a, b, c, d = self.a, self.b, self.c, self.d
        if k == 1:
            return self
        if k == 3:
            return K(a, d, -c, b)
        if k == 5:
            return K(a, -b, c, -d)
        if k == 7:
            return K(a, -d, -c, -b)
        raise ValueError(f"not a Galois exponent: {k}")

    def inverse(self) -> "K":
        if self.rational:
            if not self.a:
                raise ZeroDivisionError("division by zero in Q(z8)")
            return K(QONE / self.a)
        # x^-1 = (s3 s5 s7 conjugate product) / Norm(x)
        prod = self.conj(3) * self.conj(5) * self.conj(7)
        norm = self * prod
        if not norm.rational:
            raise AssertionError("norm must be rational")
        if not norm.a:
            raise ZeroDivisionError("division by zero in Q(z8)")
        return K(QONE / norm.a) * prod

    def __truediv__(self, other):
        return self * K.of(other).inverse()

    def __rtruediv__(self, other):
        return K.of(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = KONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, K):
            if isinstance(other, (int, type(QZERO))):
                other = K(other)
            else:
                return NotImplemented
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def is_zero(self):
        return not self

    def as_rational(self) -> "Q":
        if not self.rational:
            raise ValueError(f"not a rational element: {self}")
        return self.a

    def __repr__(self):
        return f"K({self.text()})"

    def text(self) -> str:
        """Canonical text form 'a + b*z8 + c*z8^2 + d*z8^3'."""
        return f"{self.a} + {self.b}*z8 + {self.c}*z8^2 + {self.d}*z8^3"


KZERO = K(0)
KONE = K(1)
SQRT2 = K(0, 1, 0, -1)       # z8 - z8^3, squares to 2
SQRT_M2 = K(0, 1, 0, 1)      # z8 + z8^3, squares to -2
IMAG = K(0, 0, 1, 0)         # z8^2, squares to -1


def kof(x) -> K:
    return K.of(x)


# ---------------------------------------------------------------------------
# Polynomials in u over K
# ---------------------------------------------------------------------------

class PolyU:
    """Dense univariate polynomial over K, coefficients in ascending powers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [K.of(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def const(c) -> "PolyU":
        return PolyU([K.of(c)])

    @staticmethod
    def u() -> "PolyU":
        return PolyU([KZERO, KONE])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self) -> K:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        other = _poly_of(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [KZERO] * (n - len(self.coeffs))
        b = other.coeffs + [KZERO] * (n - len(other.coeffs))
        return PolyU([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolyU([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_poly_of(other))

    def __rsub__(self, other):
        return _poly_of(other) + (-self)

    def __mul__(self, other):
        other = _poly_of(other)
        if self.is_zero() or other.is_zero():
            return PolyU([])
        out = [KZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj:
                    out[i + j] = out[i + j] + ci * cj
        return PolyU(out)

    __rmul__ = __mul__

    def scale(self, c) -> "PolyU":
        c = K.of(c)
        return PolyU([c * x for x in self.coeffs])

    def monic(self) -> "PolyU":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def divmod(self, other: "PolyU"):
        other = _poly_of(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyU([]), self
        quo = [KZERO] * (dq + 1)
        inv_lead = other.leading().inverse()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return PolyU(quo), PolyU(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "PolyU") -> "PolyU":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, _poly_of(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def eval(self, p) -> K:
        p = K.of(p)
        acc = KZERO
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc

    def shift_arg(self, c) -> "PolyU":
        """p(u) -> p(u + c)."""
        c = K.of(c)
        out = PolyU([])
        # Horner in (u + c)
        for coef in reversed(self.coeffs):
            out = out * PolyU([c, KONE]) + PolyU([coef])
        return out

    def scale_arg(self, z) -> "PolyU":
        """p(u) -> p(z * u)."""
        z = K.of(z)
        zp = KONE
        cs = []
        for c in self.coeffs:
            cs.append(c * zp)
            zp = zp * z
        return PolyU(cs)

    def __eq__(self, other):
        other = _poly_of(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def text(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"({c.text()})*u^{i}" for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        return f"PolyU({self.text()})"


def _poly_of(x) -> PolyU:
    if isinstance(x, PolyU):
        return x
    return PolyU([K.of(x)])


# ---------------------------------------------------------------------------
# Rational functions in u
# ---------------------------------------------------------------------------

class RatFunU:
    """num/den with monic denominator.  gcd reduction is lazy: it happens on
    equality tests, serialization and pole-sensitive evaluation only."""

    __slots__ = ("num", "den", "_reduced")

    def __init__(self, num, den=None, _reduced=False):
        num = _poly_of(num)
        den = PolyU([KONE]) if den is None else _poly_of(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lead = den.leading()
        if lead != KONE:
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den
        self._reduced = _reduced or den.degree == 0

    @staticmethod
    def of(x) -> "RatFunU":
        if isinstance(x, RatFunU):
            return x
        if isinstance(x, PolyU):
            return RatFunU(x)
        return RatFunU(PolyU([K.of(x)]))

    def reduce(self) -> "RatFunU":
        if self._reduced:
            return self
        g = self.num.gcd(self.den)
        if g.degree <= 0:
            self._reduced = True
            return self
        num, _ = self.num.divmod(g)
        den, _ = self.den.divmod(g)
        return RatFunU(num, den, _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = RatFunU.of(other)
        return RatFunU(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunU(-self.num, self.den, _reduced=self._reduced)

    def __sub__(self, other):
        return self + (-RatFunU.of(other))

    def __rsub__(self, other):
        return RatFunU.of(other) + (-self)

    def __mul__(self, other):
        other = RatFunU.of(other)
        return RatFunU(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunU":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunU(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunU.of(other).inverse()

    def __rtruediv__(self, other):
        return RatFunU.of(other) * self.inverse()

    def __eq__(self, other):
        other = RatFunU.of(other)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        r = self.reduce()
        return hash((r.num, r.den))

    def eval(self, p) -> K:
        """Exact value at u = p; raises PoleEvaluationError at a true pole."""
        from .errors import PoleEvaluationError

        p = K.of(p)
        d = self.den.eval(p)
        if not d:
            r = self.reduce()
            d = r.den.eval(p)
            if not d:
                raise PoleEvaluationError(p)
            return r.num.eval(p) / d
        return self.num.eval(p) / d

    def shift_arg(self, c) -> "RatFunU":
        return RatFunU(self.num.shift_arg(c), self.den.shift_arg(c))

    def scale_arg(self, z) -> "RatFunU":
        return RatFunU(self.num.scale_arg(z), self.den.scale_arg(z))

    def degree_gap_at_infinity(self) -> int:
        """deg num - deg den of the reduced form; <= 0 means proper at infinity."""
        r = self.reduce()
        if r.num.is_zero():
            return -(10 ** 9)
        return r.num.degree - r.den.degree

    def series(self, order: int) -> "TruncSeriesU":
        """Expansion at u = infinity in powers of 1/u, truncated at `order`."""
        from .errors import ImproperAtInfinityError

        r = self.reduce()
        if r.num.is_zero():
            return TruncSeriesU(order, [KZERO] * (order + 1))
        gap = r.num.degree - r.den.degree
        if gap > 0:
            raise ImproperAtInfinityError(gap)
        dn, dd = r.num.degree, r.den.degree
        # reversed coefficient sequences: num(u) = u^dn * nhat(1/u), etc.
        nhat = [r.num.coeffs[dn - i] for i in range(dn + 1)]
        dhat = [r.den.coeffs[dd - i] for i in range(dd + 1)]
        inv = _series_inverse(dhat, order)
        prod = _series_mul(nhat, inv, order)
        shift = dd - dn
        out = [KZERO] * (order + 1)
        for k, c in enumerate(prod):
            if k + shift <= order:
                out[k + shift] = c
        return TruncSeriesU(order, out)

    def text(self) -> str:
        r = self.reduce()
        return f"({r.num.text()}) / ({r.den.text()})"

    def __repr__(self):
        return f"RatFunU({self.text()})"


def _series_mul(a, b, order):
    out = [KZERO] * (order + 1)
    for i, ci in enumerate(a):
        if i > order or not ci:
            continue
        for j, cj in enumerate(b):
            if i + j > order:
                break
            if cj:
                out[i + j] = out[i + j] + ci * cj
    return out


def _series_inverse(a, order):
    if not a or not a[0]:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    inv0 = a[0].inverse()
    out = [inv0] + [KZERO] * order
    for n in range(1, order + 1):
        acc = KZERO
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc = acc + a[k] * out[n - k]
        out[n] = -inv0 * acc
    return out


# ---------------------------------------------------------------------------
# Truncated series in 1/u
# ---------------------------------------------------------------------------

class TruncSeriesU:
    """sum_{k=0}^{order} c_k u^-k, exact coefficients, truncating arithmetic."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        if coeffs is None:
            coeffs = []
        cs = [K.of(c) for c in coeffs[: order + 1]]
        cs += [KZERO] * (order + 1 - len(cs))
        self.coeffs = cs

    @staticmethod
    def one(order: int) -> "TruncSeriesU":
        return TruncSeriesU(order, [KONE])

    @staticmethod
    def const(order: int, c) -> "TruncSeriesU":
        return TruncSeriesU(order, [K.of(c)])

    def __getitem__(self, k: int) -> K:
        return self.coeffs[k] if 0 <= k <= self.order else KZERO

    def _common_order(self, other):
        return min(self.order, other.order)

    def __add__(self, other):
        other = _series_of(other, self.order)
        n = self._common_order(other)
        return TruncSeriesU(n, [self[k] + other[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return TruncSeriesU(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_series_of(other, self.order))

    def __rsub__(self, other):
        return _series_of(other, self.order) + (-self)

    def __mul__(self, other):
        other = _series_of(other, self.order)
        n = self._common_order(other)
        return TruncSeriesU(n, _series_mul(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def scale(self, c) -> "TruncSeriesU":
        c = K.of(c)
        return TruncSeriesU(self.order, [c * x for x in self.coeffs])

    def inverse(self) -> "TruncSeriesU":
        return TruncSeriesU(self.order, _series_inverse(self.coeffs, self.order))

    def __truediv__(self, other):
        return self * _series_of(other, self.order).inverse()

    def __eq__(self, other):
        other = _series_of(other, self.order)
        n = self._common_order(other)
        return all(self[k] == other[k] for k in range(n + 1))

    def is_zero(self):
        return all(not c for c in self.coeffs)

    def truncate(self, order: int) -> "TruncSeriesU":
        return TruncSeriesU(order, self.coeffs[: order + 1])

    def shift_arg(self, c) -> "TruncSeriesU":
        """s(u) -> s(u + c) re-expanded at infinity, same truncation order.

        Uses (u+c)^-k = sum_{m>=k} binom(m-1, k-1) (-c)^(m-k) u^-m.
        """
        c = K.of(c)
        if not c:
            return self
        n = self.order
        out = [self.coeffs[0]] + [KZERO] * n
        binom = _binom_table(n)
        for k in range(1, n + 1):
            sk = self.coeffs[k]
            if not sk:
                continue
            pw = KONE
            for m in range(k, n + 1):
                out[m] = out[m] + sk * binom[m - 1][k - 1] * pw
                pw = pw * (-c)
        return TruncSeriesU(n, out)

    def scale_arg(self, z) -> "TruncSeriesU":
        """s(u) -> s(u / z); coefficient k picks up z^k."""
        z = K.of(z)
        pw = KONE
        cs = []
        for c in self.coeffs:
            cs.append(c * pw)
            pw = pw * z
        return TruncSeriesU(self.order, cs)

    def text(self) -> str:
        return " + ".join(f"({c.text()})*u^-{k}" for k, c in enumerate(self.coeffs) if c) or "0"

    def __repr__(self):
        return f"TruncSeriesU(order={self.order}, {self.text()})"


def _series_of(x, order) -> TruncSeriesU:
    if isinstance(x, TruncSeriesU):
        return x
    return TruncSeriesU(order, [K.of(x)])


def _binom_table(n):
    tbl = [[QZERO] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        tbl[i][0] = QONE
        for j in range(1, i + 1):
            tbl[i][j] = tbl[i - 1][j - 1] + (tbl[i - 1][j] if j <= i - 1 else QZERO)
    return [[K(q) for q in row] for row in tbl]


# ---------------------------------------------------------------------------
# Module-level operations named in the public contract
# ---------------------------------------------------------------------------

def ratfun_to_series(f: RatFunU, order: int) -> TruncSeriesU:
    """Expansion of a proper-at-infinity rational function in powers of 1/u."""
    return f.series(order)


def series_shift(s: TruncSeriesU, c) -> TruncSeriesU:
    """The expansion of u -> s(u + c) at the same truncation order."""
    return s.shift_arg(c)


def ratfun_eval(f: RatFunU, p) -> K:
    """Exact value f(p); raises PoleEvaluationError at poles."""
    return f.eval(p)


def solve_half_shift(q: TruncSeriesU, c, order: int) -> TruncSeriesU:
    """The unique s in 1 + (1/u)K[[1/u]] with s(u) s(u+c) = q(u) to `order`.

    Coefficients are determined one at a time: at order m the unknown s_m
    enters the product with total factor 2, everything else being known.
    """
    if q[0] != KONE:
        raise ValueError("half-shift equation needs a series with constant term 1")
    c = K.of(c)
    q = q.truncate(order) if q.order >= order else TruncSeriesU(order, q.coeffs)
    coeffs = [KONE] + [KZERO] * order
    half = K(Q(1, 2))
    for m in range(1, order + 1):
        s = TruncSeriesU(m, coeffs[: m + 1])
        prod = s * s.shift_arg(c)
        coeffs[m] = (q[m] - prod[m]) * half
    return TruncSeriesU(order, coeffs)


def pade_reconstruct(s: TruncSeriesU, num_deg: int, den_deg: int):
    """Rational reconstruction from a 1/u-series: returns a RatFunU r, proper at
    infinity, with r - s = O(u^-(num_deg+den_deg+1)), or None when no such
    function exists or the re-expansion check fails."""
    if num_deg + den_deg > s.order:
        return None
    # denominator in x = 1/u: b_0 = 1, unknowns b_1..b_q
    qd = den_deg
    rows, rhs = [], []
    for m in range(num_deg + 1, num_deg + qd + 1):
        rows.append([s[m - j] for j in range(1, qd + 1)])
        rhs.append(-s[m])
    b = _solve_dense(rows, rhs)
    if b is None:
        return None
    den_x = [KONE] + b
    num_x = []
    for i in range(num_deg + 1):
        acc = KZERO
        for j in range(0, min(i, qd) + 1):
            acc = acc + den_x[j] * s[i - j]
        num_x.append(acc)
    m = max(num_deg, qd)
    num_u = PolyU(list(reversed([KZERO] * (m - num_deg) + num_x)))
    den_u = PolyU(list(reversed([KZERO] * (m - qd) + den_x)))
    if den_u.is_zero():
        return None
    r = RatFunU(num_u, den_u)
    if r.degree_gap_at_infinity() > 0:
        return None
    if r.series(s.order) != s:
        return None
    return r


def _solve_dense(rows, rhs):
    """Solve a small dense square-ish K-linear system; None when inconsistent
    or underdetermined columns remain (first-nonzero pivoting)."""
    n = len(rows)
    if n == 0:
        return []
    m = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    row = 0
    for col in range(m):
        sel = None
        for r in range(row, n):
            if aug[r][col]:
                sel = r
                break
        if sel is None:
            return None
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = aug[row][col].inverse()
        aug[row] = [x * inv for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
        if row == n:
            break
    if len(piv_cols) < m:
        return None
    for r in range(row, n):
        if aug[r][m]:
            return None
    sol = [KZERO] * m
    for r, col in enumerate(piv_cols):
        sol[col] = aug[r][m]
    return sol
