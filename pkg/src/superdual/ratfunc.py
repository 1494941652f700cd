"""Exact arithmetic in Q(q): Laurent polynomials over the rationals and their
field of fractions.

Everything downstream (operators, Hecke elements, linear algebra) is linear
over this field, so the two classes here are deliberately small and fast:
dict-backed Laurent polynomials with `Fraction` coefficients, and reduced
fractions with a canonical denominator (integer coefficients, content 1,
nonzero constant term, positive constant term).  Equality of canonical forms
is structural, so `RatFunc` values are usable as dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as int_gcd


class LaurentPoly:
    """A finitely supported map exponent -> nonzero rational coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        cleaned = {}
        for e, c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                cleaned[int(e)] = c
        self.coeffs = cleaned

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: Fraction(c)})

    @staticmethod
    def monomial(exp: int, c=1) -> "LaurentPoly":
        return LaurentPoly({exp: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        return res

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if c == 0:
            return LaurentPoly()
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e: v * c for e, v in self.coeffs.items()}
        return res

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e + k: v for e, v in self.coeffs.items()}
        return res

    def eval_at(self, q0: Fraction) -> Fraction:
        return sum((c * q0 ** e for e, c in self.coeffs.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = str(c)
            else:
                qp = "q" if e == 1 else f"q^{e}"
                if c == 1:
                    term = qp
                elif c == -1:
                    term = f"-{qp}"
                else:
                    term = f"{c}*{qp}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    __repr__ = __str__


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.const(1)
Q_POLY = LaurentPoly.monomial(1)


def _poly_divmod(a: dict[int, Fraction], b: dict[int, Fraction]):
    """Euclidean division of honest polynomials given as exponent dicts."""
    da, db = max(a, default=-1), max(b)
    quot: dict[int, Fraction] = {}
    rem = dict(a)
    lead_b = b[db]
    while rem and max(rem) >= db:
        dr = max(rem)
        f = rem[dr] / lead_b
        quot[dr - db] = f
        for e, c in b.items():
            k = e + dr - db
            s = rem.get(k, 0) - f * c
            if s == 0:
                rem.pop(k, None)
            else:
                rem[k] = s
    return quot, rem


def _poly_gcd(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    """Monic gcd of honest polynomials over Q."""
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return {}
    lead = a[max(a)]
    return {e: c / lead for e, c in a.items()}


class RatFunc:
    """A reduced fraction of Laurent polynomials in canonical form.

    Canonical form: the denominator is an ordinary polynomial with integer
    coefficients, content 1, and a positive nonzero constant term; numerator
    and denominator share no polynomial factor.  The zero element is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE_POLY):
        n, d = _normalize(num, den)
        self.num = n
        self.den = d

    @staticmethod
    def _raw(num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        res = RatFunc.__new__(RatFunc)
        res.num = num
        res.den = den
        return res

    @staticmethod
    def const(c) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return ZERO
        return RatFunc._raw(LaurentPoly.const(c), ONE_POLY)

    @staticmethod
    def q_power(k: int, c=1) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return ZERO
        return RatFunc._raw(LaurentPoly.monomial(k, c), ONE_POLY)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RatFunc.const(other)
        return (isinstance(other, RatFunc) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return RatFunc._raw(self.num + other.num, ONE_POLY)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.den == ONE_POLY and other.den == ONE_POLY:
            # polynomial/1 is already canonical, skip the gcd path
            return RatFunc._raw(self.num * other.num, ONE_POLY)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def specialize(self, q0) -> Fraction:
        """Exact evaluation at a nonzero rational point; errors on poles."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ValueError("cannot specialize at q0 = 0 (q is invertible)")
        dv = self.den.eval_at(q0)
        if dv == 0:
            raise ValueError(f"pole at q = {q0}: denominator ({self.den}) vanishes")
        return self.num.eval_at(q0) / dv

    def __str__(self) -> str:
        if self.den == ONE_POLY:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Reduce num/den to canonical form.

    The q-power parts of both are moved into the numerator (the denominator
    keeps a nonzero constant term), the polynomial gcd is divided out, and
    the denominator is rescaled to a primitive integer polynomial with
    positive constant term.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero in Q(q)")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY
    a = num.min_exp()
    b = den.min_exp()
    pnum = {e - a: c for e, c in num.coeffs.items()}
    pden = {e - b: c for e, c in den.coeffs.items()}
    if len(pden) > 1 and len(pnum) > 1:
        g = _poly_gcd(pnum, pden)
        if len(g) > 1 or (g and max(g) > 0):
            pnum, r = _poly_divmod(pnum, g)
            assert not r
            pden, r = _poly_divmod(pden, g)
            assert not r
    # rescale so den has integer coefficients, content 1, positive constant
    denom_lcm = reduce(lambda x, y: x * y // int_gcd(x, y),
                       (c.denominator for c in pden.values()), 1)
    ints = {e: c * denom_lcm for e, c in pden.items()}
    content = reduce(int_gcd, (abs(c.numerator) for c in ints.values()))
    sign = 1 if ints[min(ints)] > 0 else -1
    scale = Fraction(denom_lcm, sign * content)
    out_den = LaurentPoly.__new__(LaurentPoly)
    out_den.coeffs = {e: c * scale for e, c in pden.items()}
    out_num = LaurentPoly.__new__(LaurentPoly)
    out_num.coeffs = {e + a - b: c * scale for e, c in pnum.items()}
    return out_num, out_den


ZERO = RatFunc._raw(ZERO_POLY, ONE_POLY)
ONE = RatFunc._raw(ONE_POLY, ONE_POLY)
Q = RatFunc._raw(Q_POLY, ONE_POLY)
QINV = RatFunc.q_power(-1)


def normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Canonical reduced fraction num/den; errors on a zero denominator."""
    return RatFunc(num, den)


def q_int(k: int) -> RatFunc:
    """q^k as a field element."""
    return RatFunc.q_power(k)


def rat(c) -> RatFunc:
    """A rational constant as a field element."""
    return RatFunc.const(c)
