"""Exact coefficient arithmetic: Gaussian rationals and sparse multivariate polynomials.

Every identity this package certifies is "residual == the zero polynomial",
so the coefficient ring must be exact.  There is deliberately no float mode.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]


class GaussRational:
    """A Gaussian rational (an + bn*i)/d stored as a reduced integer triple.

    Treated as immutable everywhere; the integer representation keeps the
    normalization cost at one gcd per arithmetic operation.
    """

    __slots__ = ("an", "bn", "d")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        if isinstance(re, int) and isinstance(im, int):
            self.an = re
            self.bn = im
            self.d = 1
            return
        re = Fraction(re)
        im = Fraction(im)
        dr, di = re.denominator, im.denominator
        den = dr // gcd(dr, di) * di
        self.an = re.numerator * (den // dr)
        self.bn = im.numerator * (den // di)
        self.d = den

    @classmethod
    def _raw(cls, an: int, bn: int, d: int) -> "GaussRational":
        """Build from an integer triple with d > 0, reducing the common factor."""
        if d != 1:
            g = gcd(gcd(an, bn), d)
            if g > 1:
                an //= g
                bn //= g
                d //= g
        out = object.__new__(cls)
        out.an = an
        out.bn = bn
        out.d = d
        return out

    @property
    def re(self) -> Fraction:
        return Fraction(self.an, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.bn, self.d)

    @staticmethod
    def coerce(value: "GaussRational | RationalLike") -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, int):
            return GaussRational._raw(value, 0, 1)
        if isinstance(value, Fraction):
            return GaussRational._raw(value.numerator, 0, value.denominator)
        raise TypeError(f"cannot interpret {type(value).__name__} as a Gaussian rational")

    def __add__(self, other):
        if not isinstance(other, GaussRational):
            other = GaussRational.coerce(other)
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GaussRational._raw(self.an + other.an, self.bn + other.bn, d1)
        return GaussRational._raw(
            self.an * d2 + other.an * d1, self.bn * d2 + other.bn * d1, d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRational):
            other = GaussRational.coerce(other)
        d1, d2 = self.d, other.d
        if d1 == d2:
            return GaussRational._raw(self.an - other.an, self.bn - other.bn, d1)
        return GaussRational._raw(
            self.an * d2 - other.an * d1, self.bn * d2 - other.bn * d1, d1 * d2
        )

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __neg__(self):
        out = object.__new__(GaussRational)
        out.an = -self.an
        out.bn = -self.bn
        out.d = self.d
        return out

    def __mul__(self, other):
        if not isinstance(other, GaussRational):
            other = GaussRational.coerce(other)
        a1, b1, a2, b2 = self.an, self.bn, other.an, other.bn
        return GaussRational._raw(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, self.d * other.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.coerce(other)
        norm = other.an * other.an + other.bn * other.bn
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a1, b1, a2, b2 = self.an, self.bn, other.an, other.bn
        return GaussRational._raw(
            (a1 * a2 + b1 * b2) * other.d,
            (b1 * a2 - a1 * b2) * other.d,
            self.d * norm,
        )

    def conjugate(self) -> "GaussRational":
        out = object.__new__(GaussRational)
        out.an = self.an
        out.bn = -self.bn
        out.d = self.d
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRational.coerce(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.an == other.an and self.bn == other.bn and self.d == other.d

    def __hash__(self):
        return hash((self.an, self.bn, self.d))

    def __bool__(self):
        return self.an != 0 or self.bn != 0

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.bn:
            return str(self.re)
        if not self.an:
            return f"{self.im}i"
        im = self.im
        sign = "+" if im > 0 else "-"
        return f"({self.re}{sign}{abs(im)}i)"


GR_ZERO = GaussRational(0)
GR_ONE = GaussRational(1)
GR_I = GaussRational(0, 1)
GR_HALF = GaussRational(Fraction(1, 2))

ScalarLike = Union[GaussRational, int, Fraction]


_EXP_BITS = 16
_EXP_MASK = (1 << _EXP_BITS) - 1


class PolyScalar:
    """Multivariate polynomial over Gaussian rationals, sparse term map.

    Exponent multi-indices are packed into a single integer, 16 bits per
    variable, so that multiplying monomials is integer addition of keys.
    Per-variable exponents therefore must stay below 65536, far beyond
    anything the degree-bounded inputs of this package can produce.

    Coefficients are Gaussian-integer numerator pairs (an, bn) over a single
    common denominator, which keeps normalization at one early-exit gcd pass
    per ring operation instead of one per coefficient.  No zero pairs are
    stored and gcd(all numerators, den) = 1, so structural equality of
    (terms, den) is polynomial equality.
    """

    __slots__ = ("num_vars", "terms", "den")

    def __init__(
        self,
        num_vars: int,
        terms: Mapping[int, tuple] | None = None,
        den: int = 1,
        _normalized: bool = False,
    ):
        self.num_vars = num_vars
        self.terms = dict(terms) if terms else {}
        self.den = den
        if not _normalized:
            self._normalize()

    def _normalize(self):
        if not self.terms:
            self.den = 1
            return
        g = self.den
        for an, bn in self.terms.values():
            g = gcd(g, gcd(an, bn))
            if g == 1:
                return
        if g > 1:
            self.den //= g
            self.terms = {e: (an // g, bn // g) for e, (an, bn) in self.terms.items()}

    # -- exponent packing ------------------------------------------------

    @staticmethod
    def pack_exponents(exps: Iterable[int]) -> int:
        code = 0
        for i, e in enumerate(exps):
            if e:
                if not 0 <= e <= _EXP_MASK:
                    raise ValueError(f"exponent {e} out of range")
                code |= e << (_EXP_BITS * i)
        return code

    @staticmethod
    def unpack_exponents(code: int, num_vars: int) -> tuple:
        return tuple((code >> (_EXP_BITS * i)) & _EXP_MASK for i in range(num_vars))

    def terms_by_exponents(self) -> dict:
        """Term map keyed by explicit exponent tuples, GaussRational values."""
        return {
            PolyScalar.unpack_exponents(code, self.num_vars): GaussRational._raw(
                an, bn, self.den
            )
            for code, (an, bn) in self.terms.items()
        }

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(num_vars: int) -> "PolyScalar":
        return PolyScalar(num_vars, _normalized=True)

    @staticmethod
    def constant(value: ScalarLike, num_vars: int) -> "PolyScalar":
        value = GaussRational.coerce(value)
        if not value:
            return PolyScalar(num_vars, _normalized=True)
        return PolyScalar(
            num_vars, {0: (value.an, value.bn)}, value.d, _normalized=True
        )

    @staticmethod
    def one(num_vars: int) -> "PolyScalar":
        return PolyScalar.constant(GR_ONE, num_vars)

    @staticmethod
    def variable(axis: int, num_vars: int) -> "PolyScalar":
        if not 0 <= axis < num_vars:
            raise IndexError(f"variable axis {axis} out of range for {num_vars} variables")
        return PolyScalar(num_vars, {1 << (_EXP_BITS * axis): (1, 0)}, 1, _normalized=True)

    @staticmethod
    def monomial(coeff: ScalarLike, exps: Iterable[int], num_vars: int) -> "PolyScalar":
        coeff = GaussRational.coerce(coeff)
        exps = tuple(exps)
        if len(exps) != num_vars:
            raise ValueError("exponent tuple length must equal num_vars")
        if not coeff:
            return PolyScalar(num_vars, _normalized=True)
        return PolyScalar(
            num_vars,
            {PolyScalar.pack_exponents(exps): (coeff.an, coeff.bn)},
            coeff.d,
            _normalized=True,
        )

    # -- helpers ------------------------------------------------------

    def _check_compatible(self, other: "PolyScalar"):
        if self.num_vars != other.num_vars:
            raise ValueError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(
            sum(PolyScalar.unpack_exponents(code, self.num_vars)) for code in self.terms
        )

    def coefficient(self, exps: Iterable[int]) -> GaussRational:
        pair = self.terms.get(PolyScalar.pack_exponents(exps))
        if pair is None:
            return GR_ZERO
        return GaussRational._raw(pair[0], pair[1], self.den)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = PolyScalar.constant(other, self.num_vars)
        self._check_compatible(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            m1 = m2 = 1
            den = d1
        else:
            g = gcd(d1, d2)
            m1 = d2 // g
            m2 = d1 // g
            den = d1 * m1
        if m1 == 1:
            out = dict(self.terms)
        else:
            out = {e: (an * m1, bn * m1) for e, (an, bn) in self.terms.items()}
        get = out.get
        for code, (an, bn) in other.terms.items():
            cur = get(code)
            if cur is None:
                out[code] = (an * m2, bn * m2)
            else:
                ar = cur[0] + an * m2
                br = cur[1] + bn * m2
                if ar or br:
                    out[code] = (ar, br)
                else:
                    del out[code]
        return PolyScalar(self.num_vars, out, den)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar(
            self.num_vars,
            {e: (-an, -bn) for e, (an, bn) in self.terms.items()},
            self.den,
            _normalized=True,
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = PolyScalar.constant(other, self.num_vars)
        return self + (-other)

    def __rsub__(self, other):
        return PolyScalar.constant(other, self.num_vars) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        self._check_compatible(other)
        if not self.terms or not other.terms:
            return PolyScalar(self.num_vars, _normalized=True)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        b_items = list(b.items())
        for ea, (a1, b1) in a.items():
            for eb, (a2, b2) in b_items:
                code = ea + eb
                ar = a1 * a2 - b1 * b2
                br = a1 * b2 + b1 * a2
                cur = get(code)
                if cur is None:
                    if ar or br:
                        out[code] = (ar, br)
                else:
                    ar += cur[0]
                    br += cur[1]
                    if ar or br:
                        out[code] = (ar, br)
                    else:
                        del out[code]
        return PolyScalar(self.num_vars, out, self.den * other.den)

    __rmul__ = __mul__

    def scale(self, value: ScalarLike) -> "PolyScalar":
        value = GaussRational.coerce(value)
        if not value:
            return PolyScalar(self.num_vars, _normalized=True)
        a2, b2 = value.an, value.bn
        if b2 == 0:
            out = {e: (an * a2, bn * a2) for e, (an, bn) in self.terms.items()}
        else:
            out = {
                e: (an * a2 - bn * b2, an * b2 + bn * a2)
                for e, (an, bn) in self.terms.items()
            }
        return PolyScalar(self.num_vars, out, self.den * value.d)

    # -- calculus and conjugation --------------------------------------

    def partial_derivative(self, axis: int) -> "PolyScalar":
        if not 0 <= axis < self.num_vars:
            raise IndexError(f"axis {axis} out of range for {self.num_vars} variables")
        shift = _EXP_BITS * axis
        unit = 1 << shift
        out: dict = {}
        for code, (an, bn) in self.terms.items():
            k = (code >> shift) & _EXP_MASK
            if k == 0:
                continue
            out[code - unit] = (an * k, bn * k)
        return PolyScalar(self.num_vars, out, self.den)

    def conjugate(self) -> "PolyScalar":
        return PolyScalar(
            self.num_vars,
            {e: (an, -bn) for e, (an, bn) in self.terms.items()},
            self.den,
            _normalized=True,
        )

    # -- comparison and display -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = PolyScalar.constant(other, self.num_vars)
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.den == other.den
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, self.den, frozenset(self.terms.items())))

    def __repr__(self):
        return f"PolyScalar({self.num_vars}, {self.terms_by_exponents()!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        by_exps = self.terms_by_exponents()
        parts = []
        for exps in sorted(by_exps, key=lambda e: (sum(e), e)):
            coeff = by_exps[exps]
            factors = [
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}"
                for i, k in enumerate(exps)
                if k
            ]
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == GR_ONE:
                parts.append(body)
            else:
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts)
