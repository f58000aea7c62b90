"""Exact arithmetic and ordering for gross-numbers.

The value domain has two layers:

* ``GrossPoly``: finite sums ``sum(c_i * G^e_i)`` where ``G`` is the infinite
  unit (the count of the whole set of natural numbers), the coefficients are
  exact rationals, and the exponents are themselves gross-polynomials.  This
  layer covers every set count such as ``G/2``, ``2*G + 1`` or ``G^2``, plus
  the infinitesimals that appear as their reciprocals.
* ``ExpCount``: counts of positional numeral systems, ``r * b^E + tail`` with
  a finite integer base ``b >= 2`` and an infinite exponent ``E``.  The
  exponent is either a gross-polynomial or a symbolic critical digit length
  ``crit(b, M) + i`` known only through its sandwich
  ``M/b < b^crit(b, M) <= M``.

Everything is immutable and exact.  Operations that would leave this closure
raise an error from :mod:`grosscalc.errors` instead of approximating, and
comparisons the closure cannot decide raise :class:`Undetermined` rather than
guessing.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .errors import (
    DepthLimitExceeded,
    DivisionByZero,
    ExponentTooLarge,
    NegativeExponent,
    NonExactDivision,
    NonIntegerExponent,
    NotInfinite,
    Undetermined,
    UnsupportedPower,
    UnsupportedProduct,
    UnsupportedSum,
)

# Exponent towers deeper than this never arise from counting problems; the
# cap keeps recursive comparison obviously terminating.
MAX_EXPONENT_DEPTH = 8

# Cross-power comparisons compute b**n exactly; refuse silly sizes.
_POWER_BIT_GUARD = 10 ** 6

# Finite powers are materialized as exact integers up to this many bits.
MATERIALIZE_BIT_CAP = 10 ** 6


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Classification(Enum):
    ZERO = "zero"
    FINITE_POSITIVE = "finite-positive"
    FINITE_NEGATIVE = "finite-negative"
    INFINITE_POSITIVE = "infinite-positive"
    INFINITE_NEGATIVE = "infinite-negative"
    INFINITESIMAL = "infinitesimal"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


@dataclass(frozen=True)
class GrossPoly:
    """Canonical finite sum of rational multiples of powers of G.

    ``terms`` is a tuple of ``(coefficient, exponent)`` pairs ordered by
    strictly decreasing exponent with no zero coefficients; the empty tuple
    is zero.  Build values through :func:`make_poly`, :func:`fin` or the
    arithmetic operators rather than the raw constructor.
    """

    terms: Tuple[Tuple[Fraction, "GrossPoly"], ...] = ()

    def __post_init__(self):
        if _depth(self) > MAX_EXPONENT_DEPTH:
            raise DepthLimitExceeded(
                f"exponent nesting deeper than {MAX_EXPONENT_DEPTH} is not supported"
            )

    # structure probes

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Optional[Tuple[Fraction, "GrossPoly"]]:
        return self.terms[0] if self.terms else None

    def constant_term(self) -> Fraction:
        for coeff, exp in self.terms:
            if exp.is_zero:
                return coeff
        return Fraction(0)

    def as_rational(self) -> Optional[Fraction]:
        """The exact rational value, or None if any G power is present."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0][1].is_zero:
            return self.terms[0][0]
        return None

    def as_int(self) -> Optional[int]:
        r = self.as_rational()
        if r is not None and r.denominator == 1:
            return int(r)
        return None

    # operators (thin wrappers over the module-level functions)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __neg__(self):
        return _pneg(self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div_exact(self, _coerce(other))

    def __rtruediv__(self, other):
        return div_exact(_coerce(other), self)

    def __pow__(self, other):
        if isinstance(other, int):
            return _ppow(self, other)
        return NotImplemented

    def __eq__(self, other):
        other = _try_coerce(other)
        if isinstance(other, GrossPoly):
            return self.terms == other.terms
        if isinstance(other, ExpCount):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __lt__(self, other):
        return _cmp_gross(self, _coerce(other)) < 0

    def __le__(self, other):
        return _cmp_gross(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return _cmp_gross(self, _coerce(other)) > 0

    def __ge__(self, other):
        return _cmp_gross(self, _coerce(other)) >= 0

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return render_gross(self)

    def __repr__(self):
        return f"GrossPoly<{render_gross(self)}>"


def _depth(p: GrossPoly) -> int:
    if not p.terms:
        return 0
    return 1 + max(_depth(exp) for _, exp in p.terms)


ZERO = GrossPoly()
ONE = GrossPoly(((Fraction(1), ZERO),))
GROSSONE = GrossPoly(((Fraction(1), ONE),))
G = GROSSONE


def fin(value) -> GrossPoly:
    """The finite gross-number equal to the given int or Fraction."""
    coeff = _as_fraction(value)
    if coeff == 0:
        return ZERO
    return GrossPoly(((coeff, ZERO),))


def gterm(coeff, exp: GrossPoly) -> GrossPoly:
    """The single-term value ``coeff * G^exp``."""
    coeff = _as_fraction(coeff)
    if coeff == 0:
        return ZERO
    return GrossPoly(((coeff, exp),))


def make_poly(pairs: Iterable[Tuple[Fraction, GrossPoly]]) -> GrossPoly:
    """Canonicalize arbitrary ``(coeff, exponent)`` pairs into a GrossPoly."""
    return _canon(pairs)


def _canon(pairs) -> GrossPoly:
    acc = {}
    for coeff, exp in pairs:
        coeff = _as_fraction(coeff)
        if coeff:
            acc[exp] = acc.get(exp, Fraction(0)) + coeff
    items = [(coeff, exp) for exp, coeff in acc.items() if coeff]
    items.sort(
        key=functools.cmp_to_key(lambda a, b: _cmp_poly(a[1], b[1])), reverse=True
    )
    return GrossPoly(tuple(items))


def _cmp_poly(x: GrossPoly, y: GrossPoly) -> int:
    """Total order on polynomial values: sign of x - y.

    Walks both term lists at once: a larger leading exponent means that term
    dominates, so its coefficient sign decides; equal exponents compare
    coefficients and then recurse on the remainders.
    """
    if x.terms == y.terms:
        return 0
    xi, yi = x.terms, y.terms
    i = 0
    while True:
        tx = xi[i] if i < len(xi) else None
        ty = yi[i] if i < len(yi) else None
        if tx is None and ty is None:
            return 0
        if tx is None:
            return -_sign(ty[0])
        if ty is None:
            return _sign(tx[0])
        ce = _cmp_poly(tx[1], ty[1])
        if ce > 0:
            return _sign(tx[0])
        if ce < 0:
            return -_sign(ty[0])
        if tx[0] != ty[0]:
            return _sign(tx[0] - ty[0])
        i += 1


def _padd(x: GrossPoly, y: GrossPoly) -> GrossPoly:
    return _canon(x.terms + y.terms)


def _pneg(x: GrossPoly) -> GrossPoly:
    return GrossPoly(tuple((-c, e) for c, e in x.terms))


def _psub(x: GrossPoly, y: GrossPoly) -> GrossPoly:
    return _padd(x, _pneg(y))


def _pscale(x: GrossPoly, factor: Fraction) -> GrossPoly:
    factor = _as_fraction(factor)
    if factor == 0:
        return ZERO
    return GrossPoly(tuple((c * factor, e) for c, e in x.terms))


def _pmul(x: GrossPoly, y: GrossPoly) -> GrossPoly:
    acc = []
    for cx, ex in x.terms:
        for cy, ey in y.terms:
            acc.append((cx * cy, _padd(ex, ey)))
    return _canon(acc)


def _ppow(x: GrossPoly, n: int) -> GrossPoly:
    if n < 0:
        return div_exact(ONE, _ppow(x, -n))
    result = ONE
    for _ in range(n):
        result = _pmul(result, x)
    return result


@dataclass(frozen=True)
class CritRef:
    """Symbolic critical digit length: floor(log_base(target)) + offset.

    Only the sandwich ``target/base < base^crit(base, target) <= target``
    is known about it; arithmetic is limited to integer offset shifts.
    """

    base: int
    target: GrossPoly
    offset: int = 0

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise UnsupportedPower(f"numeral base must be an integer >= 2, got {self.base}")
        if classify(self.target) is not Classification.INFINITE_POSITIVE:
            raise NotInfinite("critical digit lengths require an infinite positive target")

    def shifted(self, delta: int) -> "CritRef":
        return CritRef(self.base, self.target, self.offset + delta)

    def __repr__(self):
        return f"CritRef<{render_critref(self)}>"


ExpExponent = Union[GrossPoly, CritRef]


@dataclass(frozen=True)
class ExpCount:
    """An exponential count ``multiplier * base^exponent + tail``.

    The multiplier is a positive rational, the base a finite integer >= 2 and
    the exponent an infinite positive polynomial or a critical digit length
    for the same base.  The polynomial tail carries exact corrections such as
    the ``- 1`` of "all numerals except zero"; a count that a polynomial could
    express is never stored in this form.
    """

    multiplier: Fraction
    base: int
    exponent: ExpExponent
    tail: GrossPoly = ZERO

    def __post_init__(self):
        object.__setattr__(self, "multiplier", _as_fraction(self.multiplier))
        if self.multiplier <= 0:
            raise UnsupportedProduct("exponential counts must keep a positive multiplier")
        if not isinstance(self.base, int) or self.base < 2:
            raise UnsupportedPower(f"numeral base must be an integer >= 2, got {self.base}")
        if isinstance(self.exponent, GrossPoly):
            if classify(self.exponent) is not Classification.INFINITE_POSITIVE:
                raise UnsupportedPower(
                    "polynomial exponents of an ExpCount must be infinite and positive"
                )
        elif isinstance(self.exponent, CritRef):
            if self.exponent.base != self.base:
                raise UnsupportedPower(
                    "a critical digit length only exponentiates its own base"
                )
        else:
            raise TypeError(f"bad exponent {self.exponent!r}")

    # operators

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div_exact(self, _coerce(other))

    def __eq__(self, other):
        other = _try_coerce(other)
        if isinstance(other, ExpCount):
            return (
                self.multiplier == other.multiplier
                and self.base == other.base
                and self.exponent == other.exponent
                and self.tail == other.tail
            )
        if isinstance(other, GrossPoly):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.multiplier, self.base, self.exponent, self.tail))

    def __lt__(self, other):
        return _cmp_gross(self, _coerce(other)) < 0

    def __le__(self, other):
        return _cmp_gross(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return _cmp_gross(self, _coerce(other)) > 0

    def __ge__(self, other):
        return _cmp_gross(self, _coerce(other)) >= 0

    def __str__(self):
        return render_gross(self)

    def __repr__(self):
        return f"ExpCount<{render_gross(self)}>"


GrossNumber = Union[GrossPoly, ExpCount]


def _coerce(value) -> GrossNumber:
    got = _try_coerce(value)
    if got is None:
        raise TypeError(f"cannot interpret {value!r} as a gross-number")
    return got


def _try_coerce(value):
    if isinstance(value, (GrossPoly, ExpCount)):
        return value
    if isinstance(value, (int, Fraction)):
        return fin(value)
    return None


# classification


def classify(x: GrossNumber) -> Classification:
    """Coarse placement of a value: zero, finite, infinite or infinitesimal."""
    if isinstance(x, ExpCount):
        return Classification.INFINITE_POSITIVE
    if not x.terms:
        return Classification.ZERO
    coeff, exp = x.terms[0]
    k = _cmp_poly(exp, ZERO)
    if k > 0:
        return (
            Classification.INFINITE_POSITIVE
            if coeff > 0
            else Classification.INFINITE_NEGATIVE
        )
    if k == 0:
        return (
            Classification.FINITE_POSITIVE if coeff > 0 else Classification.FINITE_NEGATIVE
        )
    return Classification.INFINITESIMAL


def is_infinite(x: GrossNumber) -> bool:
    return classify(x) in (
        Classification.INFINITE_POSITIVE,
        Classification.INFINITE_NEGATIVE,
    )


# addition and subtraction


def add(x: GrossNumber, y: GrossNumber) -> GrossNumber:
    """Exact sum.  Raises UnsupportedSum when the result leaves the closure."""
    if isinstance(x, GrossPoly) and isinstance(y, GrossPoly):
        return _padd(x, y)
    if isinstance(x, ExpCount) and isinstance(y, GrossPoly):
        return ExpCount(x.multiplier, x.base, x.exponent, _padd(x.tail, y))
    if isinstance(x, GrossPoly) and isinstance(y, ExpCount):
        return add(y, x)
    return _combine_exp(x, y, subtract=False)


def neg(x: GrossNumber) -> GrossNumber:
    """Negation; exponential counts have no representable negation."""
    if isinstance(x, GrossPoly):
        return _pneg(x)
    raise UnsupportedSum("an exponential count cannot be negated")


def sub(x: GrossNumber, y: GrossNumber) -> GrossNumber:
    """Exact difference, including cancellation between equal-shape counts."""
    if isinstance(y, GrossPoly):
        return add(x, _pneg(y))
    if isinstance(x, GrossPoly):
        raise UnsupportedSum("subtracting an exponential count from a polynomial leaves the closure")
    return _combine_exp(x, y, subtract=True)


def _combine_exp(x: ExpCount, y: ExpCount, subtract: bool) -> GrossNumber:
    """Sum or difference of two exponential counts with compatible shapes."""
    if x.base != y.base:
        raise UnsupportedSum("exponential counts with different bases do not combine")
    merged = _merge_exponents(x, y)
    if merged is None:
        raise UnsupportedSum("exponential counts with incompatible exponents do not combine")
    exponent, fx, fy = merged
    ry = y.multiplier * fy
    if subtract:
        ry = -ry
    multiplier = x.multiplier * fx + ry
    tail = _psub(x.tail, y.tail) if subtract else _padd(x.tail, y.tail)
    if multiplier == 0:
        return tail
    if multiplier < 0:
        raise UnsupportedSum("the difference would be a negative exponential count")
    return ExpCount(multiplier, x.base, exponent, tail)


def _merge_exponents(x: ExpCount, y: ExpCount):
    """Common exponent plus per-side rational factors, or None.

    Exponents that differ by a finite integer k fold the factor base^k into
    the multiplier, mirroring the identity b^(P + k) == b^k * b^P.
    """
    ex, ey = x.exponent, y.exponent
    base = Fraction(x.base)
    if isinstance(ex, GrossPoly) and isinstance(ey, GrossPoly):
        diff = _psub(ex, ey)
        if diff.is_zero:
            return ex, Fraction(1), Fraction(1)
        k = diff.as_int()
        if k is None:
            return None
        if k > 0:
            return ey, base ** k, Fraction(1)
        return ex, Fraction(1), base ** (-k)
    if isinstance(ex, CritRef) and isinstance(ey, CritRef):
        if ex.base != ey.base or ex.target != ey.target:
            return None
        k = ex.offset - ey.offset
        if k >= 0:
            return ey, base ** k, Fraction(1)
        return ex, Fraction(1), base ** (-k)
    return None


# multiplication and division


def mul(x: GrossNumber, y: GrossNumber) -> GrossNumber:
    """Exact product.  Raises UnsupportedProduct outside the closure."""
    if isinstance(x, GrossPoly) and isinstance(y, GrossPoly):
        return _pmul(x, y)
    if isinstance(x, GrossPoly):
        x, y = y, x
    if isinstance(y, GrossPoly):
        factor = y.as_rational()
        if factor is None:
            raise UnsupportedProduct(
                "an exponential count only scales by a finite rational"
            )
        if factor == 0:
            return ZERO
        if factor < 0:
            raise UnsupportedProduct("exponential counts stay positive")
        return ExpCount(x.multiplier * factor, x.base, x.exponent, _pscale(x.tail, factor))
    # ExpCount * ExpCount
    if x.tail.terms or y.tail.terms:
        raise UnsupportedProduct("cross terms of corrected counts leave the closure")
    if (
        x.base == y.base
        and isinstance(x.exponent, GrossPoly)
        and isinstance(y.exponent, GrossPoly)
    ):
        return ExpCount(x.multiplier * y.multiplier, x.base, _padd(x.exponent, y.exponent))
    raise UnsupportedProduct(
        "products of exponential counts need equal bases and polynomial exponents"
    )


def div_exact(x: GrossNumber, y: GrossNumber) -> GrossNumber:
    """Exact division: the right inverse of mul wherever it is defined."""
    if isinstance(y, GrossPoly):
        if y.is_zero:
            raise DivisionByZero("division by zero")
        r = y.as_rational()
        if r is not None:
            return mul(x, fin(Fraction(1) / r))
        if isinstance(x, ExpCount):
            raise NonExactDivision("an exponential count only divides by rationals or its own kind")
        if len(y.terms) == 1:
            dc, de = y.terms[0]
            return _canon((c / dc, _psub(e, de)) for c, e in x.terms)
        raise NonExactDivision("division by multi-term values is not supported")
    # y is ExpCount
    if isinstance(x, GrossPoly):
        raise NonExactDivision("a polynomial value does not divide by an exponential count")
    if x.tail.terms or y.tail.terms:
        raise NonExactDivision("corrected counts do not divide")
    if x.base != y.base:
        raise NonExactDivision("exponential counts with different bases do not divide")
    ratio = x.multiplier / y.multiplier
    ex, ey = x.exponent, y.exponent
    if isinstance(ex, GrossPoly) and isinstance(ey, GrossPoly):
        diff = _psub(ex, ey)
        cls = classify(diff)
        if cls is Classification.ZERO:
            return fin(ratio)
        if cls is Classification.INFINITE_POSITIVE:
            return ExpCount(ratio, x.base, diff)
        k = diff.as_int()
        if k is not None:
            return fin(ratio * Fraction(x.base) ** k)
        raise NonExactDivision("exponents do not cancel")
    if isinstance(ex, CritRef) and isinstance(ey, CritRef):
        if ex.base == ey.base and ex.target == ey.target:
            # the unknown critical power cancels exactly
            return fin(ratio * Fraction(x.base) ** (ex.offset - ey.offset))
    raise NonExactDivision("exponents do not cancel")


def pow_count(base: int, k) -> GrossNumber:
    """base**k for a count exponent k (polynomial or critical digit length).

    Finite k must be a non-negative integer and gives an exact rational
    power; infinite positive k gives an ExpCount; negative k is refused.
    """
    if not isinstance(base, int) or base < 2:
        raise UnsupportedPower(f"numeral base must be an integer >= 2, got {base}")
    if isinstance(k, CritRef):
        if k.base != base:
            raise UnsupportedPower("a critical digit length only exponentiates its own base")
        return ExpCount(Fraction(1), base, k)
    if isinstance(k, ExpCount):
        raise UnsupportedPower("exponential exponents leave the closure")
    if isinstance(k, (int, Fraction)):
        k = fin(k)
    cls = classify(k)
    if cls is Classification.ZERO:
        return ONE
    if cls in (Classification.FINITE_NEGATIVE, Classification.INFINITE_NEGATIVE):
        raise NegativeExponent("counts cannot be raised to negative powers")
    if cls is Classification.FINITE_POSITIVE:
        n = k.as_int()
        if n is None:
            raise NonIntegerExponent("finite exponents of counts must be integers")
        if n * base.bit_length() > MATERIALIZE_BIT_CAP:
            raise ExponentTooLarge(f"{base}^{n} will not be materialized")
        return fin(Fraction(base) ** n)
    if cls is Classification.INFINITESIMAL:
        raise NonIntegerExponent("infinitesimal exponents do not yield counts")
    return ExpCount(Fraction(1), base, k)


# comparison


def compare(x: GrossNumber, y: GrossNumber) -> Ordering:
    """Exact total order on the supported closure.

    Raises Undetermined where only sandwich bounds are known (some mixed
    critical-length comparisons, and cross-base ties past leading order).
    """
    return Ordering(_cmp_gross(_coerce(x), _coerce(y)))


def _cmp_gross(x: GrossNumber, y: GrossNumber) -> int:
    if isinstance(x, GrossPoly) and isinstance(y, GrossPoly):
        return _cmp_poly(x, y)
    if isinstance(x, GrossPoly):
        return -_cmp_gross(y, x)
    if isinstance(y, GrossPoly):
        if isinstance(x.exponent, CritRef):
            return _cmp_bounded_vs_poly(x, y)
        # a b^P count exceeds every polynomial value
        return 1
    xc = isinstance(x.exponent, CritRef)
    yc = isinstance(y.exponent, CritRef)
    if xc and yc:
        return _cmp_bounded_pair(x, y)
    if xc:
        # x is sandwiched below a polynomial bound; y exceeds all of them
        return -1
    if yc:
        return 1
    if x.base == y.base:
        return _cmp_same_base(x, y)
    return _cmp_cross_base(x, y)


def _crit_bounds(x: ExpCount) -> Tuple[GrossPoly, GrossPoly]:
    """Exclusive lower and inclusive upper polynomial bounds of a crit count."""
    ref = x.exponent
    base = Fraction(x.base)
    upper = _padd(_pscale(ref.target, x.multiplier * base ** ref.offset), x.tail)
    lower = _padd(_pscale(ref.target, x.multiplier * base ** (ref.offset - 1)), x.tail)
    return lower, upper


def _cmp_bounded_vs_poly(x: ExpCount, y: GrossPoly) -> int:
    lower, upper = _crit_bounds(x)
    if _cmp_poly(lower, y) >= 0:
        return 1
    # the <= side of the sandwich is reported as strict: no target produced
    # by set measurement is an exact power of the base
    if _cmp_poly(upper, y) <= 0:
        return -1
    raise Undetermined(
        f"{render_gross(x)} vs {render_gross(y)} is not resolvable from the sandwich"
    )


def _cmp_bounded_pair(x: ExpCount, y: ExpCount) -> int:
    rx, ry = x.exponent, y.exponent
    if rx.base == ry.base and rx.target == ry.target and x.base == y.base:
        base = Fraction(x.base)
        factor = x.multiplier * base ** rx.offset - y.multiplier * base ** ry.offset
        tail_diff = _psub(x.tail, y.tail)
        if factor == 0:
            return _cmp_poly(tail_diff, ZERO)
        # difference = factor * B + tail_diff with B strictly inside
        # (target/base, target]; boundary ties resolve as strict
        at_upper = _padd(_pscale(rx.target, factor), tail_diff)
        at_lower = _padd(_pscale(rx.target, factor / base), tail_diff)
        lo, hi = (at_lower, at_upper) if factor > 0 else (at_upper, at_lower)
        if _cmp_poly(lo, ZERO) >= 0:
            return 1
        if _cmp_poly(hi, ZERO) <= 0:
            return -1
        raise Undetermined(
            f"{render_gross(x)} vs {render_gross(y)} is not resolvable from the sandwich"
        )
    lower_x, upper_x = _crit_bounds(x)
    lower_y, upper_y = _crit_bounds(y)
    if _cmp_poly(upper_x, lower_y) <= 0:
        return -1
    if _cmp_poly(upper_y, lower_x) <= 0:
        return 1
    raise Undetermined(
        f"{render_gross(x)} vs {render_gross(y)} is not resolvable from the sandwich"
    )


def _cmp_same_base(x: ExpCount, y: ExpCount) -> int:
    diff = _psub(x.exponent, y.exponent)
    cls = classify(diff)
    if cls is Classification.INFINITE_POSITIVE:
        return 1
    if cls is Classification.INFINITE_NEGATIVE:
        return -1
    const = diff.constant_term()
    s = _cmp_power_vs_const(x.multiplier, x.base, const, y.multiplier)
    if s:
        return s
    eps = _psub(diff, fin(const))
    if eps.terms:
        # b^eps is 1 plus an (in)finitesimal of the sign of eps
        return _sign(eps.terms[0][0])
    return _cmp_poly(x.tail, y.tail)


def _cmp_power_vs_const(r1: Fraction, b: int, f: Fraction, r2: Fraction) -> int:
    """Sign of r1*b^f - r2 for an exact rational f; exact via integer powers."""
    q = f.denominator
    p = f.numerator
    if abs(p) * b.bit_length() > _POWER_BIT_GUARD:
        raise ExponentTooLarge("cross-power comparison exceeds the size guard")
    lhs = Fraction(r1) ** q * Fraction(b) ** p
    rhs = Fraction(r2) ** q
    return _sign(lhs - rhs)


def _cmp_scaled_power(r1: Fraction, b1: int, f: Fraction, r2: Fraction, b2: int) -> int:
    """Sign of r1*b1^f - r2*b2^f for an exact rational f."""
    q = f.denominator
    p = f.numerator
    if abs(p) * max(b1, b2).bit_length() > _POWER_BIT_GUARD:
        raise ExponentTooLarge("cross-power comparison exceeds the size guard")
    lhs = Fraction(r1) ** q * Fraction(b1) ** p
    rhs = Fraction(r2) ** q * Fraction(b2) ** p
    return _sign(lhs - rhs)


def _cmp_log_leading(c1: Fraction, b1: int, c2: Fraction, b2: int) -> int:
    """Sign of c1*ln(b1) - c2*ln(b2) for positive rationals via integer powers."""
    e1 = c1.numerator * c2.denominator
    e2 = c2.numerator * c1.denominator
    if max(e1, e2) * max(b1, b2).bit_length() > _POWER_BIT_GUARD:
        raise ExponentTooLarge("cross-power comparison exceeds the size guard")
    return _sign(b1 ** e1 - b2 ** e2)


def _cmp_cross_base(x: ExpCount, y: ExpCount) -> int:
    """Counts of different bases: exact comparison at leading order.

    Ties deeper than the leading exponent term are resolved exactly when the
    exponent remainders coincide; remainders that differ are an honest
    Undetermined, since counting identities never compare such pairs.
    """
    px, py = x.exponent, y.exponent
    (cx, ex) = px.terms[0]
    (cy, ey) = py.terms[0]
    ce = _cmp_poly(ex, ey)
    if ce:
        return ce  # leading coefficients of count exponents are positive
    s = _cmp_log_leading(cx, x.base, cy, y.base)
    if s:
        return s
    rx = GrossPoly(px.terms[1:])
    ry = GrossPoly(py.terms[1:])
    if rx != ry:
        raise Undetermined(
            f"{render_gross(x)} vs {render_gross(y)}: tied at leading order with "
            "different exponent remainders"
        )
    if not rx.terms:
        s = _sign(x.multiplier - y.multiplier)
        if s:
            return s
        return _cmp_poly(x.tail, y.tail)
    cls = classify(rx)
    if cls in (Classification.INFINITE_POSITIVE, Classification.INFINITE_NEGATIVE):
        return _sign(rx.terms[0][0]) * _sign(x.base - y.base)
    const = rx.constant_term()
    s = _cmp_scaled_power(x.multiplier, x.base, const, y.multiplier, y.base)
    if s:
        return s
    eps = _psub(rx, fin(const))
    if eps.terms:
        return _sign(eps.terms[0][0]) * _sign(x.base - y.base)
    return _cmp_poly(x.tail, y.tail)


# rendering (the inverse of the expression-language parser on canonical forms)


def _frac_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _exp_str(e: GrossPoly) -> str:
    n = e.as_int()
    if n is not None and n >= 0:
        return str(n)
    return f"({render_poly(e)})"


def _term_body(coeff: Fraction, exp: GrossPoly) -> str:
    """Positive-coefficient term text: '3', 'G/55', '2*G', '3*G^2/4'."""
    if exp.is_zero:
        return _frac_str(coeff)
    core = "G" if exp == ONE else f"G^{_exp_str(exp)}"
    n, d = coeff.numerator, coeff.denominator
    body = core if n == 1 else f"{n}*{core}"
    if d != 1:
        body += f"/{d}"
    return body


def _join_terms(pieces) -> str:
    """Join (sign, body) pieces into '-a + b - c' form."""
    out = []
    for i, (sign_, body) in enumerate(pieces):
        if i == 0:
            out.append(("-" if sign_ < 0 else "") + body)
        else:
            out.append((" - " if sign_ < 0 else " + ") + body)
    return "".join(out)


def render_poly(p: GrossPoly) -> str:
    if not p.terms:
        return "0"
    return _join_terms((_sign(c), _term_body(abs(c), e)) for c, e in p.terms)


def render_critref(ref: CritRef) -> str:
    inner = f"crit({ref.base}, {render_poly(ref.target)})"
    if ref.offset == 0:
        return inner
    if ref.offset > 0:
        return f"({inner} + {ref.offset})"
    return f"({inner} - {-ref.offset})"


def render_gross(x: GrossNumber) -> str:
    """Canonical text form; parsing it back yields an equal value."""
    if isinstance(x, GrossPoly):
        return render_poly(x)
    if isinstance(x.exponent, CritRef):
        exp_text = render_critref(x.exponent)
    elif x.exponent == GROSSONE:
        exp_text = "G"
    else:
        exp_text = f"({render_poly(x.exponent)})"
    core = f"{x.base}^{exp_text}"
    n, d = x.multiplier.numerator, x.multiplier.denominator
    if n != 1:
        core = f"{n}*{core}"
    if d != 1:
        core = f"{core}/{d}"
    if not x.tail.terms:
        return core
    tail = _join_terms(
        [(1, core)] + [(_sign(c), _term_body(abs(c), e)) for c, e in x.tail.terms]
    )
    return tail
