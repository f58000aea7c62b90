"""Finite-substitution oracle: every symbolic count must survive G := L.

Substituting a concrete integer L for the infinite unit turns gross-numbers
into exact rationals, and infinite-set counts into finite counting problems
that brute-force enumeration can check.  The substitution is a homomorphism:
whatever identity the calculator claims symbolically must hold numerically at
every admissible L, where admissible means L is divisible by the moduli in
play and safely larger than all exceptional elements.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import (
    CritRefNotSubstitutable,
    ExponentTooLarge,
    InvalidL,
    NegativeExponent,
    NonIntegerExponent,
)
from .gnum import (
    Classification,
    CritRef,
    ExpCount,
    GrossNumber,
    GrossPoly,
    classify,
    compare,
    render_gross,
)
from .setmeasure import (
    CombineE,
    ComplementE,
    FiniteSetE,
    ProgressionE,
    SetExpr,
    SetOp,
    SignedExprE,
    UniverseNE,
)

# Cap on the bit length of any number produced by substitution; large enough
# for every check in the suite, small enough to fail fast on runaway powers.
DEFAULT_BIT_CAP = 10 ** 6


def int_log_floor(base: int, n: int) -> int:
    """Exact floor(log_base(n)) for integers n >= 1, base >= 2."""
    if n < 1:
        raise CritRefNotSubstitutable(f"integer logarithm of {n} is undefined")
    k = 0
    while n >= base:
        n //= base
        k += 1
    return k


def subst(x: Union[GrossNumber, CritRef], L: int, bit_cap: int = DEFAULT_BIT_CAP) -> Fraction:
    """Evaluate x with the infinite unit replaced by the integer L."""
    if not isinstance(L, int) or L < 2:
        raise InvalidL(f"substitution point must be an integer >= 2, got {L!r}")
    if isinstance(x, GrossPoly):
        return _subst_poly(x, L, bit_cap)
    if isinstance(x, ExpCount):
        exponent = x.exponent
        if isinstance(exponent, CritRef):
            k = _subst_critref(exponent, L, bit_cap)
        else:
            k = _subst_poly(exponent, L, bit_cap)
            if k.denominator != 1:
                raise NonIntegerExponent(
                    f"exponent of {render_gross(x)} substitutes to non-integer {k}"
                )
            k = int(k)
        if k < 0:
            raise NegativeExponent(
                f"exponent of {render_gross(x)} substitutes to negative {k}"
            )
        _guard_power_bits(x.base, k, bit_cap)
        return x.multiplier * Fraction(x.base) ** k + _subst_poly(x.tail, L, bit_cap)
    if isinstance(x, CritRef):
        return Fraction(_subst_critref(x, L, bit_cap))
    raise TypeError(f"cannot substitute into {x!r}")


def _subst_critref(ref: CritRef, L: int, bit_cap: int) -> int:
    target = _subst_poly(ref.target, L, bit_cap)
    if target.denominator != 1 or target < 1:
        raise CritRefNotSubstitutable(
            f"target of {ref!r} substitutes to {target}, not a positive integer"
        )
    return int_log_floor(ref.base, int(target)) + ref.offset


def _subst_poly(p: GrossPoly, L: int, bit_cap: int) -> Fraction:
    total = Fraction(0)
    for coeff, exp in p.terms:
        e = _subst_poly(exp, L, bit_cap)
        if e.denominator != 1:
            raise NonIntegerExponent(f"exponent {render_gross(exp)} substitutes to {e}")
        _guard_power_bits(L, abs(int(e)), bit_cap)
        power = Fraction(L) ** int(e)
        total += coeff * power
    return total


def _guard_power_bits(base: int, exponent: int, bit_cap: int) -> None:
    if exponent * max(base, 2).bit_length() > bit_cap:
        raise ExponentTooLarge(
            f"{base}^{exponent} exceeds the {bit_cap}-bit substitution guard"
        )


@dataclass(frozen=True)
class SubstReport:
    """One substitution check: the symbolic claim next to the brute answer."""

    expression: str
    L: int
    symbolic_value: Fraction
    brute_value: Fraction
    match: bool

    def __str__(self):
        mark = "ok" if self.match else "MISMATCH"
        return (
            f"{self.expression} at L={self.L}: symbolic {self.symbolic_value} "
            f"vs brute {self.brute_value} [{mark}]"
        )


def brute_count(expr: Union[SetExpr, SignedExprE], L: int) -> int:
    """Count members extensionally: {1..L} for natural sets, {-L..L} signed."""
    if isinstance(expr, SignedExprE):
        total = len(expr.negatives.enumerate_upto(L)) + len(expr.positives.enumerate_upto(L))
        return total + (1 if expr.has_zero else 0)
    return len(expr.enumerate_upto(L))


def _exception_ceiling(subset) -> int:
    pts = subset.added | subset.removed
    return max(pts) if pts else 0


def check_card(expr: Union[SetExpr, SignedExprE], L: int) -> SubstReport:
    """Compare the symbolic count of expr against brute enumeration at L.

    L must be divisible by the canonical modulus and larger than ten times
    the largest exceptional element, so that every residue class is sampled
    a whole number of times and corrections sit well inside the range.
    """
    built = expr.build()
    if isinstance(expr, SignedExprE):
        moduli = (built.negatives.modulus, built.positives.modulus)
        ceiling = max(_exception_ceiling(built.negatives), _exception_ceiling(built.positives))
        symbolic = built.card()
    else:
        moduli = (built.modulus,)
        ceiling = _exception_ceiling(built)
        symbolic = built.card()
    for m in moduli:
        if L % m != 0:
            raise InvalidL(f"L={L} is not divisible by the canonical modulus {m}")
    if L <= 10 * ceiling:
        raise InvalidL(f"L={L} is not beyond 10x the largest exception {ceiling}")
    sym_val = subst(symbolic, L)
    brute = Fraction(brute_count(expr, L))
    return SubstReport(expr.to_text(), L, sym_val, brute, sym_val == brute)


def check_order(x: GrossNumber, y: GrossNumber, Ls: Sequence[int]) -> SubstReport:
    """Check that compare(x, y) matches the numeric order at every L given."""
    verdict = compare(x, y).value
    expression = f"compare({render_gross(x)}, {render_gross(y)})"
    last_L, last_sign, match = 0, Fraction(0), True
    for L in Ls:
        vx, vy = subst(x, L), subst(y, L)
        sign = Fraction((vx > vy) - (vx < vy))
        last_L, last_sign = L, sign
        if sign != verdict:
            match = False
            break
    return SubstReport(expression, last_L, Fraction(verdict), last_sign, match)


# random set expressions for sweep checks


def random_set_expr(rng: random.Random, depth: int = 4) -> SetExpr:
    """A random recipe: progressions and small finite sets under set algebra.

    Moduli stay at 12 or less and explicit values at 200 or less so that
    admissible substitution points remain small enough to enumerate.
    """
    if depth <= 0 or rng.random() < 0.4:
        kind = rng.randrange(3)
        if kind == 0:
            step = rng.randint(1, 12)
            first = rng.randint(1, 200)
            return ProgressionE(first, step)
        if kind == 1:
            size = rng.randint(0, 5)
            return FiniteSetE(frozenset(rng.randint(1, 200) for _ in range(size)))
        return UniverseNE()
    kind = rng.randrange(4)
    if kind == 3:
        return ComplementE(random_set_expr(rng, depth - 1))
    op = (SetOp.UNION, SetOp.INTERSECT, SetOp.DIFFERENCE)[kind]
    return CombineE(op, random_set_expr(rng, depth - 1), random_set_expr(rng, depth - 1))


def _expr_moduli(expr: SetExpr) -> list:
    if isinstance(expr, ProgressionE):
        return [expr.step]
    if isinstance(expr, CombineE):
        return _expr_moduli(expr.left) + _expr_moduli(expr.right)
    if isinstance(expr, ComplementE):
        return _expr_moduli(expr.inner)
    return []


def admissible_points(expr: SetExpr, multipliers: Sequence[int] = (1, 2, 3)) -> Tuple[int, ...]:
    """Substitution points valid for check_card on this expression."""
    built = expr.build()
    lcm = math.lcm(built.modulus, *(_expr_moduli(expr) or [1]))
    ceiling = _exception_ceiling(built)
    floor = max(2, 10 * ceiling + 1)
    scale = -(floor // -lcm)  # ceil division
    return tuple(lcm * scale * m for m in multipliers)


def sweep(seed: int, cases: int) -> Tuple[int, list]:
    """Run check_card over random expressions; returns (failures, reports)."""
    rng = random.Random(seed)
    reports = []
    failures = 0
    for _ in range(cases):
        expr = random_set_expr(rng)
        for L in admissible_points(expr):
            report = check_card(expr, L)
            reports.append(report)
            if not report.match:
                failures += 1
    return failures, reports
