"""Exact measurement of eventually periodic subsets of {1..G}.

A ``NatSubset`` is a finite union of arithmetic progressions (residue classes
modulo d) corrected by finitely many added and removed elements.  Its count
follows from one axiom: the class of r modulo d contains exactly G/d of the
first G naturals, for every finite d.  ``SignedSet`` extends the picture to
{-G..G} with an explicit zero flag, which is also how one extra element
outside the naturals is counted (the G + 1 construction).

The module keeps two independent routes to every set:

* the canonical ``NatSubset`` algebra used for symbolic counting, and
* ``SetExpr`` trees that remember how a set was built and can enumerate it
  extensionally, with no reference to the residue algebra.

The oracle compares the two routes; they are never collapsed into one.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, Tuple, Union

from . import gnum
from .errors import EvalError
from .gnum import GROSSONE, GrossNumber, GrossPoly, ZERO, fin, gterm


class SetOp(Enum):
    UNION = "union"
    INTERSECT = "intersect"
    DIFFERENCE = "difference"


def _check_positive_elements(elems: Iterable[int], what: str) -> FrozenSet[int]:
    out = frozenset(elems)
    for e in out:
        if not isinstance(e, int) or e < 1:
            raise EvalError(f"{what} must be positive integers, got {e!r}")
    return out


@dataclass(frozen=True)
class NatSubset:
    """Canonical eventually periodic subset of the naturals.

    modulus >= 1; residues within range(modulus); every added element falls
    outside the residue classes and every removed element inside them; the
    modulus is minimal.  Always build through :func:`nat_subset`,
    :func:`finite_set` or :func:`progression`.
    """

    modulus: int
    residues: FrozenSet[int]
    added: FrozenSet[int] = frozenset()
    removed: FrozenSet[int] = frozenset()

    def contains(self, x: int) -> bool:
        if x < 1:
            return False
        if x in self.added:
            return True
        if x in self.removed:
            return False
        return (x % self.modulus) in self.residues

    @property
    def is_finite(self) -> bool:
        return not self.residues

    def members(self, n: int) -> Tuple[int, ...]:
        return members(self, n)

    def card(self) -> GrossPoly:
        return card(self)

    def __str__(self):
        return render_nat(self)

    def __repr__(self):
        return f"NatSubset<{render_nat(self)}>"


def _divisors(d: int):
    for k in range(1, d + 1):
        if d % k == 0:
            yield k


def nat_subset(modulus: int, residues, added=(), removed=()) -> NatSubset:
    """Canonicalizing constructor; accepts any semantically valid description.

    Membership is: x in added, or (x mod modulus in residues and x not in
    removed).  Exceptions listed on the wrong side of the classes are folded
    away and the modulus is reduced to the minimal period.
    """
    if not isinstance(modulus, int) or modulus < 1:
        raise EvalError(f"modulus must be a positive integer, got {modulus!r}")
    residues = frozenset(r % modulus for r in residues)
    added = _check_positive_elements(added, "added elements")
    removed = _check_positive_elements(removed, "removed elements")
    if added & removed:
        raise EvalError("an element cannot be both added and removed")
    # minimal period of the residue pattern
    for d in _divisors(modulus):
        folded = {r % d for r in residues}
        if all(((r % d) in folded) == (r in residues) for r in range(modulus)):
            modulus, residues = d, frozenset(folded)
            break
    added = frozenset(a for a in added if (a % modulus) not in residues)
    removed = frozenset(r for r in removed if (r % modulus) in residues)
    return NatSubset(modulus, residues, added, removed)


EMPTY = nat_subset(1, ())
NATURALS = nat_subset(1, (0,))


def finite_set(elems: Iterable[int]) -> NatSubset:
    return nat_subset(1, (), added=elems)


def progression(first: int, step: int) -> NatSubset:
    """The arithmetic progression {first, first + step, first + 2*step, ...}."""
    if not isinstance(first, int) or first < 1:
        raise EvalError(f"progressions start at a positive integer, got {first!r}")
    if not isinstance(step, int) or step < 1:
        raise EvalError(f"progression steps are positive integers, got {step!r}")
    r = first % step
    start = r if r >= 1 else step
    holes = range(start, first, step)
    return nat_subset(step, (r,), removed=holes)


def combine(op: SetOp, s: NatSubset, t: NatSubset) -> NatSubset:
    """Union, intersection or difference, recanonicalized."""
    lift = math.lcm(s.modulus, t.modulus)
    if op is SetOp.UNION:
        fn = lambda a, b: a or b
    elif op is SetOp.INTERSECT:
        fn = lambda a, b: a and b
    else:
        fn = lambda a, b: a and not b
    residues = frozenset(
        r
        for r in range(lift)
        if fn((r % s.modulus) in s.residues, (r % t.modulus) in t.residues)
    )
    added, removed = [], []
    for x in s.added | s.removed | t.added | t.removed:
        is_in = fn(s.contains(x), t.contains(x))
        in_classes = (x % lift) in residues
        if is_in and not in_classes:
            added.append(x)
        elif not is_in and in_classes:
            removed.append(x)
    return nat_subset(lift, residues, added, removed)


def complement(s: NatSubset) -> NatSubset:
    """The complement within the naturals {1..G}."""
    residues = frozenset(range(s.modulus)) - s.residues
    return nat_subset(s.modulus, residues, added=s.removed, removed=s.added)


def card(s: NatSubset) -> GrossPoly:
    """Exact count: each residue class holds G/modulus members."""
    coeff = Fraction(len(s.residues), s.modulus)
    correction = len(s.added) - len(s.removed)
    return gterm(coeff, gnum.ONE) + fin(correction)


def product_card(s: NatSubset, t: NatSubset) -> GrossPoly:
    """Count of the Cartesian product s x t."""
    return gnum.mul(card(s), card(t))


def members(s: NatSubset, n: int) -> Tuple[int, ...]:
    """The n smallest members, ascending; fewer if the set runs out."""
    if n <= 0:
        return ()

    def class_stream(r: int) -> Iterator[int]:
        start = r if r >= 1 else s.modulus
        x = start
        while True:
            yield x
            x += s.modulus

    streams = [class_stream(r) for r in sorted(s.residues)]
    streams.append(iter(sorted(s.added)))
    merged = heapq.merge(*streams)
    picked = (x for x in merged if x not in s.removed)
    return tuple(itertools.islice(picked, n))


@dataclass(frozen=True)
class SignedSet:
    """A subset of {-G..G}: mirrored negatives, a zero flag, positives."""

    negatives: NatSubset
    has_zero: bool
    positives: NatSubset

    def contains(self, x: int) -> bool:
        if x == 0:
            return self.has_zero
        if x > 0:
            return self.positives.contains(x)
        return self.negatives.contains(-x)

    def card(self) -> GrossPoly:
        return card_signed(self)

    def __str__(self):
        return render_signed(self)

    def __repr__(self):
        return f"SignedSet<{render_signed(self)}>"


EMPTY_SIGNED = SignedSet(EMPTY, False, EMPTY)
INTEGERS = SignedSet(NATURALS, True, NATURALS)


def lift_signed(s: NatSubset) -> SignedSet:
    return SignedSet(EMPTY, False, s)


def card_signed(s: SignedSet) -> GrossPoly:
    total = gnum.add(card(s.negatives), card(s.positives))
    if s.has_zero:
        total = gnum.add(total, gnum.ONE)
    return total


def combine_signed(op: SetOp, s: SignedSet, t: SignedSet) -> SignedSet:
    if op is SetOp.UNION:
        zero = s.has_zero or t.has_zero
    elif op is SetOp.INTERSECT:
        zero = s.has_zero and t.has_zero
    else:
        zero = s.has_zero and not t.has_zero
    return SignedSet(
        combine(op, s.negatives, t.negatives), zero, combine(op, s.positives, t.positives)
    )


def complement_signed(s: SignedSet) -> SignedSet:
    return SignedSet(complement(s.negatives), not s.has_zero, complement(s.positives))


# ---------------------------------------------------------------------------
# Set expressions: the independent extensional route.
#
# These trees are the other half of the dual bookkeeping: build() runs the
# residue algebra above, while contains()/enumerate_upto() evaluate the
# defining predicate directly, one element at a time, so the two can be
# compared against each other by the oracle.
# ---------------------------------------------------------------------------


class SetExpr:
    """A recipe for a subset of the naturals."""

    def contains(self, x: int) -> bool:
        raise NotImplementedError

    def enumerate_upto(self, limit: int) -> set:
        """The extension within {1..limit}, computed without the algebra."""
        raise NotImplementedError

    def build(self) -> NatSubset:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class FiniteSetE(SetExpr):
    elems: FrozenSet[int]

    def contains(self, x):
        return x in self.elems

    def enumerate_upto(self, limit):
        return {e for e in self.elems if 1 <= e <= limit}

    def build(self):
        return finite_set(self.elems)

    def to_text(self):
        return "{" + ", ".join(str(e) for e in sorted(self.elems)) + "}"


@dataclass(frozen=True)
class ProgressionE(SetExpr):
    first: int
    step: int

    def contains(self, x):
        return x >= self.first and (x - self.first) % self.step == 0

    def enumerate_upto(self, limit):
        return set(range(self.first, limit + 1, self.step))

    def build(self):
        return progression(self.first, self.step)

    def to_text(self):
        return f"ap({self.first}, {self.step})"


@dataclass(frozen=True)
class UniverseNE(SetExpr):
    def contains(self, x):
        return x >= 1

    def enumerate_upto(self, limit):
        return set(range(1, limit + 1))

    def build(self):
        return NATURALS

    def to_text(self):
        return "N"


@dataclass(frozen=True)
class CombineE(SetExpr):
    op: SetOp
    left: SetExpr
    right: SetExpr

    def contains(self, x):
        a, b = self.left.contains(x), self.right.contains(x)
        if self.op is SetOp.UNION:
            return a or b
        if self.op is SetOp.INTERSECT:
            return a and b
        return a and not b

    def enumerate_upto(self, limit):
        a = self.left.enumerate_upto(limit)
        b = self.right.enumerate_upto(limit)
        if self.op is SetOp.UNION:
            return a | b
        if self.op is SetOp.INTERSECT:
            return a & b
        return a - b

    def build(self):
        return combine(self.op, self.left.build(), self.right.build())

    def to_text(self):
        sym = {"union": "|", "intersect": "&", "difference": "\\"}[self.op.value]
        return f"({self.left.to_text()} {sym} {self.right.to_text()})"


@dataclass(frozen=True)
class ComplementE(SetExpr):
    inner: SetExpr

    def contains(self, x):
        return x >= 1 and not self.inner.contains(x)

    def enumerate_upto(self, limit):
        return set(range(1, limit + 1)) - self.inner.enumerate_upto(limit)

    def build(self):
        return complement(self.inner.build())

    def to_text(self):
        return f"~{self.inner.to_text()}"


EMPTY_E = FiniteSetE(frozenset())


@dataclass(frozen=True)
class SignedExprE:
    """Signed counterpart: mirrored negative part, zero flag, positive part."""

    negatives: SetExpr
    has_zero: bool
    positives: SetExpr

    def contains(self, x: int) -> bool:
        if x == 0:
            return self.has_zero
        if x > 0:
            return self.positives.contains(x)
        return self.negatives.contains(-x)

    def build(self) -> SignedSet:
        return SignedSet(self.negatives.build(), self.has_zero, self.positives.build())

    def to_text(self):
        parts = []
        if self.negatives != EMPTY_E:
            parts.append(f"mirror({self.negatives.to_text()})")
        if self.has_zero:
            parts.append("{0}")
        if self.positives != EMPTY_E:
            parts.append(self.positives.to_text())
        return " | ".join(parts) if parts else "{}"


UNIVERSE_Z_E = SignedExprE(UniverseNE(), True, UniverseNE())


def lift_signed_expr(e: SetExpr) -> SignedExprE:
    return SignedExprE(EMPTY_E, False, e)


def combine_signed_expr(op: SetOp, s: SignedExprE, t: SignedExprE) -> SignedExprE:
    if op is SetOp.UNION:
        zero = s.has_zero or t.has_zero
    elif op is SetOp.INTERSECT:
        zero = s.has_zero and t.has_zero
    else:
        zero = s.has_zero and not t.has_zero
    return SignedExprE(
        CombineE(op, s.negatives, t.negatives), zero, CombineE(op, s.positives, t.positives)
    )


def complement_signed_expr(s: SignedExprE) -> SignedExprE:
    return SignedExprE(ComplementE(s.negatives), not s.has_zero, ComplementE(s.positives))


# rendering back to expression-language text


def render_nat(s: NatSubset) -> str:
    if s == NATURALS:
        return "N"
    pieces = []
    for r in sorted(s.residues):
        start = r if r >= 1 else s.modulus
        pieces.append(f"ap({start}, {s.modulus})")
    if s.added:
        pieces.append("{" + ", ".join(str(a) for a in sorted(s.added)) + "}")
    if not pieces:
        return "{}"
    body = " | ".join(pieces)
    if len(pieces) > 1 and s.removed:
        body = f"({body})"
    if s.removed:
        body += " \\ {" + ", ".join(str(r) for r in sorted(s.removed)) + "}"
    return body


def render_signed(s: SignedSet) -> str:
    if s == INTEGERS:
        return "Z"
    parts = []
    if s.negatives != EMPTY:
        parts.append(f"mirror({render_nat(s.negatives)})")
    if s.has_zero:
        parts.append("{0}")
    if s.positives != EMPTY:
        parts.append(render_nat(s.positives))
    return " | ".join(parts) if parts else "{}"
