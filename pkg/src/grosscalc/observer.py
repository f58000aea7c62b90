"""Counting systems as instruments of observation with bounded accuracy.

A counting system is a lens: pointing it at a collection yields the numeral
the system can actually say, not the true count.  The Piraha system says
1, 2 or "many"; Munduruku counts exactly to 5 and then estimates; calculus
collapses everything infinite into one symbol; Cantor's cardinals separate
the countable from the continuum; the gross-number system reads off the
exact value.  Weak systems have degenerate arithmetic ("many" + 2 = "many")
which this module reproduces literally.

The quoted token inventories start at 1; none of the recorded languages has
a numeral for an empty collection.  The model adjoins the exact reading 0
anyway so that observation is total on counts and stays monotone.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from . import gnum
from .errors import ForeignToken, NegativeCount, NonIntegralCount
from .gnum import (
    Classification,
    ExpCount,
    GrossNumber,
    GrossPoly,
    Ordering,
    classify,
    fin,
    render_gross,
)


class SystemId(Enum):
    PIRAHA = "piraha"
    MUNDURUKU = "munduruku"
    CALCULUS_INFINITY = "calculus"
    CANTOR = "cantor"
    GROSSONE = "grossone"


@dataclass(frozen=True)
class CountingSystem:
    """One instrument.  The limit field only matters for Munduruku: it is
    where "some, not many" ends and "many, really many" begins, a modeling
    choice rather than an attested fact."""

    id: SystemId
    some_not_many_limit: int = 100

    def __post_init__(self):
        if self.some_not_many_limit < 5:
            raise ValueError("the estimation band cannot start below the exact range")

    def __str__(self):
        return self.id.value


PIRAHA = CountingSystem(SystemId.PIRAHA)
MUNDURUKU = CountingSystem(SystemId.MUNDURUKU)
CALCULUS_INFINITY = CountingSystem(SystemId.CALCULUS_INFINITY)
CANTOR = CountingSystem(SystemId.CANTOR)
GROSSONE_SYSTEM = CountingSystem(SystemId.GROSSONE)

SYSTEMS = (PIRAHA, MUNDURUKU, CALCULUS_INFINITY, CANTOR, GROSSONE_SYSTEM)


@dataclass(frozen=True)
class ExactToken:
    """A numeral that denotes one definite count."""

    value: GrossNumber

    def __str__(self):
        return render_gross(self.value)


@dataclass(frozen=True)
class NamedToken:
    """A vague numeral: a word covering a whole band of counts."""

    name: str

    def __str__(self):
        return self.name


Token = Union[ExactToken, NamedToken]

MANY = NamedToken("many")
SOME_NOT_MANY = NamedToken("some_not_many")
MANY_REALLY_MANY = NamedToken("many_really_many")
INFINITY = NamedToken("inf")
ALEPH0 = NamedToken("aleph0")
CONTINUUM = NamedToken("C")

# vague tokens in increasing band order, per system
_LADDER = {
    SystemId.PIRAHA: (MANY,),
    SystemId.MUNDURUKU: (SOME_NOT_MANY, MANY_REALLY_MANY),
    SystemId.CALCULUS_INFINITY: (INFINITY,),
    SystemId.CANTOR: (ALEPH0, CONTINUUM),
    SystemId.GROSSONE: (),
}


@dataclass(frozen=True)
class Observation:
    """What the instrument reported for one true count."""

    system: CountingSystem
    token: Token

    @property
    def exact(self) -> Optional[GrossNumber]:
        return self.token.value if isinstance(self.token, ExactToken) else None

    def __str__(self):
        return str(self.token)

    def __repr__(self):
        return f"Observation<{self.system}: {self.token}>"


def _as_count(v) -> GrossNumber:
    """Validate that v is a usable count: a non-negative whole gross-number."""
    if isinstance(v, (int, Fraction)):
        v = fin(v)
    kind = classify(v)
    if kind in (Classification.FINITE_NEGATIVE, Classification.INFINITE_NEGATIVE):
        raise NegativeCount(f"{render_gross(v)} is not a count")
    if kind is Classification.INFINITESIMAL:
        raise NonIntegralCount(f"{render_gross(v)} is not a whole count")
    if kind is Classification.FINITE_POSITIVE and v.as_int() is None:
        raise NonIntegralCount(f"{render_gross(v)} is not a whole count")
    return v


def _is_finite(v: GrossNumber) -> bool:
    return classify(v) in (Classification.ZERO, Classification.FINITE_POSITIVE)


def observe(sys: CountingSystem, v) -> Observation:
    """Read the count v through the given system's numerals."""
    v = _as_count(v)
    if sys.id is SystemId.GROSSONE:
        return Observation(sys, ExactToken(v))
    if sys.id is SystemId.PIRAHA:
        if _is_finite(v) and v.as_int() <= 2:
            return Observation(sys, ExactToken(v))
        return Observation(sys, MANY)
    if sys.id is SystemId.MUNDURUKU:
        if not _is_finite(v):
            return Observation(sys, MANY_REALLY_MANY)
        n = v.as_int()
        if n <= 5:
            return Observation(sys, ExactToken(v))
        if n <= sys.some_not_many_limit:
            return Observation(sys, SOME_NOT_MANY)
        return Observation(sys, MANY_REALLY_MANY)
    if sys.id is SystemId.CALCULUS_INFINITY:
        if _is_finite(v):
            return Observation(sys, ExactToken(v))
        return Observation(sys, INFINITY)
    # Cantor: the countable/continuum split.  Everything polynomial in G is
    # countable; b^K for an infinite polynomial K has the cardinality of the
    # numerals of the unit interval; b^k1 for a critical length k1 is bounded
    # by its polynomial target and therefore countable too.
    if _is_finite(v):
        return Observation(sys, ExactToken(v))
    if isinstance(v, ExpCount) and isinstance(v.exponent, GrossPoly):
        return Observation(sys, CONTINUUM)
    return Observation(sys, ALEPH0)


def _require_member(sys: CountingSystem, t) -> Token:
    if isinstance(t, (int, Fraction, GrossPoly, ExpCount)):
        t = ExactToken(_as_count(t))
    if isinstance(t, NamedToken):
        if t not in _LADDER[sys.id]:
            raise ForeignToken(f"{t} is not a numeral of {sys}")
        return t
    if not isinstance(t, ExactToken):
        raise ForeignToken(f"{t!r} is not a numeral of {sys}")
    v = _as_count(t.value)
    if sys.id is SystemId.PIRAHA:
        if not (_is_finite(v) and v.as_int() <= 2):
            raise ForeignToken(f"{render_gross(v)} is beyond the exact numerals 1, 2")
    elif sys.id is SystemId.MUNDURUKU:
        if not (_is_finite(v) and v.as_int() <= 5):
            raise ForeignToken(f"{render_gross(v)} is beyond the exact numerals 1..5")
    elif sys.id in (SystemId.CALCULUS_INFINITY, SystemId.CANTOR):
        if not _is_finite(v):
            raise ForeignToken(f"{render_gross(v)} has no exact numeral in {sys}")
    return ExactToken(v)


def _rank(sys: CountingSystem, t: Token) -> int:
    if isinstance(t, ExactToken):
        return 0
    return 1 + _LADDER[sys.id].index(t)


def weak_add(sys: CountingSystem, a, b) -> Token:
    """Add two of the system's numerals the way the system itself would.

    Exact plus exact is re-observed: the true sum is computed and then read
    back through the instrument, so it degrades to a vague token exactly
    when the sum leaves the exact range (Piraha 2+2 = "many").  Any vague
    token absorbs everything in its own band and below: "many" + 2 =
    "many", aleph0 + 2 = aleph0, C + aleph0 = C.  The undisplayed diagonal
    sums extrapolate the same way (aleph0 + aleph0 = aleph0), matching
    Cantor's cardinal arithmetic.
    """
    a = _require_member(sys, a)
    b = _require_member(sys, b)
    if isinstance(a, ExactToken) and isinstance(b, ExactToken):
        return observe(sys, gnum.add(a.value, b.value)).token
    return a if _rank(sys, a) >= _rank(sys, b) else b


def tokens_equal(a: Token, b: Token) -> bool:
    if isinstance(a, ExactToken) and isinstance(b, ExactToken):
        return gnum.compare(a.value, b.value) is Ordering.EQUAL
    return a == b


def distinguishable(sys: CountingSystem, u, v) -> bool:
    """Can the system tell collections of u and v elements apart?"""
    return not tokens_equal(observe(sys, u).token, observe(sys, v).token)


def token_order(sys: CountingSystem, a: Token, b: Token) -> Ordering:
    """The system's own order on its numerals: exact values first, then the
    vague bands in increasing order.  Observation is monotone under it."""
    ra, rb = _rank(sys, a), _rank(sys, b)
    if ra != rb:
        return Ordering.LESS if ra < rb else Ordering.GREATER
    if isinstance(a, ExactToken):
        return gnum.compare(a.value, b.value)
    return Ordering.EQUAL
