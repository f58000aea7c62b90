"""The calculator's expression language: parser, evaluator, renderer.

Grammar, loosest binding first:

    stmt    := 'let' IDENT '=' expr | expr
    expr    := union (CMP union)?              CMP: < <= == >= >
    union   := inter (('|' | '\\') inter)*
    inter   := sum ('&' sum)*
    sum     := product (('+' | '-') product)*
    product := prefix (('*' | '/') prefix)*
    prefix  := ('-' | '~') prefix | power
    power   := atom ('^' prefix)?
    atom    := INT | '(' expr ')' | '{' [expr (',' expr)*] '}'
             | IDENT '(' args ')' fields? | IDENT

Comparisons do not chain.  The glyph `①` reads as the identifier `G`.
The `fields` block is a brace-suffixed record accepted only by `num`,
carrying digit strings: num(10, G){head: "", tail: "1", sign: "-"}.

Evaluation produces plain library values plus two wrappers, MeasuredSet
and SignedMeasured, which carry a set both as its canonical residue
record and as the expression tree it was built from.  The record answers
algebraic questions (cardinality, rendering); the tree answers
extensional ones (membership, finite enumeration), so every measurement
stays checkable against brute force.  The two are never merged.

Canonical rendering is inverse to the parser on calculator values:
re-parsing a rendered count, set, or boolean evaluates to an equal value.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from . import gnum, observer, oracle, posnum, setmeasure
from .errors import (
    DivisionByZero,
    EvalError,
    ExponentTooLarge,
    NonIntegerExponent,
    ParseError,
    UnboundIdentifier,
    UnsupportedPower,
)
from .gnum import (
    CritRef,
    ExpCount,
    GrossNumber,
    GrossPoly,
    Ordering,
    fin,
    render_critref,
    render_gross,
)
from .observer import (
    CountingSystem,
    ExactToken,
    NamedToken,
    Observation,
    tokens_equal,
)
from .setmeasure import (
    EMPTY_E,
    INTEGERS,
    NATURALS,
    UNIVERSE_Z_E,
    ComplementE,
    CombineE,
    FiniteSetE,
    NatSubset,
    ProgressionE,
    SetExpr,
    SetOp,
    SignedExprE,
    SignedSet,
    UniverseNE,
    render_nat,
    render_signed,
)


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Ast"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Cmp:
    op: str
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class SetLit:
    elems: Tuple["Ast", ...]


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Ast", ...]
    fields: Tuple[Tuple[str, str], ...] = ()


@dataclass(frozen=True)
class Let:
    name: str
    value: "Ast"


Ast = Union[Lit, Name, Unary, Bin, Cmp, SetLit, Call, Let]


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class _Tok:
    kind: str  # INT, IDENT, STR, OP, EOF
    text: str
    line: int
    col: int


_DIGITS = "0123456789"
_TWO_CHAR = ("<=", ">=", "==")
_ONE_CHAR = set("()+-*/^<>&|\\~{},:=")


def _tokenize(text: str):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        at = col
        if c == "①":  # ①, the circled-one glyph
            toks.append(_Tok("IDENT", "G", line, at))
            i += 1
            col += 1
            continue
        if c in _DIGITS:
            j = i
            while j < n and text[j] in _DIGITS:
                j += 1
            toks.append(_Tok("INT", text[i:j], line, at))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("IDENT", text[i:j], line, at))
            col += j - i
            i = j
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] not in ('"', "\n"):
                j += 1
            if j >= n or text[j] == "\n":
                raise ParseError("unterminated string", line, at, '"')
            toks.append(_Tok("STR", text[i + 1 : j], line, at))
            col += j - i + 1
            i = j + 1
            continue
        if text[i : i + 2] in _TWO_CHAR:
            toks.append(_Tok("OP", text[i : i + 2], line, at))
            i += 2
            col += 2
            continue
        if c in _ONE_CHAR:
            toks.append(_Tok("OP", c, line, at))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, at)
    toks.append(_Tok("EOF", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parser

_COMPARATORS = ("<", "<=", "==", ">=", ">")


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, *texts) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text in texts

    @staticmethod
    def describe(t: _Tok) -> str:
        return "end of input" if t.kind == "EOF" else f"{t.text!r}"

    def expect(self, kind: str, text: Optional[str] = None, expected: str = ""):
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = expected or (text if text is not None else kind.lower())
            raise ParseError(f"unexpected {self.describe(t)}", t.line, t.col, want)
        return self.advance()

    def statement(self) -> Ast:
        t = self.peek()
        if t.kind == "IDENT" and t.text == "let":
            self.advance()
            name = self.expect("IDENT", expected="identifier").text
            self.expect("OP", "=")
            node: Ast = Let(name, self.expr())
        else:
            node = self.expr()
        tail = self.peek()
        if tail.kind != "EOF":
            raise ParseError(
                f"unexpected {self.describe(tail)} after expression",
                tail.line,
                tail.col,
                "end of input",
            )
        return node

    def expr(self) -> Ast:
        left = self.union()
        if self.at_op(*_COMPARATORS):
            op = self.advance().text
            right = self.union()
            t = self.peek()
            if t.kind == "OP" and t.text in _COMPARATORS:
                raise ParseError("comparisons do not chain", t.line, t.col, "end of input")
            return Cmp(op, left, right)
        return left

    def union(self) -> Ast:
        node = self.inter()
        while self.at_op("|", "\\"):
            op = self.advance().text
            node = Bin(op, node, self.inter())
        return node

    def inter(self) -> Ast:
        node = self.sum()
        while self.at_op("&"):
            self.advance()
            node = Bin("&", node, self.sum())
        return node

    def sum(self) -> Ast:
        node = self.product()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = Bin(op, node, self.product())
        return node

    def product(self) -> Ast:
        node = self.prefix()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = Bin(op, node, self.prefix())
        return node

    def prefix(self) -> Ast:
        if self.at_op("-", "~"):
            op = self.advance().text
            return Unary(op, self.prefix())
        return self.power()

    def power(self) -> Ast:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            return Bin("^", base, self.prefix())
        return base

    def atom(self) -> Ast:
        t = self.advance()
        if t.kind == "INT":
            return Lit(int(t.text))
        if t.kind == "IDENT":
            if self.at_op("("):
                return self.call(t)
            return Name(t.text)
        if t.kind == "OP" and t.text == "(":
            node = self.expr()
            self.expect("OP", ")")
            return node
        if t.kind == "OP" and t.text == "{":
            elems = []
            if not self.at_op("}"):
                elems.append(self.expr())
                while self.at_op(","):
                    self.advance()
                    elems.append(self.expr())
            self.expect("OP", "}")
            return SetLit(tuple(elems))
        raise ParseError(f"unexpected {self.describe(t)}", t.line, t.col, "expression")

    def call(self, name: _Tok) -> Ast:
        self.expect("OP", "(")
        args = []
        if not self.at_op(")"):
            args.append(self.expr())
            while self.at_op(","):
                self.advance()
                args.append(self.expr())
        self.expect("OP", ")")
        fields: Tuple[Tuple[str, str], ...] = ()
        if name.text == "num" and self.at_op("{"):
            fields = self.field_block()
        return Call(name.text, tuple(args), fields)

    def field_block(self):
        self.expect("OP", "{")
        pairs = []
        if not self.at_op("}"):
            while True:
                key = self.expect("IDENT", expected="field name").text
                self.expect("OP", ":")
                value = self.expect("STR", expected="quoted digits").text
                pairs.append((key, value))
                if self.at_op(","):
                    self.advance()
                    continue
                break
        self.expect("OP", "}")
        return tuple(pairs)


def parse(text: str) -> Ast:
    return _Parser(_tokenize(text)).statement()


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True, eq=False)
class MeasuredSet:
    """A subset of the naturals kept on both bookkeeping routes: the
    canonical residue record and the expression tree it came from."""

    record: NatSubset
    expr: SetExpr

    def __eq__(self, other):
        if isinstance(other, MeasuredSet):
            return self.record == other.record
        return NotImplemented

    def __hash__(self):
        return hash(self.record)

    def __repr__(self):
        return f"MeasuredSet<{render_nat(self.record)}>"


@dataclass(frozen=True, eq=False)
class SignedMeasured:
    """A subset of the integers, dual-route like MeasuredSet."""

    record: SignedSet
    expr: SignedExprE

    def __eq__(self, other):
        if isinstance(other, SignedMeasured):
            return self.record == other.record
        return NotImplemented

    def __hash__(self):
        return hash(self.record)

    def __repr__(self):
        return f"SignedMeasured<{render_signed(self.record)}>"


Value = object

_SET_OPS = {"|": SetOp.UNION, "&": SetOp.INTERSECT, "\\": SetOp.DIFFERENCE}


def default_env() -> Dict[str, Value]:
    env: Dict[str, Value] = {
        "G": gnum.G,
        "N": MeasuredSet(NATURALS, UniverseNE()),
        "Z": SignedMeasured(INTEGERS, UNIVERSE_Z_E),
        "true": True,
        "false": False,
        "piraha": observer.PIRAHA,
        "munduruku": observer.MUNDURUKU,
        "calculus": observer.CALCULUS_INFINITY,
        "cantor": observer.CANTOR,
        "grossone": observer.GROSSONE_SYSTEM,
        "many": observer.MANY,
        "some_not_many": observer.SOME_NOT_MANY,
        "many_really_many": observer.MANY_REALLY_MANY,
        "inf": observer.INFINITY,
        "aleph0": observer.ALEPH0,
        "C": observer.CONTINUUM,
    }
    return env


_BUILTINS = frozenset(default_env()) | {"let"}


# argument validation helpers; every message names the offending argument


def _is_number(v) -> bool:
    return isinstance(v, (GrossPoly, ExpCount))


def _want_number(v, what: str) -> GrossNumber:
    if not _is_number(v):
        raise EvalError(f"{what} must be a count, got {type_tag(v)}")
    return v


def _want_int(v, what: str, minimum: Optional[int] = None) -> int:
    n = v.as_int() if isinstance(v, GrossPoly) else None
    if n is None:
        raise EvalError(f"{what} must be a finite integer, got {render_value(v)}")
    if minimum is not None and n < minimum:
        raise EvalError(f"{what} must be at least {minimum}, got {n}")
    return n


def _want_nat_set(v, what: str) -> MeasuredSet:
    if isinstance(v, SignedMeasured):
        raise EvalError(f"{what} must be a subset of N, not of Z")
    if not isinstance(v, MeasuredSet):
        raise EvalError(f"{what} must be a set, got {type_tag(v)}")
    return v

def _want_numeral(v, what: str) -> posnum.InfNumeral:
    if not isinstance(v, posnum.InfNumeral):
        raise EvalError(f"{what} must be a numeral, got {type_tag(v)}")
    return v


def _want_system(v) -> CountingSystem:
    if not isinstance(v, CountingSystem):
        raise EvalError(f"expected a counting system, got {type_tag(v)}")
    return v


def _as_signed(v) -> Tuple[SignedSet, SignedExprE]:
    if isinstance(v, SignedMeasured):
        return v.record, v.expr
    return setmeasure.lift_signed(v.record), setmeasure.lift_signed_expr(v.expr)


def _digit_tuple(text: str, what: str) -> Tuple[int, ...]:
    out = []
    for ch in text:
        if ch not in _DIGITS:
            raise EvalError(f"{what} must contain digits only, got {ch!r}")
        out.append(int(ch))
    return tuple(out)


# call dispatch; arity is checked before evaluation reaches the handlers


def _call_card(s):
    if isinstance(s, MeasuredSet):
        return setmeasure.card(s.record)
    if isinstance(s, SignedMeasured):
        return setmeasure.card_signed(s.record)
    raise EvalError(f"card expects a set, got {type_tag(s)}")


def _call_members(s, n):
    s = _want_nat_set(s, "the first argument of members")
    return setmeasure.members(s.record, _want_int(n, "the member count", minimum=1))


def _call_prodcard(s, t):
    s = _want_nat_set(s, "the first argument of prodcard")
    t = _want_nat_set(t, "the second argument of prodcard")
    return setmeasure.product_card(s.record, t.record)


def _call_ap(first, step):
    a = _want_int(first, "the progression start", minimum=1)
    d = _want_int(step, "the progression step", minimum=1)
    return MeasuredSet(setmeasure.progression(a, d), ProgressionE(a, d))


def _call_mirror(s):
    s = _want_nat_set(s, "the argument of mirror")
    return SignedMeasured(
        SignedSet(s.record, False, setmeasure.EMPTY),
        SignedExprE(s.expr, False, EMPTY_E),
    )


def _call_numerals(base, length):
    b = _want_int(base, "the numeral base", minimum=2)
    if isinstance(length, CritRef):
        return gnum.pow_count(b, length)
    return posnum.numeral_count(b, _want_number(length, "the digit length"))


def _call_signedcount(base):
    return posnum.signed_line_count(_want_int(base, "the numeral base", minimum=2))


def _call_floatcount(base):
    return posnum.float_count(_want_int(base, "the numeral base", minimum=2))


def _call_critical(base, target):
    b = _want_int(base, "the numeral base", minimum=2)
    return posnum.critical(b, _want_number(target, "the target count"))


def _call_crit(base, target):
    return _call_critical(base, target).k1


def _call_succ(x):
    return posnum.successor(_want_numeral(x, "the argument of succ"))


def _call_pred(x):
    return posnum.predecessor(_want_numeral(x, "the argument of pred"))


def _call_first(base, length, n):
    b = _want_int(base, "the numeral base", minimum=2)
    length = _want_number(length, "the digit length")
    n = _want_int(n, "the chain length", minimum=1)
    return posnum.enumerate_first(b, length, n)


def _call_observe(sys, v):
    return observer.observe(_want_system(sys), _want_number(v, "the observed count"))


def _weak_operand(v):
    if isinstance(v, Observation):
        return v.token
    if isinstance(v, (ExactToken, NamedToken)) or _is_number(v):
        return v
    raise EvalError(f"expected a numeral token or count, got {type_tag(v)}")


def _call_wadd(sys, a, b):
    return observer.weak_add(_want_system(sys), _weak_operand(a), _weak_operand(b))


def _call_distinct(sys, u, v):
    return observer.distinguishable(
        _want_system(sys),
        _want_number(u, "the first count"),
        _want_number(v, "the second count"),
    )


def _call_subst(x, point):
    if not isinstance(x, CritRef):
        x = _want_number(x, "the expression to substitute")
    return fin(oracle.subst(x, _want_int(point, "the substitution point", minimum=1)))


_CALLS = {
    "card": (1, _call_card),
    "members": (2, _call_members),
    "prodcard": (2, _call_prodcard),
    "ap": (2, _call_ap),
    "mirror": (1, _call_mirror),
    "numerals": (2, _call_numerals),
    "signedcount": (1, _call_signedcount),
    "floatcount": (1, _call_floatcount),
    "critical": (2, _call_critical),
    "crit": (2, _call_crit),
    "num": (2, None),  # handled inline: takes the field block
    "succ": (1, _call_succ),
    "pred": (1, _call_pred),
    "first": (3, _call_first),
    "observe": (2, _call_observe),
    "wadd": (3, _call_wadd),
    "distinct": (3, _call_distinct),
    "subst": (2, _call_subst),
}


def _call_num(args, fields):
    base = _want_int(args[0], "the numeral base", minimum=2)
    length = _want_number(args[1], "the digit length")
    head: Tuple[int, ...] = ()
    tail: Tuple[int, ...] = ()
    sign = ""
    for key, text in fields:
        if key == "head":
            head = _digit_tuple(text, "head")
        elif key == "tail":
            tail = _digit_tuple(text, "tail")
        elif key == "sign":
            if text not in ("", "+", "-"):
                raise EvalError(f'sign must be "", "+" or "-", got {text!r}')
            sign = text
        else:
            raise EvalError(f"num has no field {key!r}")
    return posnum.numeral(base, length, head=head, tail=tail, sign=sign)


# operator semantics


def _eval_pow(base, exp):
    if isinstance(exp, CritRef):
        return gnum.pow_count(_want_int(base, "the base of a critical power"), exp)
    base = _want_number(base, "the base of ^")
    exp = _want_number(exp, "the exponent")
    if isinstance(base, GrossPoly):
        r = base.as_rational()
        if r is not None:
            # numeric base: delegate finite cases to exact rational
            # arithmetic, infinite exponents to the counting closure
            if isinstance(exp, GrossPoly) and exp.as_rational() is not None:
                k = exp.as_int()
                if k is None:
                    raise NonIntegerExponent("finite exponents must be integers")
                if r == 0 and k < 0:
                    raise DivisionByZero("0 cannot be raised to a negative power")
                bits = max(abs(r.numerator), r.denominator).bit_length()
                if bits * abs(k) > gnum.MATERIALIZE_BIT_CAP:
                    raise ExponentTooLarge(f"{r}^{k} will not be materialized")
                return fin(r**k)
            if r == 1:
                return gnum.ONE
            if r == 0:
                return gnum.ZERO
            if r.denominator == 1 and r >= 2:
                return gnum.pow_count(int(r), exp)
            raise UnsupportedPower(
                f"{render_gross(base)} has no closed power for an infinite exponent"
            )
        coeff, inner = base.leading()
        if len(base.terms) == 1 and coeff == 1:
            # a pure power of G: exponents multiply
            return gnum.gterm(1, gnum.mul(inner, exp))
        return _repeated_power(base, exp)
    return _repeated_power(base, exp)


_POW_UNROLL_LIMIT = 512


def _repeated_power(base, exp):
    k = exp.as_int() if isinstance(exp, GrossPoly) else None
    if k is None or k < 0:
        raise UnsupportedPower(
            f"{render_gross(base)} only takes finite non-negative integer powers"
        )
    if k > _POW_UNROLL_LIMIT:
        raise ExponentTooLarge(f"power {k} of {render_gross(base)} will not be unrolled")
    out = gnum.ONE
    for _ in range(k):
        out = gnum.mul(out, base)
    return out


def _eval_arith(op, a, b):
    if isinstance(a, CritRef) or isinstance(b, CritRef):
        # critical lengths shift by finite integers and nothing else
        if op == "+" and isinstance(b, CritRef) and not isinstance(a, CritRef):
            a, b = b, a
        if op in ("+", "-") and isinstance(a, CritRef) and not isinstance(b, CritRef):
            n = _want_int(b, "the critical-length shift")
            return CritRef(a.base, a.target, a.offset + (n if op == "+" else -n))
        raise EvalError("critical lengths only shift by finite integers")
    if isinstance(a, (MeasuredSet, SignedMeasured)) or isinstance(
        b, (MeasuredSet, SignedMeasured)
    ):
        raise EvalError(f"{op} does not apply to sets; use | & \\ ~")
    a = _want_number(a, f"the left operand of {op}")
    b = _want_number(b, f"the right operand of {op}")
    if op == "+":
        return gnum.add(a, b)
    if op == "-":
        return gnum.sub(a, b)
    if op == "*":
        return gnum.mul(a, b)
    return gnum.div_exact(a, b)


def _eval_setop(op, a, b):
    for side in (a, b):
        if not isinstance(side, (MeasuredSet, SignedMeasured)):
            raise EvalError(f"{op} expects sets, got {type_tag(side)}")
    if isinstance(a, MeasuredSet) and isinstance(b, MeasuredSet):
        return MeasuredSet(
            setmeasure.combine(_SET_OPS[op], a.record, b.record),
            CombineE(_SET_OPS[op], a.expr, b.expr),
        )
    (ra, ea), (rb, eb) = _as_signed(a), _as_signed(b)
    return SignedMeasured(
        setmeasure.combine_signed(_SET_OPS[op], ra, rb),
        setmeasure.combine_signed_expr(_SET_OPS[op], ea, eb),
    )


_VERDICTS = {
    "<": (Ordering.LESS,),
    "<=": (Ordering.LESS, Ordering.EQUAL),
    "==": (Ordering.EQUAL,),
    ">=": (Ordering.GREATER, Ordering.EQUAL),
    ">": (Ordering.GREATER,),
}


def _eval_cmp(op, a, b):
    if _is_number(a) and _is_number(b):
        return gnum.compare(a, b) in _VERDICTS[op]
    if isinstance(a, posnum.InfNumeral) and isinstance(b, posnum.InfNumeral):
        return posnum.compare_numerals(a, b) in _VERDICTS[op]
    if op == "==":
        if isinstance(a, (MeasuredSet, SignedMeasured)) and isinstance(
            b, (MeasuredSet, SignedMeasured)
        ):
            if type(a) is type(b):
                return a == b
            return _as_signed(a)[0] == _as_signed(b)[0]
        if isinstance(a, (ExactToken, NamedToken)) and isinstance(
            b, (ExactToken, NamedToken)
        ):
            return tokens_equal(a, b)
        if isinstance(a, Observation) and isinstance(b, Observation):
            return a.system == b.system and tokens_equal(a.token, b.token)
        if isinstance(a, bool) and isinstance(b, bool):
            return a is b
    raise EvalError(f"cannot compare {type_tag(a)} and {type_tag(b)} with {op}")


def _eval_set_literal(elems):
    negatives, has_zero, positives = set(), False, set()
    for v in elems:
        n = _want_int(v, "a set element")
        if n > 0:
            positives.add(n)
        elif n == 0:
            has_zero = True
        else:
            negatives.add(-n)
    pos = MeasuredSet(
        setmeasure.finite_set(positives), FiniteSetE(frozenset(positives))
    )
    if not negatives and not has_zero:
        return pos
    return SignedMeasured(
        SignedSet(setmeasure.finite_set(negatives), has_zero, pos.record),
        SignedExprE(FiniteSetE(frozenset(negatives)), has_zero, pos.expr),
    )


def evaluate(ast: Ast, env: Dict[str, Value]) -> Value:
    """Evaluate under env; a let-statement also binds its name there."""
    if isinstance(ast, Let):
        if ast.name in _BUILTINS or ast.name in _CALLS:
            raise EvalError(f"{ast.name!r} is reserved")
        value = evaluate(ast.value, env)
        env[ast.name] = value
        return value
    if isinstance(ast, Lit):
        return fin(ast.value)
    if isinstance(ast, Name):
        try:
            return env[ast.ident]
        except KeyError:
            raise UnboundIdentifier(f"unbound identifier {ast.ident!r}") from None
    if isinstance(ast, Unary):
        v = evaluate(ast.operand, env)
        if ast.op == "-":
            return gnum.neg(_want_number(v, "the operand of unary -"))
        if isinstance(v, MeasuredSet):
            return MeasuredSet(setmeasure.complement(v.record), ComplementE(v.expr))
        if isinstance(v, SignedMeasured):
            return SignedMeasured(
                setmeasure.complement_signed(v.record),
                setmeasure.complement_signed_expr(v.expr),
            )
        raise EvalError(f"~ expects a set, got {type_tag(v)}")
    if isinstance(ast, Bin):
        a = evaluate(ast.left, env)
        b = evaluate(ast.right, env)
        if ast.op == "^":
            return _eval_pow(a, b)
        if ast.op in _SET_OPS:
            return _eval_setop(ast.op, a, b)
        return _eval_arith(ast.op, a, b)
    if isinstance(ast, Cmp):
        return _eval_cmp(ast.op, evaluate(ast.left, env), evaluate(ast.right, env))
    if isinstance(ast, SetLit):
        return _eval_set_literal([evaluate(e, env) for e in ast.elems])
    if isinstance(ast, Call):
        if ast.func not in _CALLS:
            raise UnboundIdentifier(f"unknown function {ast.func!r}")
        arity, handler = _CALLS[ast.func]
        if len(ast.args) != arity:
            raise EvalError(
                f"{ast.func} takes {arity} argument{'s' if arity != 1 else ''}, "
                f"got {len(ast.args)}"
            )
        args = [evaluate(a, env) for a in ast.args]
        if ast.func == "num":
            return _call_num(args, ast.fields)
        return handler(*args)
    raise EvalError(f"unexpected syntax node {ast!r}")


def eval_text(text: str, env: Optional[Dict[str, Value]] = None) -> Value:
    if env is None:
        env = default_env()
    return evaluate(parse(text), env)


def card_source(ast: Ast, env: Dict[str, Value]):
    """The set expression behind a cardinality result, when there is one.

    For `card(S)` (also behind a let) this re-evaluates S and hands back
    its expression tree, so a finite-substitution check can count the set
    extensionally instead of trusting the algebraic route.
    """
    if isinstance(ast, Let):
        return card_source(ast.value, env)
    if isinstance(ast, Call) and ast.func == "card" and len(ast.args) == 1:
        v = evaluate(ast.args[0], env)
        if isinstance(v, (MeasuredSet, SignedMeasured)):
            return v.expr
    return None


# ---------------------------------------------------------------------------
# rendering


def render_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if _is_number(v):
        return render_gross(v)
    if isinstance(v, CritRef):
        return render_critref(v)
    if isinstance(v, MeasuredSet):
        return render_nat(v.record)
    if isinstance(v, SignedMeasured):
        return render_signed(v.record)
    if isinstance(v, posnum.InfNumeral):
        return posnum.render_numeral(v)
    if isinstance(v, posnum.CriticalPair):
        return posnum.render_critical_pair(v)
    if isinstance(v, (Observation, ExactToken, NamedToken, CountingSystem)):
        return str(v)
    if isinstance(v, tuple):
        return "[" + ", ".join(render_value(x) for x in v) + "]"
    return repr(v)


def type_tag(v: Value) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if _is_number(v):
        return "count"
    if isinstance(v, CritRef):
        return "critical_length"
    if isinstance(v, MeasuredSet):
        return "set"
    if isinstance(v, SignedMeasured):
        return "signed_set"
    if isinstance(v, posnum.InfNumeral):
        return "numeral"
    if isinstance(v, posnum.CriticalPair):
        return "critical_pair"
    if isinstance(v, Observation):
        return "observation"
    if isinstance(v, (ExactToken, NamedToken)):
        return "token"
    if isinstance(v, CountingSystem):
        return "system"
    if isinstance(v, tuple):
        return "sequence"
    return type(v).__name__
