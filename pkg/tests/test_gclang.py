"""Parser structure, evaluation semantics, and the render round trip."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grosscalc import errors
from grosscalc.gclang import (
    Bin,
    Call,
    Cmp,
    Let,
    Lit,
    MeasuredSet,
    Name,
    SetLit,
    SignedMeasured,
    Unary,
    default_env,
    eval_text,
    parse,
    render_value,
    type_tag,
)
from grosscalc.gnum import (
    CritRef,
    ExpCount,
    G,
    fin,
    gterm,
    make_poly,
    pow_count,
    sub,
)
from grosscalc.observer import ALEPH0, MANY, Observation, PIRAHA
from grosscalc.posnum import CriticalPair, numeral


class TestParseStructure:
    def test_call_over_progression(self):
        assert parse("card(ap(2,2))") == Call(
            "card", (Call("ap", (Lit(2), Lit(2))),)
        )

    def test_linear_count(self):
        assert parse("2*G + 1") == Bin("+", Bin("*", Lit(2), Name("G")), Lit(1))

    def test_multiplication_binds_before_addition(self):
        assert parse("2*G+1") != parse("2*(G+1)")

    def test_power_is_right_associative(self):
        assert parse("2^3^2") == Bin("^", Lit(2), Bin("^", Lit(3), Lit(2)))

    def test_power_binds_before_unary_minus(self):
        assert parse("-2^2") == Unary("-", Bin("^", Lit(2), Lit(2)))

    def test_unary_minus_allowed_in_exponent(self):
        assert parse("2^-3") == Bin("^", Lit(2), Unary("-", Lit(3)))

    def test_intersection_binds_before_union(self):
        assert parse("{1} | ap(2,2) & N") == Bin(
            "|",
            SetLit((Lit(1),)),
            Bin("&", Call("ap", (Lit(2), Lit(2))), Name("N")),
        )

    def test_arithmetic_binds_before_set_ops(self):
        # the right operand of & takes the whole sum
        tree = parse("N & ap(1,2) \\ {3}")
        assert tree == Bin(
            "\\",
            Bin("&", Name("N"), Call("ap", (Lit(1), Lit(2)))),
            SetLit((Lit(3),)),
        )

    def test_comparison_is_loosest(self):
        tree = parse("card(N) == G")
        assert isinstance(tree, Cmp) and tree.op == "=="

    def test_comparisons_do_not_chain(self):
        with pytest.raises(errors.ParseError):
            parse("1 < 2 < 3")

    def test_circled_one_is_an_alias_for_g(self):
        assert parse("① + 1") == parse("G + 1")

    def test_let_binding(self):
        assert parse("let B1 = ap(4,5)") == Let("B1", Call("ap", (Lit(4), Lit(5))))

    def test_numeral_field_block(self):
        tree = parse('num(10, G){head: "", tail: "1", sign: "-"}')
        assert tree == Call(
            "num", (Lit(10), Name("G")), (("head", ""), ("tail", "1"), ("sign", "-"))
        )

    def test_error_carries_position_and_hint(self):
        with pytest.raises(errors.ParseError) as exc:
            parse("card(ap(2,2)")
        assert exc.value.line == 1
        assert exc.value.col == 13
        assert exc.value.expected == ")"

    def test_trailing_tokens_rejected(self):
        with pytest.raises(errors.ParseError):
            parse("1 + 1 2")

    def test_unknown_character_rejected(self):
        with pytest.raises(errors.ParseError):
            parse("1 $ 2")

    def test_unterminated_string_rejected(self):
        with pytest.raises(errors.ParseError):
            parse('num(10, G){tail: "1}')

    def test_empty_input_rejected(self):
        with pytest.raises(errors.ParseError):
            parse("")

    def test_comments_are_whitespace(self):
        assert parse("1 + 1 # the obvious one") == parse("1+1")


class TestEvaluation:
    def test_measured_counts(self):
        assert eval_text("card(ap(2,2))") == G / 2
        assert eval_text("card(Z)") == 2 * G + 1
        assert eval_text("card(N \\ {7})") == G - 1
        assert eval_text("card({0} | N)") == G + 1
        assert eval_text("prodcard(N, N)") == G**2
        assert eval_text("card({3,4,5,69} | (ap(4,5) & ap(3,11)))") == G / 55 + fin(3)

    def test_numeral_counts(self):
        assert eval_text("numerals(2, G)") == pow_count(2, G)
        assert eval_text("signedcount(10)") == ExpCount(Fraction(2), 10, 2 * G)
        assert eval_text("floatcount(10)") == ExpCount(Fraction(4), 10, 2 * G)

    def test_rational_arithmetic(self):
        assert eval_text("1 + 1") == fin(2)
        assert eval_text("22/7") == fin(Fraction(22, 7))
        assert eval_text("2^-3") == fin(Fraction(1, 8))
        assert eval_text("2^10") == fin(1024)

    def test_power_folds_into_counts(self):
        assert eval_text("2*10^(2*G)") == ExpCount(Fraction(2), 10, 2 * G)
        assert eval_text("10^G - 1") == sub(pow_count(10, G), fin(1))
        assert eval_text("G^G") == gterm(1, G)
        assert eval_text("(G^2)^G") == gterm(1, 2 * G)
        assert eval_text("(G+1)^2") == (G + 1) ** 2
        assert eval_text("1^G") == fin(1)
        assert eval_text("0^G") == fin(0)

    def test_critical_lengths(self):
        pair = eval_text("critical(10, G)")
        assert isinstance(pair, CriticalPair)
        assert eval_text("crit(10, G)") == CritRef(10, G, 0)
        assert eval_text("crit(10, G) + 1") == CritRef(10, G, 1)
        assert eval_text("crit(10, G) - 2") == CritRef(10, G, -2)
        assert eval_text("10^(crit(10, G) + 1)") == pow_count(10, CritRef(10, G, 1))
        assert eval_text("numerals(10, crit(10, G))") == pow_count(10, CritRef(10, G, 0))

    def test_comparisons(self):
        assert eval_text("2^G < 10^G") is True
        assert eval_text("G - 1 < G") is True
        assert eval_text("G^2 >= 2*G + 1") is True
        assert eval_text("card(ap(2,2)) == G/2") is True
        assert eval_text("ap(2,2) == N \\ ap(1,2)") is True
        assert eval_text("N == Z") is False

    def test_set_values_are_dual_route(self):
        v = eval_text("{3,4,5,69} | (ap(4,5) & ap(3,11))")
        assert isinstance(v, MeasuredSet)
        assert v.expr.contains(14) and not v.expr.contains(15)
        assert v.record.contains(14) and not v.record.contains(15)

    def test_signed_lift(self):
        v = eval_text("{-2, -1, 0, 1}")
        assert isinstance(v, SignedMeasured)
        assert v.record.contains(-2) and v.record.contains(0)
        assert not v.record.contains(2)
        assert eval_text("card({-2, -1, 0, 1})") == fin(4)

    def test_members_and_first(self):
        assert eval_text("members(ap(4,5), 3)") == (4, 9, 14)
        chain = eval_text("first(10, G, 2)")
        assert [x.tail for x in chain] == [(), (1,)]

    def test_observations(self):
        obs = eval_text("observe(piraha, card(N))")
        assert obs == Observation(PIRAHA, MANY)
        assert eval_text("wadd(cantor, aleph0, 1)") is ALEPH0
        assert eval_text("distinct(munduruku, 3, 4)") is True
        assert eval_text("wadd(piraha, 1, 1)").value == fin(2)

    def test_numeral_construction(self):
        v = eval_text('num(10, G){tail: "1"}')
        assert v == numeral(10, G, tail=(1,))
        assert eval_text('num(10, 3){head: "102"}') == numeral(10, 3, head=(1, 0, 2))
        assert eval_text('succ(num(10, G))') == numeral(10, G, tail=(1,))
        assert eval_text('pred(succ(num(2, G)))') == numeral(2, G)

    def test_substitution(self):
        assert eval_text("subst(card(ap(2,2)), 27720)") == fin(13860)
        assert eval_text("subst(numerals(2, G), 10)") == fin(1024)
        assert eval_text("subst(crit(10, G), 1000000)") == fin(6)

    def test_let_persists_in_the_environment(self):
        env = default_env()
        eval_text("let B1 = ap(4,5)", env)
        eval_text("let B2 = ap(3,11)", env)
        assert eval_text("card({3,4,5,69} | (B1 & B2))", env) == G / 55 + fin(3)

    def test_let_rejects_reserved_names(self):
        for name in ("G", "N", "card", "true", "aleph0", "let"):
            with pytest.raises(errors.EvalError):
                eval_text(f"let {name} = 1")

    def test_unbound_identifier(self):
        with pytest.raises(errors.UnboundIdentifier):
            eval_text("card(B9)")
        with pytest.raises(errors.UnboundIdentifier):
            eval_text("frobnicate(1)")

    def test_arity_is_checked(self):
        with pytest.raises(errors.EvalError):
            eval_text("card()")
        with pytest.raises(errors.EvalError):
            eval_text("card(N, N)")

    def test_type_errors_are_diagnosed(self):
        with pytest.raises(errors.EvalError):
            eval_text("N + 1")
        with pytest.raises(errors.EvalError):
            eval_text("~G")
        with pytest.raises(errors.EvalError):
            eval_text("2 | 3")
        with pytest.raises(errors.EvalError):
            eval_text("card(N) == true")
        with pytest.raises(errors.EvalError):
            eval_text("crit(10, G) * 2")

    def test_library_errors_propagate(self):
        with pytest.raises(errors.DivisionByZero):
            eval_text("G/0")
        with pytest.raises(errors.Undetermined):
            eval_text("numerals(10, crit(10, G)) < G/2")
        with pytest.raises(errors.ForeignToken):
            eval_text("wadd(piraha, aleph0, 1)")
        with pytest.raises(errors.NegativeCount):
            eval_text("observe(cantor, 0 - G)")

    def test_set_literal_elements_must_be_finite(self):
        with pytest.raises(errors.EvalError):
            eval_text("{G}")
        with pytest.raises(errors.EvalError):
            eval_text("{1/2}")


ROUND_TRIP_CORPUS = (
    "card(ap(2,2))",
    "card(Z)",
    "card(N \\ {7})",
    "card({0} | N)",
    "prodcard(N, N)",
    "card({3,4,5,69} | (ap(4,5) & ap(3,11)))",
    "numerals(2, G)",
    "numerals(10, G)",
    "numerals(10, G/2)",
    "numerals(10, crit(10, G))",
    "10^(crit(10, G) + 1)",
    "signedcount(10)",
    "floatcount(10)",
    "10^G - 1",
    "10^G + G - 1",
    "3*10^G/7",
    "G^G",
    "G^2 - G/2",
    "2*G + 1",
    "0",
    "-5",
    "22/7",
    "-G + 1",
    "G - 1000000",
    "crit(2, G^2) - 3",
    "N",
    "Z",
    "{}",
    "ap(2,2)",
    "~ap(1,2)",
    "ap(1, 2) \\ {3, 5}",
    "{3,4,5,69} | (ap(4,5) & ap(3,11))",
    "N \\ {1000000}",
    "{0} | N",
    "mirror(ap(2,2)) | {0} | ap(2,2)",
    "Z \\ {0}",
    "{-4, -2, 7}",
    "2^G < 10^G",
    "G < 2^G",
    "card(N) == G",
    "1 < 1",
    "distinct(piraha, 3, 4)",
)


class TestRoundTrip:
    @pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
    def test_render_reparses_to_an_equal_value(self, text):
        value = eval_text(text)
        rendered = render_value(value)
        again = eval_text(rendered)
        assert again == value
        assert render_value(again) == rendered

    def test_round_trip_preserves_the_dual_route(self):
        value = eval_text("~(ap(4,5) | {2})")
        again = eval_text(render_value(value))
        for x in range(1, 60):
            assert again.expr.contains(x) == value.expr.contains(x)


# random linear counts a*G + b and quadratics exercise the renderer's
# sign and fraction placement
_coeff = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=9
)


@given(_coeff, _coeff, _coeff)
def test_round_trip_on_random_polynomials(a, b, c):
    value = make_poly([(a, fin(2)), (b, fin(1)), (c, fin(0))])
    rendered = render_value(value)
    assert eval_text(rendered) == value


_TOKENS = st.sampled_from(
    ["G", "N", "Z", "card", "ap", "(", ")", "{", "}", ",", "+", "-", "*",
     "/", "^", "|", "&", "\\", "~", "<", "<=", "==", ">=", ">", "0", "1",
     "2", "55", "num", "crit", "subst", "let", "=", '"12"', ":", "head"]
)


@given(st.lists(_TOKENS, max_size=14))
def test_no_input_escapes_the_diagnostic_net(pieces):
    text = " ".join(pieces)
    try:
        eval_text(text)
    except errors.GrossError:
        pass


@given(st.text(max_size=40))
def test_arbitrary_text_never_crashes_the_tokenizer(text):
    try:
        eval_text(text)
    except errors.GrossError:
        pass


class TestTypeTags:
    def test_tags(self):
        cases = (
            ("card(N)", "count"),
            ("crit(10, G)", "critical_length"),
            ("ap(2,2)", "set"),
            ("Z", "signed_set"),
            ("num(10, G)", "numeral"),
            ("critical(10, G)", "critical_pair"),
            ("observe(piraha, 9)", "observation"),
            ("wadd(cantor, aleph0, 1)", "token"),
            ("piraha", "system"),
            ("1 < 2", "bool"),
            ("members(N, 2)", "sequence"),
        )
        for text, tag in cases:
            assert type_tag(eval_text(text)) == tag, text
