import functools
import re
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parastat.algebra import FAIL, IDENTITY, PASS, Bracket, Gen, Product, ScalarMul, Sum, a, ad
from parastat.coproduct import combine
from parastat.dsl import (CheckRelation, LetBinding, NameBindingError, ParseError, Program, VacuumCheck, Var,
                          load, parse_expr, parse_program, print_expr, print_program, run_program, tokenize)
from parastat.fock import build_boson_set, build_fermion_set

FIXTURES = Path(__file__).parent / "fixtures"
GOOD = sorted((FIXTURES / "pst").glob("*.pst"))
BAD = sorted((FIXTURES / "malformed").glob("*.pst"))


def test_corpus_sizes():
    assert len(GOOD) >= 20 and len(BAD) >= 10


@pytest.mark.parametrize("path", GOOD, ids=lambda p: p.stem)
def test_fixture_round_trip(path):
    prog = load(path)
    text = print_program(prog)
    again = parse_program(text)
    assert again == prog
    assert print_program(again) == text


@pytest.mark.parametrize("path", BAD, ids=lambda p: p.stem)
def test_malformed_positions(path):
    line, col = map(int, re.match(rb"# error (\d+):(\d+)", path.read_bytes()).groups())
    with pytest.raises(ParseError) as info:
        load(path)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}:")


# -- statement mappings ------------------------------------------------------------------


def test_first_trilinear_line():
    (s,) = parse_program("check [a(1), [ad(1), a(1)]+]- == 2 a(1)").statements
    assert s == CheckRelation(Bracket(a(1), Bracket(ad(1), a(1), "+"), "-"), ScalarMul(Fraction(2), a(1)))


def test_vacuum_statement():
    (s,) = parse_program("vacuum a(1) ad(1) == 3").statements
    assert s == VacuumCheck(Product((a(1), ad(1))), Fraction(3))


def test_component_bracket():
    (s,) = parse_program("check [a(1,1), ad(1,2)]+ == 0").statements
    assert s.lhs == Bracket(Gen("a", 1, 1), Gen("ad", 1, 2), "+")
    assert s.rhs == ScalarMul(Fraction(0), IDENTITY)


def test_let_produces_var():
    p = parse_program("let N = ad(1) a(1)\ncheck N == N")
    assert p.statements[0] == LetBinding("N", Product((ad(1), a(1))))
    assert p.statements[1] == CheckRelation(Var("N"), Var("N"))


def test_name_errors():
    with pytest.raises(NameBindingError):
        parse_program("check X == 0")
    with pytest.raises(NameBindingError):
        parse_program("let X = K\nlet X = Kd")


def test_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_program("check [a(1), ad(1)] == 0")
    assert set(info.value.expected) == {"'+'", "'-'"}


# -- precedence -----------------------------------------------------------------------------


def test_juxtaposition_binds_tighter_than_sum():
    assert parse_expr("a(1) ad(1) + K") == Sum((Product((a(1), ad(1))), Gen("K")))


def test_power_binds_tighter_than_product():
    assert parse_expr("K a(1)^2") == Product((Gen("K"), Product((a(1), a(1)))))


def test_coefficient_applies_to_one_factor():
    assert parse_expr("2 a(1) ad(1)") == Product((ScalarMul(Fraction(2), a(1)), ad(1)))


def test_leading_minus_applies_to_first_term():
    assert parse_expr("-a(1) + K") == Sum((ScalarMul(-1, a(1)), Gen("K")))


def test_parentheses_group():
    assert parse_expr("(a(1) + K) ad(1)") == Product((Sum((a(1), Gen("K"))), ad(1)))


def test_semicolon_and_comment():
    p = parse_program("vacuum a(1) == 0; vacuum a(2) == 0  # two checks")
    assert len(p.statements) == 2


def test_tokenizer_positions():
    toks = tokenize("check\n  K")
    assert [(t.kind, t.line, t.col) for t in toks] == [("NAME", 1, 1), ("NL", 1, 6), ("NAME", 2, 3), ("EOF", 2, 4)]


# -- generated programs -----------------------------------------------------------------------

NAMES = ("X", "Y", "Z")


def _rational():
    return st.builds(lambda p, q: f"{p}/{q}" if q != 1 else f"{p}", st.integers(0, 20), st.integers(1, 5))


@functools.lru_cache(maxsize=None)
def _exprs(names):
    leaves = st.one_of(
        st.builds(lambda s, k: f"{s}({k})", st.sampled_from(["a", "ad"]), st.integers(1, 3)),
        st.builds(lambda s, k, al: f"{s}({k}, {al})", st.sampled_from(["a", "ad"]), st.integers(1, 3),
                  st.integers(1, 3)),
        st.sampled_from(["K", "Kd"]),
        *([st.sampled_from(names)] if names else []),
    )

    def extend(inner):
        atom = st.one_of(
            st.builds(lambda x, y, s: f"[{x}, {y}]{s}", inner, inner, st.sampled_from("+-")),
            st.builds(lambda x: f"({x})", inner),
            leaves,
        )
        factor = st.builds(lambda c, x, n: f"{c + ' ' if c else ''}{x}{'^' + str(n) if n else ''}",
                           st.one_of(st.just(""), _rational()), atom, st.sampled_from([0, 0, 1, 2, 3]))
        term = st.lists(factor, min_size=1, max_size=3).map(" ".join)
        return st.builds(lambda neg, ts, ops: ("-" if neg else "") + ts[0] + "".join(
            f" {o} {t}" for o, t in zip(ops, ts[1:])), st.booleans(), st.lists(term, min_size=1, max_size=3),
            st.lists(st.sampled_from("+-"), min_size=2, max_size=2))

    return st.recursive(leaves, extend, max_leaves=8)


@st.composite
def programs(draw):
    lines, bound = [], []
    for _ in range(draw(st.integers(0, 5))):
        kind = draw(st.sampled_from(["let", "check", "vacuum"]))
        if kind == "let" and len(bound) < len(NAMES):
            name = NAMES[len(bound)]
            lines.append(f"let {name} = {draw(_exprs(tuple(bound)))}")
            bound.append(name)
        elif kind == "vacuum":
            neg = "-" if draw(st.booleans()) else ""
            lines.append(f"vacuum {draw(_exprs(tuple(bound)))} == {neg}{draw(_rational())}")
        else:
            lines.append(f"check {draw(_exprs(tuple(bound)))} == {draw(_exprs(tuple(bound)))}")
    return "\n".join(lines)


@settings(max_examples=300, deadline=None)
@given(programs())
def test_generated_round_trip(text):
    prog = parse_program(text)
    printed = print_program(prog)
    assert parse_program(printed) == prog
    assert print_program(parse_program(printed)) == printed


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet=st.sampled_from(list("a d()[],+-^/=;#\nKlet chkvum0123XY\t")), max_size=60))
def test_fuzz_grammar_alphabet(text):
    try:
        assert isinstance(parse_program(text), Program)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1


@settings(max_examples=300, deadline=None)
@given(st.one_of(st.text(max_size=80), st.binary(max_size=80)))
def test_fuzz_arbitrary_input(data):
    try:
        assert isinstance(parse_program(data), Program)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_program("check " + "(" * 5000 + "K" + ")" * 5000 + " == K")


# -- execution ------------------------------------------------------------------------------------


def test_run_trilinear_program_on_two_fermions():
    f = build_fermion_set(1)
    rep = run_program(load(FIXTURES / "pst" / "trilinear_parafermi.pst"), combine(f, f))
    assert [r.status for r in rep.results] == [PASS, PASS, PASS]
    assert all(r.family == "relation-file" for r in rep.results)


def test_run_empty_program():
    rep = run_program(parse_program(""), build_fermion_set(1))
    assert rep.results == [] and rep.summary == {"passed": 0, "failed": 0, "skipped": 0}


def test_run_bad_index_is_a_failed_result():
    f = build_fermion_set(1)
    rep = run_program(parse_program("vacuum a(1,3) == 0\ncheck K Kd == 1"), combine(f, f))
    assert [r.status for r in rep.results] == [FAIL, PASS]
    assert "set index 3" in rep.results[0].message
    assert rep.results[0].name.startswith("line 1:")


def test_run_let_substitution():
    b = build_boson_set(1, 4)
    rep = run_program(load(FIXTURES / "pst" / "let_bindings.pst"), combine(b, b))
    assert [r.status for r in rep.results] == [PASS, PASS]


@pytest.mark.parametrize("name,stats", [("order_two.pst", "bose"), ("rationals.pst", "bose"),
                                        ("green_bose_cross.pst", "bose"), ("green_canonical.pst", "bose"),
                                        ("green_sum.pst", "bose"), ("green_vacuum.pst", "bose"),
                                        ("klein.pst", "bose"), ("green_fermi_cross.pst", "fermi"),
                                        ("semicolons.pst", "fermi")])
def test_fixtures_hold_on_order_two(name, stats):
    base = build_boson_set(1, 4) if stats == "bose" else build_fermion_set(2)
    rep = run_program(load(FIXTURES / "pst" / name), combine(base, base))
    assert rep.ok, rep.to_text()


def test_printer_output_is_readable():
    assert print_expr(parse_expr("-2 a(1) + 1/2 [K, ad(1, 2)]+ - a(1)^2")) == "-2 a(1) + 1/2 [K, ad(1, 2)]+ - a(1)^2"
