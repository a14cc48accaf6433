"""Acceptance criteria, one test (or a small group) per criterion, each under its runtime limit."""

import itertools
import re
import time
from pathlib import Path

import pytest

from parastat.algebra import (PASS, Bracket, Gen, Product, ScalarMul, Sum, a, ad, apply_expr, evaluate, klein,
                              safe_columns, vacuum_eigencheck, vacuum_expectation, vacuum_generated_subspace,
                              word_profile)
from parastat.coproduct import check_coassociativity, combine, combine_many
from parastat.dsl import ParseError, load, parse_program, print_program
from parastat.fock import Statistics, build_boson_set, build_fermion_set, build_parafermion_oracle
from parastat.suites import (SuiteConfig, build_context, suite_exclusion, suite_green, suite_klein, suite_order,
                             suite_trilinear, trilinear_relations)

FIXTURES = Path(__file__).parent / "fixtures"


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def all_pass(results):
    bad = [r for r in results if r.status != PASS]
    assert not bad, [(r.name, r.status, r.message) for r in bad[:5]]


@pytest.mark.criterion(1, "coproduct closure: trilinear and Klein relations, parafermi n=2 r=2")
def test_coproduct_closure():
    with Clock(5):
        f = build_fermion_set(2)
        rep = combine(f, f)
        assert rep.dim == 16
        res = suite_trilinear(rep) + suite_klein(rep)
        all_pass(res)
        assert len(res) == 3 * 8 + 2 + 4 * 2
        assert all(r.checked_columns == 16 for r in res)


@pytest.mark.criterion(2, "order addition: vacuum eigenvalues 2 and 3, zero off the diagonal")
@pytest.mark.parametrize("stats", ["parabose", "parafermi"])
def test_order_addition(stats):
    with Clock(10):
        for orders, want in (((1, 1), 2), ((1, 1, 1), 3)):
            cutoff = 5 if stats == "parabose" else None
            _, ctx = build_context(SuiteConfig(stats, 2, orders, cutoff, ()))
            for k, l in itertools.product((1, 2), repeat=2):
                got = apply_expr(Product((a(k), ad(l))), ctx, ctx.vacuum())
                assert got == ({0: want} if k == l else {})
            res = suite_order(ctx, want)
            all_pass(res)


@pytest.mark.criterion(3, "Green ansatz p=3: canonical, cross-set and vacuum relations of the components")
def test_green_ansatz_parabose():
    with Clock(60):
        b = build_boson_set(2, 4)
        rep = combine_many([b, b, b])
        res = suite_green(rep)
        all_pass(res)
        fams = {r.family for r in res}
        assert {"green-canonical", "green-cross", "green-vacuum"} <= fams
        assert all(r.checked_columns > 0 for r in res)
        cross = [r for r in res if r.family == "green-cross"]
        assert len(cross) == 6 * 4 * 3
        canon = [r for r in res if r.family == "green-canonical"]
        assert len(canon) == 3 * 4 * 2


@pytest.mark.criterion(3, "Green ansatz p=3: canonical, cross-set and vacuum relations of the components")
def test_green_ansatz_parafermi_mirror():
    with Clock(60):
        f = build_fermion_set(2)
        rep = combine_many([f, f, f])
        assert rep.dim == 2 ** 6
        res = suite_green(rep)
        all_pass(res)
        assert all(r.checked_columns == rep.dim for r in res if r.family != "green-vacuum")


@pytest.mark.criterion(4, "generalized ansatz: orders (2,1), per-component trilinear and orders 2, 1")
def test_generalized_ansatz():
    with Clock(10):
        f = build_fermion_set(2)
        rep = combine(combine(f, f), f)
        assert rep.orders == (2, 1)
        res = suite_green(rep)
        all_pass(res)
        tri = [r for r in res if r.family == "green-trilinear"]
        assert len(tri) == 2 * 3 * 8 and all(r.checked_columns == rep.dim for r in tri)
        for alpha, p in ((1, 2), (2, 1)):
            for k in (1, 2):
                r = vacuum_eigencheck(Product((Gen("a", k, alpha), Gen("ad", k, alpha))), rep, p)
                assert r.status == PASS
        all_pass(suite_order(rep, 3))


@pytest.mark.criterion(5, "coassociativity: both nestings give identical generator matrices")
@pytest.mark.parametrize("base", [build_fermion_set(1), build_fermion_set(2), build_boson_set(1, 3),
                                  build_boson_set(2, 2)], ids=["fermi-n1", "fermi-n2", "bose-n1", "bose-n2"])
def test_coassociativity(base):
    with Clock(5):
        r = check_coassociativity(base, base, base)
        assert r.status == PASS and r.checked_columns == base.dim ** 3


def _words(max_len):
    gens = (a(1), ad(1), klein())
    for n in range(1, max_len + 1):
        yield from itertools.product(gens, repeat=n)


@pytest.mark.criterion(6, "oracle equivalence and the bilinear characterization at p=2")
def test_oracle_vacuum_expectations():
    with Clock(5):
        f = build_fermion_set(1)
        rep, oracle = combine(f, f), build_parafermion_oracle(2)
        count = 0
        for w in _words(4):
            e = Product(w)
            assert vacuum_expectation(e, rep) == vacuum_expectation(e, oracle), w
            count += 1
        assert count == 3 + 9 + 27 + 81


@pytest.mark.criterion(6, "oracle equivalence and the bilinear characterization at p=2")
def test_bilinear_characterization():
    with Clock(5):
        b = build_boson_set(1, 4)
        rep = combine(b, b)
        p = rep.order_p
        lhs = Bracket(a(1), ad(1), "-")
        rhs = Sum((Product(()), ScalarMul(p - 1, klein())))
        basis = vacuum_generated_subspace(rep, 3)
        assert len(basis) == 4
        for v in basis:
            assert apply_expr(lhs, rep, v) == apply_expr(rhs, rep, v)


@pytest.mark.criterion(7, "exclusion: nilpotent creators for parafermions, antisymmetric triple for parabosons")
def test_exclusion():
    with Clock(30):
        f = build_fermion_set(2)
        for p, rep in ((1, f), (2, combine(f, f)), (2, build_parafermion_oracle(2))):
            res = suite_exclusion(rep, p)
            all_pass(res)
            powers = [r for r in res if r.name.startswith("exclusion (ad_")]
            assert len(powers) == rep.n_modes and all(r.checked_columns == rep.dim for r in powers)
        b = build_boson_set(3, 3)
        res = suite_exclusion(combine(b, b), 2)
        assert [r.status for r in res] == [PASS]


def _safe_results(rep):
    out = {}
    rels = list(trilinear_relations(1, Statistics.PARABOSE))
    rels += [("klein", Bracket(klein(), a(1), "+"), Sum(())), ("klein-d", Bracket(klein(), ad(1), "+"), Sum(()))]
    for name, lhs, rhs in rels:
        mask = safe_columns(rep, word_profile(lhs).join(word_profile(rhs)))
        D = evaluate(lhs, rep) - evaluate(rhs, rep)
        out[name] = {rep.basis.states[j]: D.column(j) for j in range(rep.dim) if mask[j]}
    return out


@pytest.mark.criterion(8, "truncation soundness: cutoff 4 agrees with cutoff 6 on shared safe columns")
def test_truncation_soundness():
    with Clock(5):
        lo, hi = _safe_results(build_boson_set(1, 4)), _safe_results(build_boson_set(1, 6))
        assert lo.keys() == hi.keys()
        for name in lo:
            assert lo[name] and set(lo[name]) <= set(hi[name])
            for state, col in lo[name].items():
                assert col == hi[name][state]


@pytest.mark.criterion(9, "parser: fixture corpus round-trips, malformed corpus gives positioned errors")
def test_parser_corpus():
    good = sorted((FIXTURES / "pst").glob("*.pst"))
    assert len(good) >= 20
    for path in good:
        prog = load(path)
        assert parse_program(print_program(prog)) == prog, path.name
    bad = sorted((FIXTURES / "malformed").glob("*.pst"))
    assert bad
    for path in bad:
        line, col = map(int, re.match(rb"# error (\d+):(\d+)", path.read_bytes()).groups())
        with pytest.raises(ParseError) as info:
            load(path)
        assert (info.value.line, info.value.col) == (line, col), path.name
