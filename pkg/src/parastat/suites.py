"""Enumerated verification suites and the report they produce.

Each suite walks every index combination of one relation family and returns
a list of :class:`~parastat.algebra.VerificationResult`.  Index order is
fixed (k, l, m ascending; alpha before beta) so reports are reproducible.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import (FAIL, IDENTITY, PASS, SKIPPED, ZERO, Bracket, Expr, Gen, Product, ScalarMul, Sum,
                      VerificationResult, check_relation, scalar, vacuum_eigencheck)
from .coproduct import CombinedRep, check_coassociativity, combine_many
from .exact import MINUS, PLUS, Rational, SparseMat, fstr, kron_all
from .fock import A, AD, K, KD, Representation, Statistics, build_boson_set, build_fermion_set

SUITES = ("trilinear", "klein", "green", "order", "exclusion", "coassoc")


class ConfigError(ValueError):
    pass


def _d(k: int, l: int) -> int:
    return 1 if k == l else 0


def _g(species: str, k: int, alpha: Optional[int] = None) -> Gen:
    return Gen(species, k, alpha)


def _sub(alpha: Optional[int]) -> str:
    return "" if alpha is None else f"^({alpha})"


# -- relation families -------------------------------------------------------------------


def trilinear_relations(n_modes: int, stats: Statistics, alpha: Optional[int] = None):
    """Yield ``(name, lhs, rhs)`` for the three trilinear lines, every (k, l, m)."""
    s = stats.sign
    pm = 1 if s == PLUS else -1
    u = _sub(alpha)
    for k, l, m in itertools.product(range(1, n_modes + 1), repeat=3):
        idx = f"(k,l,m)=({k},{l},{m})"
        ak, adl, am, adm, al = _g(A, k, alpha), _g(AD, l, alpha), _g(A, m, alpha), _g(AD, m, alpha), _g(A, l, alpha)
        yield (f"[a{u}_k,[ad{u}_l,a{u}_m]{s}]- {idx}",
               Bracket(ak, Bracket(adl, am, s), MINUS),
               _lin([(2 * _d(k, l), am)]))
        yield (f"[a{u}_k,[ad{u}_l,ad{u}_m]{s}]- {idx}",
               Bracket(ak, Bracket(adl, adm, s), MINUS),
               _lin([(2 * _d(k, l), adm), (pm * 2 * _d(k, m), adl)]))
        yield (f"[a{u}_k,[a{u}_l,a{u}_m]{s}]- {idx}",
               Bracket(ak, Bracket(al, am, s), MINUS),
               ZERO)


def _lin(terms: Sequence[Tuple[int, Expr]]) -> Expr:
    """Linear combination with vanishing terms dropped."""
    kept = [ScalarMul(Rational(c), x) for c, x in terms if c]
    if not kept:
        return ZERO
    return kept[0] if len(kept) == 1 else Sum(tuple(kept))


def suite_trilinear(ctx: Representation, cache=None) -> List[VerificationResult]:
    cache = {} if cache is None else cache
    return [check_relation(lhs, rhs, ctx, name=f"trilinear {name}", family="trilinear", cache=cache)
            for name, lhs, rhs in trilinear_relations(ctx.n_modes, ctx.statistics)]


def suite_klein(ctx: Representation, cache=None) -> List[VerificationResult]:
    cache = {} if cache is None else cache
    Kx, Kdx = Gen(K), Gen(KD)
    out = [
        check_relation(Product((Kx, Kdx)), IDENTITY, ctx, name="klein K Kd = I", family="klein", cache=cache),
        check_relation(Product((Kdx, Kx)), IDENTITY, ctx, name="klein Kd K = I", family="klein", cache=cache),
    ]
    for k in range(1, ctx.n_modes + 1):
        for kk, g in ((Kx, AD), (Kx, A), (Kdx, AD), (Kdx, A)):
            out.append(check_relation(Bracket(kk, _g(g, k), PLUS), ZERO, ctx,
                                      name=f"klein [{kk.species},{g}_{k}]+ = 0", family="klein", cache=cache))
    return out


def suite_green(ctx: Representation, cache=None) -> List[VerificationResult]:
    """Green-component relations of a coproduct of r >= 2 sets."""
    if not isinstance(ctx, CombinedRep) or ctx.n_factors < 2:
        return [VerificationResult("green components", SKIPPED, 0, family="green",
                                   message="needs a coproduct of at least two sets")]
    cache = {} if cache is None else cache
    stats, n, r = ctx.statistics, ctx.n_modes, ctx.n_factors
    modes = range(1, n + 1)
    out: List[VerificationResult] = []

    for k in modes:
        for sp in (A, AD):
            out.append(check_relation(Sum(tuple(_g(sp, k, al) for al in range(1, r + 1))), _g(sp, k), ctx,
                                      name=f"iterated sum_alpha {sp}^(alpha)_{k} = D({sp}_{k})",
                                      family="iterated-coproduct", cache=cache))
    out.append(_matrix_equal(ctx.klein, kron_all(f.klein for f in ctx.factors), ctx,
                             "iterated D(K) = K x ... x K", "iterated-coproduct"))
    out.append(_matrix_equal(ctx.klein_dag, kron_all(f.klein_dag for f in ctx.factors), ctx,
                             "iterated D(Kd) = Kd x ... x Kd", "iterated-coproduct"))

    canonical = all(p == 1 for p in ctx.orders)
    same, cross = stats.opposite, stats.sign
    for al in range(1, r + 1):
        if canonical:
            for k, l in itertools.product(modes, repeat=2):
                out.append(check_relation(Bracket(_g(A, k, al), _g(AD, l, al), same), scalar(_d(k, l)), ctx,
                                          name=f"green-canonical [a^({al})_{k},ad^({al})_{l}]{same} = {_d(k, l)}",
                                          family="green-canonical", cache=cache))
                out.append(check_relation(Bracket(_g(A, k, al), _g(A, l, al), same), ZERO, ctx,
                                          name=f"green-canonical [a^({al})_{k},a^({al})_{l}]{same} = 0",
                                          family="green-canonical", cache=cache))
        else:
            for name, lhs, rhs in trilinear_relations(n, stats, al):
                out.append(check_relation(lhs, rhs, ctx, name=f"green-trilinear {name}",
                                          family="green-trilinear", cache=cache))

    for al, be in itertools.permutations(range(1, r + 1), 2):
        for k, l in itertools.product(modes, repeat=2):
            for s1, s2 in ((A, AD), (A, A), (AD, AD)):
                out.append(check_relation(Bracket(_g(s1, k, al), _g(s2, l, be), cross), ZERO, ctx,
                                          name=f"green-cross [{s1}^({al})_{k},{s2}^({be})_{l}]{cross} = 0",
                                          family="green-cross", cache=cache))

    for al in range(1, r + 1):
        for k in modes:
            out.append(vacuum_eigencheck(_g(A, k, al), ctx, 0, name=f"green-vacuum a^({al})_{k}|0> = 0",
                                         family="green-vacuum"))
    if not canonical:
        for al, p in enumerate(ctx.orders, 1):
            for k, l in itertools.product(modes, repeat=2):
                want = _d(k, l) * p
                out.append(vacuum_eigencheck(Product((_g(A, k, al), _g(AD, l, al))), ctx, want,
                                             name=f"green-order a^({al})_{k} ad^({al})_{l}|0> = {want}|0>",
                                             family="green-order"))
    return out


def _matrix_equal(L: SparseMat, R: SparseMat, ctx: Representation, name: str, family: str) -> VerificationResult:
    if L == R:
        return VerificationResult(name, PASS, ctx.dim, family=family)
    j = min((L - R).columns())
    return VerificationResult(name, FAIL, ctx.dim, {"column": j, "state": ctx.state_label(j),
                                                    "lhs": L.column(j), "rhs": R.column(j)}, family=family)


def suite_order(ctx: Representation, expected_p: int) -> List[VerificationResult]:
    out = []
    modes = range(1, ctx.n_modes + 1)
    for k, l in itertools.product(modes, repeat=2):
        want = _d(k, l) * expected_p
        out.append(vacuum_eigencheck(Product((_g(A, k), _g(AD, l))), ctx, want,
                                     name=f"order a_{k} ad_{l}|0> = {want}|0>", family="order"))
    for k in modes:
        out.append(vacuum_eigencheck(_g(A, k), ctx, 0, name=f"vacuum a_{k}|0> = 0", family="vacuum"))
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def symmetrized(modes: Sequence[int], antisymmetric: bool) -> Expr:
    """Sum over orderings of a product of creators, with permutation signs if antisymmetric."""
    terms = []
    for perm in itertools.permutations(range(len(modes))):
        c = _perm_sign(perm) if antisymmetric else 1
        terms.append(ScalarMul(Rational(c), Product(tuple(_g(AD, modes[i]) for i in perm))))
    return Sum(tuple(terms))


def suite_exclusion(ctx: Representation, p: int, cache=None) -> List[VerificationResult]:
    """At most p parabosons in an antisymmetric state, at most p parafermions in a symmetric one."""
    cache = {} if cache is None else cache
    n = ctx.n_modes
    out = []
    if ctx.statistics is Statistics.PARAFERMI:
        for k in range(1, n + 1):
            out.append(check_relation(Product((_g(AD, k),) * (p + 1)), ZERO, ctx,
                                      name=f"exclusion (ad_{k})^{p + 1} = 0", family="exclusion", cache=cache))
        if n >= p + 1:
            for modes in itertools.combinations(range(1, n + 1), p + 1):
                out.append(vacuum_eigencheck(symmetrized(modes, False), ctx, 0,
                                             name=f"exclusion sym{modes}|0> = 0", family="exclusion"))
        return out
    if n < p + 1:
        return [VerificationResult(f"exclusion antisym of {p + 1} creators", SKIPPED, 0, family="exclusion",
                                   message=f"needs at least {p + 1} modes, have {n}")]
    for modes in itertools.combinations(range(1, n + 1), p + 1):
        out.append(vacuum_eigencheck(symmetrized(modes, True), ctx, 0,
                                     name=f"exclusion antisym{modes}|0> = 0", family="exclusion"))
    return out


def suite_coassoc(factors: Sequence[Representation]) -> List[VerificationResult]:
    trio = [factors[i % len(factors)] for i in range(3)]
    return [check_coassociativity(*trio, name="coassociativity (D x id)D = (id x D)D")]


# -- configuration and report ---------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    statistics: Statistics
    n_modes: int
    orders: Tuple[int, ...]
    cutoff: Optional[int] = None
    suites: Tuple[str, ...] = SUITES

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        object.__setattr__(self, "orders", tuple(self.orders))
        object.__setattr__(self, "suites", tuple(self.suites))
        if self.n_modes < 1:
            raise ConfigError("n_modes must be positive")
        if not self.orders or any(p < 1 for p in self.orders):
            raise ConfigError("orders must be a nonempty list of positive integers")
        if self.statistics is Statistics.PARABOSE:
            if self.cutoff is None:
                raise ConfigError("parabose configurations need a cutoff")
            if self.cutoff < 1:
                raise ConfigError("cutoff must be positive")
        elif self.cutoff is not None:
            raise ConfigError("cutoff applies to parabose configurations only")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")

    @property
    def total_order(self) -> int:
        return sum(self.orders)

    def to_dict(self) -> dict:
        return {"statistics": self.statistics.value, "n_modes": self.n_modes, "orders": list(self.orders),
                "cutoff": self.cutoff, "suites": list(self.suites)}


def build_factor(stats: Statistics, n_modes: int, order: int, cutoff: Optional[int] = None) -> Representation:
    """An order-``order`` set as the coproduct of ``order`` order-1 sets."""
    base = build_boson_set(n_modes, cutoff) if stats is Statistics.PARABOSE else build_fermion_set(n_modes)
    return base if order == 1 else combine_many([base] * order)


def build_context(config: SuiteConfig) -> Tuple[List[Representation], Representation]:
    factors = [build_factor(config.statistics, config.n_modes, p, config.cutoff) for p in config.orders]
    ctx = factors[0] if len(factors) == 1 else combine_many(factors)
    return factors, ctx


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if type(x) is Rational:
        return fstr(x)
    return x


@dataclass
class Report:
    config: dict
    results: List[VerificationResult] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    error: Optional[str] = None
    version: str = __version__

    @property
    def summary(self) -> Dict[str, int]:
        tally = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for r in self.results:
            tally[r.status] += 1
        return {"passed": tally[PASS], "failed": tally[FAIL], "skipped": tally[SKIPPED]}

    @property
    def ok(self) -> bool:
        return self.error is None and self.summary["failed"] == 0

    def to_dict(self, timings: bool = True) -> dict:
        results = []
        for r in self.results:
            d = {"name": r.name, "paper_eq": r.family, "status": r.status, "checked_columns": r.checked_columns}
            if r.counterexample is not None:
                d["counterexample"] = encode_counterexample(r.counterexample)
            if r.message:
                d["message"] = r.message
            results.append(d)
        out = {"config": self.config, "results": results, "summary": self.summary, "version": self.version}
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=False)

    def to_text(self) -> str:
        width = max([len(r.name) for r in self.results] + [8])
        lines = [f"{'relation':<{width}}  {'family':<20}  {'status':<7}  {'columns':>8}",
                 f"{'-' * width}  {'-' * 20}  {'-' * 7}  {'-' * 8}"]
        for r in self.results:
            lines.append(f"{r.name:<{width}}  {r.family:<20}  {r.status:<7}  {r.checked_columns:>8}")
            if r.counterexample is not None:
                ce = r.counterexample
                lines.append(f"    counterexample at column {ce['column']} state {ce['state']}")
            if r.message:
                lines.append(f"    {r.message}")
        s = self.summary
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"passed {s['passed']}, failed {s['failed']}, skipped {s['skipped']}")
        return "\n".join(lines)


def encode_counterexample(ce: dict) -> dict:
    """JSON form: occupation tuples per leaf and differing entries as ``"p/q"`` strings."""
    lhs, rhs = ce.get("lhs", {}), ce.get("rhs", {})
    zero = Rational(0)
    differing = [{"row": i, "lhs": fstr(lhs.get(i, zero)), "rhs": fstr(rhs.get(i, zero))}
                 for i in sorted(set(lhs) | set(rhs)) if lhs.get(i, zero) != rhs.get(i, zero)]
    out = {k: _jsonable(v) for k, v in ce.items() if k not in ("lhs", "rhs")}
    out["differing"] = differing
    out["lhs"] = _jsonable(lhs)
    out["rhs"] = _jsonable(rhs)
    return out


def run_suites(config: SuiteConfig) -> Report:
    report = Report(config.to_dict())
    if not config.suites:
        return report
    try:
        factors, ctx = build_context(config)
    except (ValueError, MemoryError) as exc:
        report.error = f"construction failed: {exc}"
        return report
    cache: dict = {}
    p = config.total_order
    runners = {
        "trilinear": lambda: suite_trilinear(ctx, cache),
        "klein": lambda: suite_klein(ctx, cache),
        "green": lambda: suite_green(ctx, cache),
        "order": lambda: suite_order(ctx, p),
        "exclusion": lambda: suite_exclusion(ctx, p, cache),
        "coassoc": lambda: suite_coassoc(factors),
    }
    for name in SUITES:
        if name not in config.suites:
            continue
        t0 = time.perf_counter()
        report.results.extend(runners[name]())
        report.timings[name] = time.perf_counter() - t0
    return report


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["config", "results", "summary", "version"],
    "properties": {
        "config": {"type": "object"},
        "version": {"type": "string"},
        "error": {"type": "string"},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
        "summary": {
            "type": "object",
            "required": ["passed", "failed", "skipped"],
            "properties": {k: {"type": "integer", "minimum": 0} for k in ("passed", "failed", "skipped")},
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "paper_eq", "status", "checked_columns"],
                "properties": {
                    "name": {"type": "string"},
                    "paper_eq": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, SKIPPED]},
                    "checked_columns": {"type": "integer", "minimum": 0},
                    "message": {"type": "string"},
                    "counterexample": {
                        "type": "object",
                        "required": ["column", "state", "differing"],
                        "properties": {
                            "column": {"type": "integer"},
                            "state": {"type": "array",
                                      "items": {"type": "array", "items": {"type": "integer"}}},
                            "differing": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "required": ["row", "lhs", "rhs"],
                                    "properties": {
                                        "row": {"type": "integer"},
                                        "lhs": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                                        "rhs": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
                                    },
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}
