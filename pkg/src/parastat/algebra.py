"""Operator expressions, their evaluation on a representation, and
truncation-safe relation checking.

An expression is a small immutable tree.  Products and sums are built with
the usual Python operators::

    >>> x = Bracket(a(1), ad(1), "-")
    >>> word_profile(x * ad(2)).creations
    {None: 2}

A truncated boson space only reproduces the infinite-dimensional algebra on
columns with enough headroom below the cutoff.  :func:`check_relation`
therefore compares the two sides only on *safe* columns: those where, for
every truncated leaf, the current degree plus the number of creation
operators the relation can push into that leaf stays within the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .exact import MINUS, PLUS, Rational, SparseMat, Vector, as_rational, bracket, fstr, vec_add
from .fock import A, AD, K, KD, SPECIES, IndexRangeError, Representation

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class EvaluationError(IndexError):
    pass


class Expr:
    """Base node.  Supports ``x + y``, ``x - y``, ``x * y`` and ``q * x``."""

    def __add__(self, other):
        return Sum((self, _expr(other)))

    def __radd__(self, other):
        return Sum((_expr(other), self))

    def __sub__(self, other):
        return Sum((self, ScalarMul(Rational(-1), _expr(other))))

    def __neg__(self):
        return ScalarMul(Rational(-1), self)

    def __mul__(self, other):
        if isinstance(other, Expr):
            return Product((self, other))
        return ScalarMul(as_rational(other), self)

    def __rmul__(self, other):
        return ScalarMul(as_rational(other), self)

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("powers must be positive")
        return self if n == 1 else Product((self,) * n)


@dataclass(frozen=True)
class Gen(Expr):
    species: str
    mode: Optional[int] = None
    set: Optional[int] = None

    def __post_init__(self):
        if self.species not in SPECIES:
            raise ValueError(f"unknown species {self.species!r}")


@dataclass(frozen=True)
class ScalarMul(Expr):
    coeff: Rational
    child: Expr


@dataclass(frozen=True)
class Sum(Expr):
    children: Tuple[Expr, ...]


@dataclass(frozen=True)
class Product(Expr):
    children: Tuple[Expr, ...]


@dataclass(frozen=True)
class Bracket(Expr):
    left: Expr
    right: Expr
    sign: str

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise ValueError(f"bracket sign must be '+' or '-', got {self.sign!r}")


def _expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return scalar(x)


def a(mode: int, set: Optional[int] = None) -> Gen:
    return Gen(A, mode, set)


def ad(mode: int, set: Optional[int] = None) -> Gen:
    return Gen(AD, mode, set)


def klein() -> Gen:
    return Gen(K)


def klein_dag() -> Gen:
    return Gen(KD)


IDENTITY = Product(())
ZERO = Sum(())


def scalar(q) -> Expr:
    """``q`` times the identity."""
    return ScalarMul(as_rational(q), IDENTITY)


def br(x: Expr, y: Expr, sign: str) -> Bracket:
    return Bracket(x, y, sign)


def describe(expr: Expr) -> str:
    """Compact human-readable rendering (not the DSL printer)."""
    if isinstance(expr, Gen):
        if expr.species in (K, KD):
            return expr.species
        idx = f"{expr.mode}" if expr.set is None else f"{expr.mode},{expr.set}"
        return f"{expr.species}({idx})"
    if isinstance(expr, ScalarMul):
        if expr.child == IDENTITY:
            return fstr(expr.coeff)
        return f"{fstr(expr.coeff)}*{describe(expr.child)}"
    if isinstance(expr, Sum):
        return "(" + " + ".join(describe(c) for c in expr.children) + ")" if expr.children else "0"
    if isinstance(expr, Product):
        return " ".join(describe(c) for c in expr.children) if expr.children else "I"
    if isinstance(expr, Bracket):
        return f"[{describe(expr.left)}, {describe(expr.right)}]{expr.sign}"
    raise TypeError(f"not an operator expression: {expr!r}")


# -- evaluation -----------------------------------------------------------------


def _lookup(gen: Gen, ctx: Representation) -> SparseMat:
    try:
        if gen.set is None:
            return ctx.generator(gen.species, gen.mode)
        if gen.species in (K, KD):
            raise IndexRangeError("Klein operators carry no set index")
        return ctx.component(gen.set, gen.mode, gen.species)
    except (IndexRangeError, ValueError) as exc:
        raise EvaluationError(f"cannot evaluate {describe(gen)}: {exc}") from None


def evaluate(expr: Expr, ctx: Representation, cache: Optional[Dict[Expr, SparseMat]] = None) -> SparseMat:
    """Matrix of ``expr`` in ``ctx``.  ``cache`` may be shared across calls on one context."""
    if cache is None:
        cache = {}
    hit = cache.get(expr)
    if hit is not None:
        return hit
    if isinstance(expr, Gen):
        out = _lookup(expr, ctx)
    elif isinstance(expr, ScalarMul):
        out = evaluate(expr.child, ctx, cache).scale(expr.coeff)
    elif isinstance(expr, Sum):
        out = SparseMat.zero(ctx.dim)
        for c in expr.children:
            out = out + evaluate(c, ctx, cache)
    elif isinstance(expr, Product):
        if not expr.children:
            out = SparseMat.identity(ctx.dim)
        else:
            out = evaluate(expr.children[0], ctx, cache)
            for c in expr.children[1:]:
                out = out @ evaluate(c, ctx, cache)
    elif isinstance(expr, Bracket):
        out = bracket(evaluate(expr.left, ctx, cache), evaluate(expr.right, ctx, cache), expr.sign)
    else:
        raise TypeError(f"not an operator expression: {expr!r}")
    cache[expr] = out
    return out


def apply_expr(expr: Expr, ctx: Representation, vec: Mapping[int, Rational]) -> Vector:
    """``evaluate(expr, ctx)`` applied to a sparse vector, without forming the matrix."""
    if not vec:
        return {}
    if isinstance(expr, Gen):
        return _lookup(expr, ctx).apply(vec)
    if isinstance(expr, ScalarMul):
        c = expr.coeff
        return {i: c * x for i, x in apply_expr(expr.child, ctx, vec).items() if c}
    if isinstance(expr, Sum):
        out: Vector = {}
        for ch in expr.children:
            out = vec_add(out, apply_expr(ch, ctx, vec))
        return out
    if isinstance(expr, Product):
        out = dict(vec)
        for ch in reversed(expr.children):
            out = apply_expr(ch, ctx, out)
        return out
    if isinstance(expr, Bracket):
        xy = apply_expr(expr.left, ctx, apply_expr(expr.right, ctx, vec))
        yx = apply_expr(expr.right, ctx, apply_expr(expr.left, ctx, vec))
        return vec_add(xy, yx, 1 if expr.sign == PLUS else -1)
    raise TypeError(f"not an operator expression: {expr!r}")


# -- creation budgets -------------------------------------------------------------


@dataclass(frozen=True)
class WordProfile:
    """Worst-case creation operators per set index along any multiplication path.

    Key ``None`` counts coproduct-level (or single-set) generators, which may
    create in any leaf.
    """

    creations: Dict[Optional[int], int]
    length: int

    def __add__(self, other: "WordProfile") -> "WordProfile":
        keys = set(self.creations) | set(other.creations)
        return WordProfile({k: self.creations.get(k, 0) + other.creations.get(k, 0) for k in keys},
                           self.length + other.length)

    def join(self, other: "WordProfile") -> "WordProfile":
        keys = set(self.creations) | set(other.creations)
        return WordProfile({k: max(self.creations.get(k, 0), other.creations.get(k, 0)) for k in keys},
                           max(self.length, other.length))

    def budget(self, owner: Optional[int]) -> int:
        b = self.creations.get(None, 0)
        if owner is not None:
            b += self.creations.get(owner, 0)
        return b


EMPTY_PROFILE = WordProfile({}, 0)


def word_profile(expr: Expr) -> WordProfile:
    if isinstance(expr, Gen):
        return WordProfile({expr.set: 1} if expr.species == AD else {}, 1)
    if isinstance(expr, ScalarMul):
        return word_profile(expr.child)
    if isinstance(expr, Sum):
        out = EMPTY_PROFILE
        for c in expr.children:
            out = out.join(word_profile(c))
        return out
    if isinstance(expr, Product):
        out = EMPTY_PROFILE
        for c in expr.children:
            out = out + word_profile(c)
        return out
    if isinstance(expr, Bracket):
        x, y = word_profile(expr.left), word_profile(expr.right)
        return (x + y).join(y + x)
    raise TypeError(f"not an operator expression: {expr!r}")


def safe_columns(ctx: Representation, profile: WordProfile) -> np.ndarray:
    """Boolean mask of columns on which ``ctx`` is exact for words within ``profile``."""
    mask = np.ones(ctx.dim, dtype=bool)
    for degs, cutoff, owner in zip(ctx.leaf_degrees, ctx.leaf_cutoffs, ctx.leaf_owner):
        if cutoff is not None:
            mask &= degs + profile.budget(owner) <= cutoff
    return mask


def required_cutoff(ctx: Representation, profile: WordProfile) -> int:
    """Smallest uniform cutoff that leaves the vacuum column safe."""
    return max([profile.budget(o) for o, c in zip(ctx.leaf_owner, ctx.leaf_cutoffs) if c is not None] or [0])


# -- verification -------------------------------------------------------------------


@dataclass
class VerificationResult:
    name: str
    status: str
    checked_columns: int
    counterexample: Optional[dict] = None
    family: str = ""
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _counterexample(ctx: Representation, col: int, lhs: Vector, rhs: Vector) -> dict:
    return {"column": col, "state": ctx.state_label(col), "lhs": dict(sorted(lhs.items())),
            "rhs": dict(sorted(rhs.items()))}


def check_relation(lhs: Expr, rhs: Expr, ctx: Representation, name: str = "", family: str = "",
                   cache: Optional[Dict[Expr, SparseMat]] = None) -> VerificationResult:
    """Compare both sides exactly on every safe column of ``ctx``."""
    name = name or f"{describe(lhs)} == {describe(rhs)}"
    profile = word_profile(lhs).join(word_profile(rhs))
    mask = safe_columns(ctx, profile)
    checked = int(mask.sum())
    if checked == 0:
        return VerificationResult(name, SKIPPED, 0, family=family,
                                  message=f"no safe columns; requires cutoff >= {required_cutoff(ctx, profile) + 1}")
    L = evaluate(lhs, ctx, cache)
    R = evaluate(rhs, ctx, cache)
    diff = (L - R).columns()
    bad = sorted(j for j in diff if mask[j])
    if not bad:
        return VerificationResult(name, PASS, checked, family=family)
    j = bad[0]
    return VerificationResult(name, FAIL, checked, _counterexample(ctx, j, L.column(j), R.column(j)), family=family)


def vacuum_eigencheck(expr: Expr, ctx: Representation, expected, name: str = "",
                      family: str = "") -> VerificationResult:
    """Pass iff ``expr |0> == expected |0>`` exactly."""
    expected = as_rational(expected)
    name = name or f"{describe(expr)} |0> == {fstr(expected)} |0>"
    if not safe_columns(ctx, word_profile(expr))[ctx.vacuum_index]:
        return VerificationResult(name, SKIPPED, 0, family=family,
                                  message=f"vacuum not safe; requires cutoff >= {required_cutoff(ctx, word_profile(expr))}")
    vac = ctx.vacuum()
    got = apply_expr(expr, ctx, vac)
    want = {ctx.vacuum_index: expected} if expected else {}
    if got == want:
        return VerificationResult(name, PASS, 1, family=family)
    return VerificationResult(name, FAIL, 1, _counterexample(ctx, ctx.vacuum_index, got, want), family=family)


def vacuum_expectation(expr: Expr, ctx: Representation) -> Rational:
    """Vacuum coefficient of ``expr |0>``."""
    return apply_expr(expr, ctx, ctx.vacuum()).get(ctx.vacuum_index, Rational(0))


class _Echelon:
    """Incremental exact row reduction with first-nonzero pivots."""

    def __init__(self):
        self.rows: List[Tuple[int, Vector]] = []

    def reduce(self, v: Mapping[int, Rational]) -> Vector:
        v = dict(v)
        for p, r in self.rows:
            x = v.get(p)
            if x:
                v = vec_add(v, r, -x / r[p])
        return v

    def add(self, v: Mapping[int, Rational]) -> bool:
        w = self.reduce(v)
        if not w:
            return False
        self.rows.append((min(w), w))
        return True


def vacuum_generated_subspace(ctx: Representation, max_degree: int) -> List[Vector]:
    """Independent vectors spanning ``{w|0> : w a word in the creators, len(w) <= max_degree}``.

    Vectors are returned as the word images themselves, in enumeration order
    (by length, then by mode).
    """
    for c in ctx.leaf_cutoffs:
        if c is not None and max_degree > c:
            raise ValueError(f"max_degree {max_degree} exceeds truncation cutoff {c}")
    ech = _Echelon()
    vac = ctx.vacuum()
    ech.add(vac)
    basis = [vac]
    frontier = [vac]
    for _ in range(max_degree):
        nxt = []
        for v in frontier:
            for k in range(1, ctx.n_modes + 1):
                w = ctx.generator(AD, k).apply(v)
                if ech.add(w):
                    basis.append(w)
                    nxt.append(w)
        frontier = nxt
    return basis


def span_contains(basis: List[Vector], v: Mapping[int, Rational]) -> bool:
    ech = _Echelon()
    for b in basis:
        ech.add(b)
    return not ech.reduce(v)
