"""Comultiplication of paraparticle representations and Green components.

``combine`` realizes ``D(a) = a (x) I + K (x) a`` and ``D(K) = K (x) K`` as
matrices.  For parabosons the tensor product is the ordinary one.  For
parafermions the generators are odd and the tensor product is graded: an odd
operator acting on the second factor picks up the parity of the first
factor, which for these representations is the Klein operator itself.  The
matrix image of ``K (x) a`` is then ``kron(K @ K, a) = kron(I, a)``, so the
Green components of a parafermion commute while those of a paraboson
anticommute.

Tensor bases are row-major with the first factor slowest; nested
combinations flatten to the same ordering, which is what makes
coassociativity a bit-exact comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import FAIL, PASS, VerificationResult
from .exact import SparseMat, kron, kron_all
from .fock import A, AD, IndexRangeError, Representation, Statistics


class CompatibilityError(ValueError):
    pass


def _dress(klein: SparseMat, klein_dag: SparseMat, odd: bool, dagger: bool) -> SparseMat:
    k = klein_dag if dagger else klein
    # graded-tensor sign for an odd operator is the parity of the factor it passes: K itself
    return k @ klein if odd else k


def dressing(rep: Representation, dagger: bool = False) -> SparseMat:
    """Matrix standing in front of a later factor's generator in a component.

    The Klein prefix, composed with the graded-tensor sign when generators are
    odd.
    """
    return _dress(rep.klein, rep.klein_dag, rep.statistics.generators_odd, dagger)


@dataclass(frozen=True, eq=False)
class CombinedRep(Representation):
    factors: Tuple[Representation, ...]
    statistics: Statistics
    n_modes: int
    order_p: int
    a: Tuple[SparseMat, ...]
    ad: Tuple[SparseMat, ...]
    klein: SparseMat
    klein_dag: SparseMat
    _cache: Dict[tuple, SparseMat] = field(default_factory=dict, repr=False)

    @property
    def n_factors(self) -> int:
        return len(self.factors)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(f.order_p for f in self.factors)

    @property
    def leaves(self):
        return tuple(leaf for f in self.factors for leaf in f.leaves)

    @property
    def leaf_cutoffs(self) -> Tuple[Optional[int], ...]:
        return tuple(c for f in self.factors for c in f.leaf_cutoffs)

    @property
    def leaf_owner(self) -> Tuple[int, ...]:
        return tuple(alpha for alpha, f in enumerate(self.factors, 1) for _ in f.leaves)

    @property
    def leaf_degrees(self) -> np.ndarray:
        hit = self._cache.get(("leaf_degrees",))
        if hit is not None:
            return hit
        dims = [f.dim for f in self.factors]
        blocks = []
        for i, f in enumerate(self.factors):
            before = int(np.prod(dims[:i], dtype=np.int64))
            after = int(np.prod(dims[i + 1:], dtype=np.int64))
            for row in f.leaf_degrees:
                blocks.append(np.tile(np.repeat(row, after), before))
        out = np.vstack(blocks)
        self._cache[("leaf_degrees",)] = out
        return out

    def component(self, alpha: int, mode: int, species: str) -> SparseMat:
        """Green component: dressings on factors before ``alpha``, identity after."""
        r = len(self.factors)
        if not 1 <= alpha <= r:
            raise IndexRangeError(f"set index {alpha} outside 1..{r}")
        if species not in (A, AD):
            raise IndexRangeError(f"components exist only for a/ad, not {species!r}")
        if not 1 <= mode <= self.n_modes:
            raise IndexRangeError(f"mode {mode} outside 1..{self.n_modes}")
        key = (alpha, mode, species)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        dagger = species == AD
        parts = [dressing(f, dagger) for f in self.factors[:alpha - 1]]
        parts.append(self.factors[alpha - 1].generator(species, mode))
        parts.extend(SparseMat.identity(f.dim) for f in self.factors[alpha:])
        out = kron_all(parts)
        self._cache[key] = out
        return out


def _check_compatible(reps: Sequence[Representation]) -> None:
    first = reps[0]
    for r in reps[1:]:
        if r.statistics is not first.statistics:
            raise CompatibilityError(f"cannot combine {first.statistics.value} with {r.statistics.value}")
        if r.n_modes != first.n_modes:
            raise CompatibilityError(f"mode count mismatch: {first.n_modes} vs {r.n_modes}")


def _step(left, right: Representation):
    """One coproduct step on raw generator tuples ``(a, ad, K, Kd)``."""
    a_l, ad_l, k_l, kd_l = left
    odd = right.statistics.generators_odd
    I_r = SparseMat.identity(right.dim)
    pre = _dress(k_l, kd_l, odd, False)
    pre_d = _dress(k_l, kd_l, odd, True)
    a_new = tuple(kron(x, I_r) + kron(pre, y) for x, y in zip(a_l, right.a))
    ad_new = tuple(kron(x, I_r) + kron(pre_d, y) for x, y in zip(ad_l, right.ad))
    return a_new, ad_new, kron(k_l, right.klein), kron(kd_l, right.klein_dag)


def combine_many(factors: Sequence[Representation]) -> CombinedRep:
    """Iterated coproduct over ``factors``, nested to the left.

    The factors are kept flat, so components are indexed 1..len(factors)
    even though the generators were built one step at a time.
    """
    factors = tuple(factors)
    if len(factors) < 2:
        raise ValueError("a coproduct needs at least two factors")
    _check_compatible(factors)
    f0 = factors[0]
    gens = (tuple(f0.a), tuple(f0.ad), f0.klein, f0.klein_dag)
    for f in factors[1:]:
        gens = _step(gens, f)
    a_, ad_, k_, kd_ = gens
    return CombinedRep(factors, f0.statistics, f0.n_modes, sum(f.order_p for f in factors), a_, ad_, k_, kd_)


def combine(rep_a: Representation, rep_b: Representation) -> CombinedRep:
    return combine_many((rep_a, rep_b))


def green_component(rep: CombinedRep, alpha: int, mode: int, species: str) -> SparseMat:
    return rep.component(alpha, mode, species)


def iterated_sum(rep: CombinedRep, mode: int, species: str) -> SparseMat:
    """Sum of all Green components; equals the coproduct generator."""
    out = SparseMat.zero(rep.dim)
    for alpha in range(1, rep.n_factors + 1):
        out = out + rep.component(alpha, mode, species)
    return out


def _generators(rep: Representation) -> List[Tuple[str, SparseMat]]:
    out = []
    for k in range(1, rep.n_modes + 1):
        out.append((f"a({k})", rep.a[k - 1]))
        out.append((f"ad({k})", rep.ad[k - 1]))
    out.append(("K", rep.klein))
    out.append(("Kd", rep.klein_dag))
    return out


def check_coassociativity(rep_a: Representation, rep_b: Representation, rep_c: Representation,
                          name: str = "coassociativity") -> VerificationResult:
    """Both nestings of a triple coproduct must give identical generator matrices."""
    _check_compatible((rep_a, rep_b, rep_c))
    left = combine(combine(rep_a, rep_b), rep_c)
    right = combine(rep_a, combine(rep_b, rep_c))
    for (gname, L), (_, R) in zip(_generators(left), _generators(right)):
        if L != R:
            cols = (L - R).columns()
            j = min(cols)
            return VerificationResult(name, FAIL, left.dim,
                                      {"generator": gname, "column": j, "state": left.state_label(j),
                                       "lhs": dict(sorted(L.column(j).items())),
                                       "rhs": dict(sorted(R.column(j).items()))},
                                      family="coassociativity")
    return VerificationResult(name, PASS, left.dim, family="coassociativity")
