"""Single-set Fock representations: truncated bosons, fermions, and a
single-mode parafermion of arbitrary order used as an independent oracle.

All representations use the unnormalized occupation basis: a creation
operator appends a quantum with coefficient 1, so every matrix entry is an
integer.  The creation operator is therefore *not* the transpose of the
annihilation operator; nothing downstream relies on that.

The Klein operator is gauge-fixed to ``(-1)**degree`` so that it is +1 on the
vacuum and stays rational.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exact import MINUS, PLUS, Rational, SparseMat

A, AD, K, KD = "a", "ad", "K", "Kd"
SPECIES = (A, AD, K, KD)


class Statistics(enum.Enum):
    PARABOSE = "parabose"
    PARAFERMI = "parafermi"

    @property
    def sign(self) -> str:
        """The upper sign for parabosons, the lower one for parafermions."""
        return PLUS if self is Statistics.PARABOSE else MINUS

    @property
    def opposite(self) -> str:
        return MINUS if self is Statistics.PARABOSE else PLUS

    @property
    def generators_odd(self) -> bool:
        return self is Statistics.PARAFERMI

    @classmethod
    def parse(cls, s) -> "Statistics":
        if isinstance(s, cls):
            return s
        return cls(str(s).lower())


class IndexRangeError(IndexError):
    pass


@dataclass(frozen=True)
class FockBasis:
    n_modes: int
    cutoff: Optional[int]
    max_occ: Optional[int]
    states: Tuple[Tuple[int, ...], ...]
    index: Dict[Tuple[int, ...], int] = field(repr=False, compare=False)

    @classmethod
    def enumerate(cls, n_modes: int, cutoff: Optional[int] = None, max_occ: Optional[int] = None) -> "FockBasis":
        """States graded by total occupation, lexicographic within a degree."""
        if n_modes < 1:
            raise ValueError("n_modes must be positive")
        if cutoff is None and max_occ is None:
            raise ValueError("an unbounded basis cannot be enumerated")
        top = cutoff if cutoff is not None else n_modes * max_occ
        if max_occ is not None:
            top = min(top, n_modes * max_occ)
        per_mode = range((max_occ if max_occ is not None else top) + 1)
        states = []
        for d in range(top + 1):
            states.extend(v for v in itertools.product(per_mode, repeat=n_modes) if sum(v) == d)
        states = tuple(states)
        return cls(n_modes, cutoff, max_occ, states, {v: i for i, v in enumerate(states)})

    @property
    def dim(self) -> int:
        return len(self.states)

    def degrees(self) -> np.ndarray:
        return np.array([sum(v) for v in self.states], dtype=np.int64)


class Representation:
    """Behaviour shared by single sets and coproduct combinations.

    Subclasses provide ``statistics``, ``n_modes``, ``order_p``, ``a``, ``ad``,
    ``klein``, ``klein_dag`` and the leaf bookkeeping used for truncation
    safety.  A *leaf* is one single-set factor in the full tensor product.
    """

    vacuum_index = 0

    @property
    def dim(self) -> int:
        return self.klein.dim

    @property
    def n_factors(self) -> int:
        return 1

    def generator(self, species: str, mode: Optional[int] = None) -> SparseMat:
        if species == K:
            return self.klein
        if species == KD:
            return self.klein_dag
        if species not in (A, AD):
            raise ValueError(f"unknown species {species!r}")
        if mode is None or not 1 <= mode <= self.n_modes:
            raise IndexRangeError(f"mode {mode} outside 1..{self.n_modes}")
        return (self.a if species == A else self.ad)[mode - 1]

    def component(self, alpha: int, mode: int, species: str) -> SparseMat:
        raise IndexRangeError("a single set has no coproduct components")

    @property
    def degree(self) -> np.ndarray:
        return self.leaf_degrees.sum(axis=0)

    def identity(self) -> SparseMat:
        return SparseMat.identity(self.dim)

    def vacuum(self) -> Dict[int, Rational]:
        return {self.vacuum_index: Rational(1)}

    def state_label(self, index: int) -> List[List[int]]:
        """Occupation tuples of every leaf for a basis index."""
        out = []
        rest = index
        radices = [leaf.dim for leaf in self.leaves]
        digits = []
        for d in reversed(radices):
            digits.append(rest % d)
            rest //= d
        for leaf, i in zip(self.leaves, reversed(digits)):
            out.append(list(leaf.basis.states[i]))
        return out


@dataclass(frozen=True, eq=False)
class SetRep(Representation):
    statistics: Statistics
    n_modes: int
    order_p: int
    basis: FockBasis
    a: Tuple[SparseMat, ...]
    ad: Tuple[SparseMat, ...]
    klein: SparseMat
    klein_dag: SparseMat
    truncation: Optional[int] = None  # total-degree cutoff when the set is a truncated boson space

    @property
    def leaves(self) -> Tuple["SetRep", ...]:
        return (self,)

    @property
    def leaf_degrees(self) -> np.ndarray:
        return self.basis.degrees()[None, :]

    @property
    def leaf_cutoffs(self) -> Tuple[Optional[int], ...]:
        return (self.truncation,)

    @property
    def leaf_owner(self) -> Tuple[Optional[int], ...]:
        return (None,)

    @property
    def degree(self) -> np.ndarray:
        return self.basis.degrees()


def _klein_from_degrees(degrees: Sequence[int]) -> SparseMat:
    return SparseMat.diagonal([1 if d % 2 == 0 else -1 for d in degrees])


def build_boson_set(n_modes: int, cutoff: int) -> SetRep:
    """Order-1 parabosons (ordinary bosons), truncated at total degree ``cutoff``.

    ``ad_k`` maps v to v + e_k (dropped above the cutoff); ``a_k`` maps v to
    ``v_k * (v - e_k)``.
    """
    if cutoff < 1:
        raise ValueError("boson cutoff must be at least 1")
    basis = FockBasis.enumerate(n_modes, cutoff=cutoff)
    assert basis.dim == comb(cutoff + n_modes, n_modes)
    a, ad = [], []
    for k in range(n_modes):
        up, down = {}, {}
        for j, v in enumerate(basis.states):
            w = list(v)
            w[k] += 1
            i = basis.index.get(tuple(w))
            if i is not None:
                up[i, j] = 1
            if v[k]:
                w[k] -= 2
                down[basis.index[tuple(w)], j] = v[k]
        a.append(SparseMat(basis.dim, down))
        ad.append(SparseMat(basis.dim, up))
    K_ = _klein_from_degrees(basis.degrees())
    return SetRep(Statistics.PARABOSE, n_modes, 1, basis, tuple(a), tuple(ad), K_, K_, truncation=cutoff)


def build_fermion_set(n_modes: int) -> SetRep:
    """Order-1 parafermions (ordinary fermions) with Jordan-Wigner signs by mode index."""
    basis = FockBasis.enumerate(n_modes, max_occ=1)
    a, ad = [], []
    for k in range(n_modes):
        up, down = {}, {}
        for j, v in enumerate(basis.states):
            sgn = -1 if sum(v[:k]) % 2 else 1
            w = list(v)
            if v[k] == 0:
                w[k] = 1
                up[basis.index[tuple(w)], j] = sgn
            else:
                w[k] = 0
                down[basis.index[tuple(w)], j] = sgn
        a.append(SparseMat(basis.dim, down))
        ad.append(SparseMat(basis.dim, up))
    K_ = _klein_from_degrees(basis.degrees())
    return SetRep(Statistics.PARAFERMI, n_modes, 1, basis, tuple(a), tuple(ad), K_, K_)


def build_parafermion_oracle(p: int) -> SetRep:
    """Single-mode parafermion of order ``p`` built directly on ``|0), ..., |p)``.

    ``ad|m) = |m+1)`` and ``a|m) = m(p+1-m)|m-1)``.  Used only to cross-check
    the coproduct construction.
    """
    if p < 1:
        raise ValueError("order must be positive")
    basis = FockBasis.enumerate(1, max_occ=p)
    dim = p + 1
    ad = SparseMat(dim, {(m + 1, m): 1 for m in range(p)})
    a = SparseMat(dim, {(m - 1, m): m * (p + 1 - m) for m in range(1, dim)})
    K_ = _klein_from_degrees(range(dim))
    return SetRep(Statistics.PARAFERMI, 1, p, basis, (a,), (ad,), K_, K_)


def number_operator(rep: Representation) -> SparseMat:
    """Vacuum-shifted number operator: ``diag(degree)``."""
    return SparseMat.diagonal([int(d) for d in rep.degree])


def klein_operator(rep: Representation) -> Tuple[SparseMat, SparseMat]:
    K_ = _klein_from_degrees(int(d) for d in rep.degree)
    return K_, K_
