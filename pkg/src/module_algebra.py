"""
The semigroup algebra of a finite inverse semigroup as a module over the
algebra of its idempotents.

The idempotent algebra acts trivially on the left (delta_e . delta_s =
delta_s) and by multiplication on the right (delta_s . delta_e = delta_se).
From these actions we get the subspace J spanned by delta_set - delta_st,
the congruence s ~ t iff delta_s - delta_t lies in J, and the quotient S/~.
"""
import logging
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.exact_linalg import DimensionMismatch, Subspace, unit_vector, zero_vector
from src.semigroup_core import (DirectedResult, FiniteInverseSemigroup, IdempotentSet,
                                check_size, find_nonassociative_triple, idempotents,
                                is_upward_directed)

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import MAX_ALGEBRA_SIZE

logger = logging.getLogger(__name__)


class QuotientIllDefined(AssertionError):
    """Two pairs from the same classes multiply into different classes."""

    def __init__(self, s: int, t: int, s2: int, t2: int) -> None:
        super().__init__(
            f"s{s} ~ s{s2} and s{t} ~ s{t2} but s{s}s{t} and s{s2}s{t2} fall in different classes")
        self.witness = (s, t, s2, t2)


@dataclass(frozen=True)
class ActionSpec:
    """Actions of the idempotent algebra on the semigroup algebra.

    character[p] is the value of the left functional on the p-th idempotent
    (in IdempotentSet order); the left action is delta_e . x = character(e) x
    and the right action is convolution by delta_e.
    """
    left: str = "trivial"
    right: str = "multiplication"
    character: Optional[Tuple[Fraction, ...]] = None

    def epsilon(self, position: int) -> Fraction:
        if self.character is None:
            return Fraction(1)
        return Fraction(self.character[position])

    def check(self, S: FiniteInverseSemigroup, E: IdempotentSet) -> None:
        if self.left != "trivial" or self.right != "multiplication":
            raise ValueError(f"Unsupported actions {self.left}/{self.right}")
        if self.character is not None and len(self.character) != len(E):
            raise DimensionMismatch(len(E), len(self.character))
        for p, e in enumerate(E.indices):
            for q, f in enumerate(E.indices):
                ef = E.position(S.multiply(e, f))
                if self.epsilon(ef) != self.epsilon(p) * self.epsilon(q):
                    raise ValueError(
                        f"Character is not multiplicative on ({S.elements[e]}, {S.elements[f]})")


class SemigroupAlgebra:
    """Exact semigroup algebra of S with point-mass basis delta_s."""

    def __init__(self, S: FiniteInverseSemigroup, actions: Optional[ActionSpec] = None,
                 max_size: int = MAX_ALGEBRA_SIZE) -> None:
        check_size(S.name, S.size, max_size)
        self.semigroup = S
        self.dim = S.size
        self.idempotents = idempotents(S)
        self.actions = actions or ActionSpec()
        self.actions.check(S, self.idempotents)

    def delta(self, i: int) -> np.ndarray:
        return unit_vector(self.dim, i)

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        if x.size != self.dim:
            raise DimensionMismatch(self.dim, x.size)
        return x

    def convolve(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """delta_s * delta_t = delta_st, extended bilinearly."""
        x, y = self._check(x), self._check(y)
        out = zero_vector(self.dim)
        ix, iy = np.flatnonzero(x != 0), np.flatnonzero(y != 0)
        for s in ix:
            row = self.semigroup.table[s]
            for t in iy:
                out[row[t]] += x[s] * y[t]
        return out

    def left_action(self, e: int, x: np.ndarray) -> np.ndarray:
        return self.actions.epsilon(self.idempotents.position(e)) * self._check(x)

    def right_action(self, x: np.ndarray, e: int) -> np.ndarray:
        if e not in self.idempotents:
            raise ValueError(f"{self.semigroup.elements[e]} is not an idempotent")
        return self.convolve(x, self.delta(e))


def j_generator_pairs(S: FiniteInverseSemigroup) -> List[Tuple[int, int]]:
    """Distinct index pairs (set, st) over s, t in S and e in E, deduplicated."""
    t = S.table
    pairs = set()
    for e in idempotents(S).indices:
        set_ = t[t[:, e]]        # set_[s, u] = (s e) u
        diff = np.argwhere(set_ != t)
        for s, u in diff:
            a, b = int(set_[s, u]), int(t[s, u])
            pairs.add((min(a, b), max(a, b)))
    return sorted(pairs)


def compute_J_span(S: FiniteInverseSemigroup, max_size: int = MAX_ALGEBRA_SIZE) -> Subspace:
    """Span of delta_set - delta_st over all s, t in S and idempotents e."""
    check_size(S.name, S.size, max_size)
    n = S.size
    vectors = [unit_vector(n, a) - unit_vector(n, b) for a, b in j_generator_pairs(S)]
    J = Subspace.span(vectors, n)
    logger.debug(f"J for {S.name}: {len(vectors)} generators, dimension {J.rank}")
    return J


def _components(adjacency: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    """Connected components of an undirected graph, numbered by smallest member."""
    _, labels = connected_components(csr_matrix(adjacency.astype(np.int8)), directed=False)
    classes: Dict[int, List[int]] = {}
    for i, c in enumerate(labels):
        classes.setdefault(int(c), []).append(i)
    return tuple(sorted((tuple(v) for v in classes.values()), key=lambda c: c[0]))


@dataclass(frozen=True, eq=False)
class Congruence:
    semigroup: FiniteInverseSemigroup
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    quotient_table: np.ndarray

    @property
    def order(self) -> int:
        return len(self.classes)

    def class_labels(self) -> List[List[str]]:
        return [[self.semigroup.elements[i] for i in c] for c in self.classes]

    def is_homomorphism(self) -> bool:
        """s -> [s] carries the Cayley table onto the quotient table."""
        cls = np.array(self.class_of)
        return bool(np.array_equal(cls[self.semigroup.table],
                                   self.quotient_table[np.ix_(cls, cls)]))


def congruence(S: FiniteInverseSemigroup, J: Subspace) -> Congruence:
    """Classes of s ~ t iff delta_s - delta_t in J, with the quotient table.

    Raises:
        QuotientIllDefined: multiplication does not respect the classes
    """
    n = S.size
    if J.dim_ambient != n:
        raise DimensionMismatch(n, J.dim_ambient)
    related = np.eye(n, dtype=bool)
    for s in range(n):
        for t in range(s + 1, n):
            related[s, t] = related[t, s] = J.member(unit_vector(n, s) - unit_vector(n, t))
    classes = _components(related)
    for c in classes:
        # J is a subspace, so membership is already transitive
        assert related[np.ix_(c, c)].all(), f"Relation from J is not transitive on {c}"
    class_of = [0] * n
    for k, c in enumerate(classes):
        for i in c:
            class_of[i] = k
    reps = [c[0] for c in classes]
    q = np.array([[class_of[S.table[a, b]] for b in reps] for a in reps], dtype=np.int64)
    cls = np.array(class_of)
    bad = np.argwhere(cls[S.table] != q[np.ix_(cls, cls)])
    if bad.size:
        s, t = (int(x) for x in bad[0])
        raise QuotientIllDefined(s, t, reps[class_of[s]], reps[class_of[t]])
    q.setflags(write=False)
    return Congruence(S, classes, tuple(class_of), q)


@dataclass(frozen=True)
class QuotientGroupReport:
    congruence: Congruence
    is_group: bool
    identity: Optional[int]
    inverses: Optional[Tuple[int, ...]]
    failure: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    @property
    def order(self) -> int:
        return self.congruence.order

    def to_json(self) -> Dict:
        data = {"is_group": self.is_group, "order": self.order}
        if not self.is_group:
            data["failure"] = self.failure
            data["witness"] = list(self.witness) if self.witness else None
        return data


def quotient_group_report(cong: Congruence) -> QuotientGroupReport:
    """Check the quotient table against the group axioms; failures are values."""
    q = cong.quotient_table
    k = q.shape[0]
    triple = find_nonassociative_triple(q)
    if triple is not None:
        return QuotientGroupReport(cong, False, None, None, "not associative", triple)
    everything = np.arange(k)
    identity = None
    for u in range(k):
        if np.array_equal(q[u], everything) and np.array_equal(q[:, u], everything):
            identity = u
            break
    if identity is None:
        return QuotientGroupReport(cong, False, None, None, "no identity class")
    inverses = []
    for x in range(k):
        ys = np.flatnonzero((q[x] == identity) & (q[:, x] == identity))
        if ys.size == 0:
            return QuotientGroupReport(cong, False, identity, None, "no inverse", (x,))
        inverses.append(int(ys[0]))
    return QuotientGroupReport(cong, True, identity, tuple(inverses))


@dataclass(frozen=True)
class ModuleSuperAmenability:
    """Verdict from the quotient-finiteness criterion.

    route is "quotient-finiteness" when E is upward directed, and then the
    verdict is |S/~| finite; otherwise route is "not covered" and verdict is
    None until a diagonal search settles it (see settled_by).
    """
    verdict: Optional[bool]
    route: str
    quotient_order: int
    directed: DirectedResult
    decided_by: Optional[str] = None

    def settled_by(self, diagonal_found: bool) -> "ModuleSuperAmenability":
        """Fill an open verdict from a diagonal search; a decided verdict is kept."""
        if self.verdict is not None:
            return self
        return replace(self, verdict=diagonal_found, decided_by="diagonal search")


def is_module_super_amenable(S: FiniteInverseSemigroup,
                             J: Optional[Subspace] = None) -> ModuleSuperAmenability:
    directed = is_upward_directed(idempotents(S))
    J = J if J is not None else compute_J_span(S)
    order = congruence(S, J).order
    if directed.directed:
        # S is finite, so S/~ is finite as well
        return ModuleSuperAmenability(True, "quotient-finiteness", order, directed, "quotient group")
    return ModuleSuperAmenability(None, "not covered", order, directed)


def minimum_group_congruence(S: FiniteInverseSemigroup) -> Tuple[Tuple[int, ...], ...]:
    """Classes of s sigma t iff se = te for some idempotent e."""
    n = S.size
    related = np.zeros((n, n), dtype=bool)
    for e in idempotents(S).indices:
        col = S.table[:, e]
        related |= col[:, None] == col[None, :]
    return _components(related)


def quotient_is_commutative_module(S: FiniteInverseSemigroup, J: Subspace) -> bool:
    """delta_se - delta_s lies in J for every s and idempotent e."""
    n = S.size
    return all(J.member(unit_vector(n, S.multiply(s, e)) - unit_vector(n, s))
               for e in idempotents(S).indices for s in range(n))


def is_two_sided_ideal(algebra: SemigroupAlgebra, J: Subspace) -> bool:
    """Convolving any basis vector of J by any point mass stays in J."""
    for row in J.basis:
        for u in range(algebra.dim):
            d = algebra.delta(u)
            if not (J.member(algebra.convolve(d, row)) and J.member(algebra.convolve(row, d))):
                return False
    return True


def quotient_report(S: FiniteInverseSemigroup, max_size: int = MAX_ALGEBRA_SIZE) -> Dict:
    """Report for the `quotient` command."""
    E = idempotents(S)
    J = compute_J_span(S, max_size)
    cong = congruence(S, J)
    group = quotient_group_report(cong)
    verdict = is_module_super_amenable(S, J)
    logger.info(f"{S.name}: dim J = {J.rank}, |S/~| = {cong.order}, "
                f"group = {group.is_group}")
    return {
        "semigroup": S.name,
        "idempotents": [S.elements[i] for i in E.indices],
        "upward_directed": verdict.directed.to_json(S),
        "J_dim": J.rank,
        "classes": cong.class_labels(),
        "quotient": group.to_json(),
        "verdict": verdict.verdict,
        "route": verdict.route,
    }
