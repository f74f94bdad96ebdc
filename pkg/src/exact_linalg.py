"""
Exact rational linear algebra.

Vectors and matrices are numpy object arrays holding Python ints or
fractions.Fraction, so arithmetic never rounds and never overflows. Subspaces
keep an integer reduced row echelon form: every row is primitive (the gcd of
its entries is 1), its leading entry is positive and every other row is zero
in its pivot column. Dividing each row by its pivot entry gives the rational
RREF, which is unique for a given row space.
"""
import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class DimensionMismatch(ValueError):
    """A vector or subspace does not live in the expected ambient space."""

    def __init__(self, expected: int, got: int) -> None:
        super().__init__(
            f"Ambient dimension mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


def zero_vector(dim: int) -> np.ndarray:
    """Return the exact zero vector of length dim."""
    return np.zeros(dim, dtype=object)


def unit_vector(dim: int, index: int, value=1) -> np.ndarray:
    """Return value * e_index in dimension dim."""
    v = zero_vector(dim)
    v[index] = value
    return v


def as_exact(values: Iterable) -> np.ndarray:
    """Convert ints, Fractions or "num/den" strings to an exact object array.

    Floats are rejected: no tolerance may enter an exact computation.
    """
    out = []
    for x in values:
        if isinstance(x, (bool, np.bool_)):
            raise TypeError("Booleans are not exact scalars")
        if isinstance(x, (int, np.integer)):
            out.append(int(x))
        elif isinstance(x, Fraction):
            out.append(x)
        elif isinstance(x, str):
            out.append(Fraction(x))
        else:
            raise TypeError(f"Refusing inexact scalar {x!r} of type {type(x).__name__}")
    return np.array(out, dtype=object).reshape(-1) if out else zero_vector(0)


def as_exact_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> np.ndarray:
    """Convert a rectangular nested sequence to an exact object matrix."""
    rows = [as_exact(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    width = rows[0].size
    for r in rows:
        if r.size != width:
            raise DimensionMismatch(width, r.size)
    return np.vstack(rows) if width else np.zeros((len(rows), 0), dtype=object)


def fraction_str(x) -> str:
    """Format an exact scalar as a "num/den" string."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def vector_to_json(v: np.ndarray) -> List[str]:
    """Serialise an exact vector as a list of "num/den" strings."""
    return [fraction_str(x) for x in v]


def _integer_row(v: np.ndarray) -> np.ndarray:
    """Scale v by the lcm of its denominators; the result spans the same line."""
    row = zero_vector(v.size)
    nz = np.flatnonzero(v != 0)
    if nz.size == 0:
        return row
    entries = [v[i] for i in nz]
    den = reduce(lcm, (Fraction(x).denominator for x in entries), 1)
    for i, x in zip(nz, entries):
        f = Fraction(x)
        row[i] = f.numerator * (den // f.denominator)
    return row


def _primitive(row: np.ndarray) -> np.ndarray:
    """Divide an integer row by its content and make its leading entry positive."""
    nz = np.flatnonzero(row != 0)
    if nz.size == 0:
        return row
    g = reduce(gcd, (abs(row[i]) for i in nz))
    if row[nz[0]] < 0:
        g = -g
    if g != 1:
        row = row // g
    return row


def _reduce_row(row: np.ndarray, by_pivot: Dict[int, np.ndarray]) -> Tuple[np.ndarray, int]:
    """Return (L*row - combination of basis rows, L) for an integer row.

    Every basis row is zero at the other pivots, so only the pivots where
    row itself is nonzero need to be touched.
    """
    hits = [int(c) for c in np.flatnonzero(row != 0) if int(c) in by_pivot]
    if not hits:
        return row, 1
    p = [by_pivot[c][c] for c in hits]
    big_l = reduce(lcm, p, 1)
    out = row * big_l if big_l != 1 else row.copy()
    for c, pc in zip(hits, p):
        out = out - ((big_l // pc) * row[c]) * by_pivot[c]
    return out, big_l


class EchelonBuilder:
    """Mutable integer RREF used while a subspace is being assembled.

    Rows are inserted one at a time; insert() reports whether the row was
    independent of what is already there. freeze() returns an immutable
    Subspace.
    """

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self._by_pivot: Dict[int, np.ndarray] = {}
        self._pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(self._pivots)

    def reduce_integer(self, v: np.ndarray) -> np.ndarray:
        """Residual of an integer-scaled copy of v; zero iff v is in the span."""
        return _reduce_row(_integer_row(v), self._by_pivot)[0]

    def insert(self, v: np.ndarray) -> bool:
        """Add v to the span. Returns True if the rank grew."""
        v = np.asarray(v, dtype=object)
        if v.size != self.dim:
            raise DimensionMismatch(self.dim, v.size)
        r = self.reduce_integer(v)
        nz = np.flatnonzero(r != 0)
        if nz.size == 0:
            return False
        r = _primitive(r)
        c = int(nz[0])
        pc = r[c]
        for pivot, row in self._by_pivot.items():
            if row[c] != 0:
                self._by_pivot[pivot] = _primitive(row * pc - row[c] * r)
        self._by_pivot[c] = r
        bisect.insort(self._pivots, c)
        return True

    def freeze(self) -> "Subspace":
        if self._pivots:
            rows = np.vstack([self._by_pivot[c] for c in self._pivots])
        else:
            rows = np.zeros((0, self.dim), dtype=object)
        return Subspace(self.dim, rows, tuple(self._pivots))


class Subspace:
    """An exact linear subspace of Q^dim, stored as its integer RREF.

    Instances are immutable. Equality compares the canonical bases, so two
    subspaces are equal exactly when they have identical RREF bases.
    """

    __slots__ = ("_dim", "_rows", "_pivots", "_by_pivot", "_basis")

    def __init__(self, dim: int, rows: Optional[np.ndarray] = None,
                 pivots: Tuple[int, ...] = ()) -> None:
        self._dim = dim
        if rows is None:
            rows = np.zeros((0, dim), dtype=object)
        rows.setflags(write=False)
        self._rows = rows
        self._pivots = tuple(pivots)
        self._by_pivot = {c: rows[r] for r, c in enumerate(self._pivots)}
        self._basis = None

    # --- Constructors ---

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim)

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls.span([unit_vector(dim, i) for i in range(dim)], dim)

    @classmethod
    def span(cls, vectors: Iterable[np.ndarray], dim: int) -> "Subspace":
        """Span of the given vectors (algebraic span; all spaces are finite-dimensional)."""
        builder = EchelonBuilder(dim)
        for v in vectors:
            builder.insert(v)
        return builder.freeze()

    # --- Accessors ---

    @property
    def dim_ambient(self) -> int:
        return self._dim

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return self._pivots

    @property
    def nonpivots(self) -> Tuple[int, ...]:
        piv = set(self._pivots)
        return tuple(j for j in range(self._dim) if j not in piv)

    @property
    def integer_rows(self) -> np.ndarray:
        return self._rows

    @property
    def basis(self) -> np.ndarray:
        """Rational RREF basis (rank x dim), pivot entries equal to 1."""
        if self._basis is None:
            basis = np.zeros((self.rank, self._dim), dtype=object)
            for r, c in enumerate(self._pivots):
                p = self._rows[r, c]
                basis[r] = [Fraction(x, p) for x in self._rows[r]]
            basis.setflags(write=False)
            self._basis = basis
        return self._basis

    def __len__(self) -> int:
        return self.rank

    def __repr__(self) -> str:
        return f"Subspace(dim={self._dim}, rank={self.rank})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self._dim == other._dim and self._pivots == other._pivots
                and np.array_equal(self._rows, other._rows))

    __hash__ = None

    # --- Membership and normal forms ---

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=object)
        if v.ndim != 1 or v.size != self._dim:
            raise DimensionMismatch(self._dim, v.size)
        return v

    def _builder(self) -> EchelonBuilder:
        b = EchelonBuilder(self._dim)
        b._by_pivot = {c: np.array(row, dtype=object) for c, row in self._by_pivot.items()}
        b._pivots = list(self._pivots)
        return b

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Canonical representative of v + U: v minus sum of v[c] * basis row c."""
        v = self._check(v)
        nz = np.flatnonzero(v != 0)
        if nz.size == 0:
            return zero_vector(self._dim)
        den = reduce(lcm, (Fraction(v[i]).denominator for i in nz), 1)
        residual, big_l = _reduce_row(_integer_row(v), self._by_pivot)
        scale = Fraction(1, big_l * den)
        return np.array([x * scale for x in residual], dtype=object)

    def member(self, v: np.ndarray) -> bool:
        v = self._check(v)
        residual, _ = _reduce_row(_integer_row(v), self._by_pivot)
        return not np.any(residual != 0)

    def __contains__(self, v) -> bool:
        return self.member(v)

    def coset_equal(self, u: np.ndarray, v: np.ndarray) -> bool:
        """u + U == v + U."""
        return self.member(self._check(u) - self._check(v))

    def coset_key(self, v: np.ndarray) -> Tuple[Fraction, ...]:
        """Hashable canonical key of v + U."""
        return tuple(Fraction(x) for x in self.reduce(v))

    def complement_projector(self) -> np.ndarray:
        """Matrix K with K @ v = reduce(v) restricted to the non-pivot columns.

        K @ v == 0 exactly when v lies in the subspace, so K turns
        membership constraints into linear equalities.
        """
        nonpiv = self.nonpivots
        k = np.zeros((len(nonpiv), self._dim), dtype=object)
        basis = self.basis
        for row, j in enumerate(nonpiv):
            k[row, j] = 1
            for r, c in enumerate(self._pivots):
                if basis[r, j] != 0:
                    k[row, c] = -basis[r, j]
        return k

    # --- Subspace algebra ---

    def contains(self, other: "Subspace") -> bool:
        if other.dim_ambient != self._dim:
            raise DimensionMismatch(self._dim, other.dim_ambient)
        return all(self.member(row) for row in other.integer_rows)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.dim_ambient != self._dim:
            raise DimensionMismatch(self._dim, other.dim_ambient)
        b = self._builder()
        for row in other.integer_rows:
            b.insert(row)
        return b.freeze()

    __add__ = sum

    def extend(self, vectors: Iterable[np.ndarray]) -> "Subspace":
        b = self._builder()
        for v in vectors:
            b.insert(self._check(v))
        return b.freeze()

    def annihilator(self) -> "Subspace":
        """All y with <b, y> = 0 for every basis vector b."""
        return nullspace(self._rows, self._dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if other.dim_ambient != self._dim:
            raise DimensionMismatch(self._dim, other.dim_ambient)
        constraints = list(self.annihilator().integer_rows) + \
            list(other.annihilator().integer_rows)
        return nullspace(constraints, self._dim)

    def random_element(self, rng: np.random.Generator, bound: int = 3) -> np.ndarray:
        """Random integer combination of the basis with coefficients in [-bound, bound]."""
        v = zero_vector(self._dim)
        for row in self.basis:
            c = int(rng.integers(-bound, bound + 1))
            if c:
                v = v + c * row
        return v

    def to_json(self) -> dict:
        return {"dim_ambient": self._dim, "rank": self.rank,
                "basis": [vector_to_json(r) for r in self.basis]}


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form of a matrix."""
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def rref(matrix: Sequence[Sequence]) -> RrefResult:
    """Exact reduced row echelon form.

    Rows are eliminated in input order. The RREF of a matrix is unique, so
    the output does not depend on pivot choices and is reproducible.
    """
    m = matrix if isinstance(matrix, np.ndarray) else as_exact_matrix(matrix)
    nrows, ncols = m.shape
    space = Subspace.span(list(m), ncols)
    out = np.full((nrows, ncols), Fraction(0), dtype=object)
    if space.rank:
        out[:space.rank] = space.basis
    return RrefResult(out, space.rank, space.pivots)


@dataclass(frozen=True)
class AffineSystem:
    """Equality constraints A x = b over the rationals.

    labels optionally names each row so infeasibility can be reported in
    terms of the constraint that caused it.
    """
    matrix: np.ndarray
    rhs: np.ndarray
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.matrix.ndim != 2:
            raise ValueError("AffineSystem matrix must be two-dimensional")
        if self.rhs.size != self.matrix.shape[0]:
            raise DimensionMismatch(self.matrix.shape[0], self.rhs.size)
        if self.labels is not None and len(self.labels) != self.matrix.shape[0]:
            raise DimensionMismatch(self.matrix.shape[0], len(self.labels))

    @property
    def num_unknowns(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class AffineSolution:
    """Outcome of solve_affine: either infeasible or particular + nullspace."""
    feasible: bool
    particular: Optional[np.ndarray] = None
    nullspace: Optional[Subspace] = None
    failing_row: Optional[int] = None
    failing_label: Optional[str] = None

    def residual(self, system: AffineSystem) -> np.ndarray:
        """A x - b for the particular solution; identically zero when feasible."""
        return system.matrix.dot(self.particular) - system.rhs


def solve_affine(system: AffineSystem) -> AffineSolution:
    """Solve A x = b exactly.

    The augmented rows are inserted in order; the first row whose insertion
    creates a pivot in the right-hand-side column is reported as the failing
    constraint.
    """
    n = system.num_unknowns
    builder = EchelonBuilder(n + 1)
    for i, (row, b) in enumerate(zip(system.matrix, system.rhs)):
        builder.insert(np.append(np.asarray(row, dtype=object), b))
        if builder.pivots and builder.pivots[-1] == n:
            label = system.labels[i] if system.labels else None
            logger.debug(f"Affine system infeasible at row {i} ({label})")
            return AffineSolution(False, failing_row=i, failing_label=label)
    space = builder.freeze()
    rows, pivots = space.integer_rows, space.pivots
    x = np.full(n, Fraction(0), dtype=object)
    for r, c in enumerate(pivots):
        x[c] = Fraction(rows[r, n], rows[r, c])
    piv = set(pivots)
    kernel = []
    for f in range(n):
        if f in piv:
            continue
        y = zero_vector(n)
        y[f] = 1
        for r, c in enumerate(pivots):
            if rows[r, f] != 0:
                y[c] = Fraction(-rows[r, f], rows[r, c])
        kernel.append(y)
    logger.debug(f"Affine system solved: {len(system.rhs)} rows, {n} unknowns, "
                 f"nullity {len(kernel)}")
    return AffineSolution(True, x, Subspace.span(kernel, n))


def nullspace(rows: Sequence[np.ndarray], dim: int) -> Subspace:
    """All x with r . x = 0 for every given row r."""
    matrix = np.array(list(rows), dtype=object).reshape(-1, dim)
    system = AffineSystem(matrix, zero_vector(matrix.shape[0]))
    return solve_affine(system).nullspace


@dataclass(frozen=True)
class Coset:
    """A coset v + U, compared through its canonical representative."""
    representative: np.ndarray
    subspace: Subspace

    @classmethod
    def of(cls, v: np.ndarray, subspace: Subspace) -> "Coset":
        return cls(subspace.reduce(v), subspace)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coset):
            return NotImplemented
        return (self.subspace == other.subspace
                and self.subspace.coset_equal(self.representative, other.representative))

    __hash__ = None

    def contains(self, v: np.ndarray) -> bool:
        return self.subspace.coset_equal(self.representative, v)
