"""
Finite inverse semigroups and two symbolic infinite families.

Finite semigroups are Cayley tables: a dense numpy index matrix where entry
(i, j) is the index of s_i s_j. Element labels are opaque strings and all
internal work uses indices, in input order. The free inverse semigroup on
{a, b} is handled through Munn trees (sets of reduced words) and the
bicyclic semigroup through pairs (m, n).
"""
import itertools
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import MAX_VALIDATION_SIZE, MAX_SYMMETRIC_DEGREE

logger = logging.getLogger(__name__)


# ______________________________________________________________________________
# ERRORS

class ValidationError(ValueError):
    """Base class for tables that do not describe a (finite inverse) semigroup."""


class MalformedTable(ValidationError):
    def __init__(self, reason: str) -> None:
        super().__init__(f"Malformed Cayley table: {reason}")
        self.reason = reason


class NotAssociative(ValidationError):
    def __init__(self, i: int, j: int, k: int) -> None:
        super().__init__(f"(s{i} s{j}) s{k} != s{i} (s{j} s{k})")
        self.triple = (i, j, k)


class NotInverse(ValidationError):
    def __init__(self, i: int, reason: str = "no t with sts = s and tst = t") -> None:
        super().__init__(f"Element {i} has no inverse: {reason}")
        self.element = i


class InverseNotUnique(ValidationError):
    def __init__(self, i: int, t1: int, t2: int) -> None:
        super().__init__(f"Element {i} has two inverses: {t1} and {t2}")
        self.element = i
        self.candidates = (t1, t2)


class SizeGuardError(ValueError):
    """Raised before a computation that would exceed a configured size limit."""

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(
            f"{what} has size {size}, above the limit of {limit} "
            f"(raise it with --max-size, or --force beyond the hard cap)")
        self.what = what
        self.size = size
        self.limit = limit


class NotIdempotent(ValueError):
    def __init__(self, element) -> None:
        super().__init__(f"{element} is not an idempotent")
        self.element = element


class MunnParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str) -> None:
        super().__init__(f"Cannot parse Munn word {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position


def check_size(what: str, size: int, limit: int) -> None:
    if size > limit:
        raise SizeGuardError(what, size, limit)


# ______________________________________________________________________________
# FINITE SEMIGROUPS

def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """An associative Cayley table with element labels."""
    name: str
    elements: Tuple[str, ...]
    table: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise ValueError(f"{label!r} is not an element of {self.name}") from None

    def multiply(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def identity(self) -> Optional[int]:
        """Index of the two-sided identity, if there is one."""
        n = self.size
        everything = np.arange(n)
        for u in range(n):
            if np.array_equal(self.table[u], everything) and \
                    np.array_equal(self.table[:, u], everything):
                return u
        return None

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSemigroup) or type(self) is not type(other):
            return NotImplemented
        return (self.name == other.name and self.elements == other.elements
                and np.array_equal(self.table, other.table))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class FiniteInverseSemigroup(FiniteSemigroup):
    """A validated finite inverse semigroup; star[i] is the index of s_i*."""
    star: np.ndarray = field(default=None)

    def __eq__(self, other) -> bool:
        base = super().__eq__(other)
        if base is NotImplemented or not base:
            return base
        return bool(np.array_equal(self.star, other.star))

    __hash__ = None


def check_table(table) -> np.ndarray:
    """Return table as a square int64 array with entries in range."""
    try:
        t = np.asarray(table)
    except ValueError as e:
        raise MalformedTable(str(e)) from None
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise MalformedTable(f"expected a square table, got shape {t.shape}")
    if t.shape[0] == 0:
        raise MalformedTable("empty table")
    if t.dtype == object or not np.issubdtype(t.dtype, np.integer):
        raise MalformedTable("entries must be integers")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if bad.size:
        i, j = bad[0]
        raise MalformedTable(f"entry ({i},{j}) = {t[i, j]} is out of range 0..{n - 1}")
    return t.astype(np.int64)


def find_nonassociative_triple(table: np.ndarray) -> Optional[Tuple[int, int, int]]:
    """Lexicographically first (i, j, k) with (ij)k != i(jk), or None."""
    for i in range(table.shape[0]):
        left = table[table[i]]       # left[j, k] = (s_i s_j) s_k
        right = table[i][table]      # right[j, k] = s_i (s_j s_k)
        bad = np.argwhere(left != right)
        if bad.size:
            j, k = bad[0]
            return i, int(j), int(k)
    return None


def _labels(elements: Optional[Sequence[str]], n: int) -> Tuple[str, ...]:
    if elements is None:
        return tuple(str(i) for i in range(n))
    if len(elements) != n:
        raise MalformedTable(f"{len(elements)} labels for a table of size {n}")
    if len(set(elements)) != n:
        raise MalformedTable("element labels are not distinct")
    return tuple(str(e) for e in elements)


def make_semigroup(table, name: str = "S", elements: Optional[Sequence[str]] = None,
                   max_size: int = MAX_VALIDATION_SIZE) -> FiniteSemigroup:
    """Validate associativity only."""
    t = check_table(table)
    check_size(name, t.shape[0], max_size)
    triple = find_nonassociative_triple(t)
    if triple is not None:
        raise NotAssociative(*triple)
    return FiniteSemigroup(name, _labels(elements, t.shape[0]), _readonly(t))


def validate(table, star=None, name: str = "S", elements: Optional[Sequence[str]] = None,
             max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    """Validate a Cayley table as a finite inverse semigroup.

    Args:
        table: |S| x |S| array of element indices
        star: optional declared inverse map; inferred when absent
        name: label of the semigroup
        elements: element labels, defaults to "0", "1", ...
        max_size: size guard

    Returns:
        FiniteInverseSemigroup: the validated structure

    Raises:
        NotAssociative: first failing triple in lexicographic order
        NotInverse: first element without an inverse (or with a wrong declared one)
        InverseNotUnique: first element with two inverses
        SizeGuardError: the table is larger than max_size
    """
    semigroup = make_semigroup(table, name, elements, max_size)
    t = semigroup.table
    n = t.shape[0]
    everything = np.arange(n)
    declared = None
    if star is not None:
        declared = np.asarray(star)
        if declared.shape != (n,) or np.any((declared < 0) | (declared >= n)):
            raise MalformedTable("star must list one in-range index per element")
    inverse = np.empty(n, dtype=np.int64)
    for s in range(n):
        sts = t[t[s], s]                 # s t s for every t
        tst = t[t[:, s], everything]     # t s t for every t
        candidates = np.flatnonzero((sts == s) & (tst == everything))
        if candidates.size == 0:
            raise NotInverse(s)
        if candidates.size > 1:
            raise InverseNotUnique(s, int(candidates[0]), int(candidates[1]))
        inverse[s] = candidates[0]
        if declared is not None and declared[s] != inverse[s]:
            raise NotInverse(s, f"declared star {declared[s]} is not the inverse "
                                f"{inverse[s]}")
    logger.debug(f"Validated inverse semigroup {name} of size {n}")
    return FiniteInverseSemigroup(semigroup.name, semigroup.elements, semigroup.table,
                                  _readonly(inverse))


# ______________________________________________________________________________
# IDEMPOTENTS AND THE NATURAL ORDER

@dataclass(frozen=True, eq=False)
class IdempotentSet:
    """Idempotents of S with the natural order.

    order[a, b] is True when indices[a] <= indices[b], i.e. e f = e.
    """
    indices: Tuple[int, ...]
    order: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def position(self, i: int) -> int:
        return self.indices.index(i)

    def leq(self, e: int, f: int) -> bool:
        return bool(self.order[self.position(e), self.position(f)])


def idempotents(S: FiniteInverseSemigroup) -> IdempotentSet:
    t = S.table
    everything = np.arange(S.size)
    squares = t[everything, everything] == everything
    selfstar = S.star == everything
    # in an inverse semigroup e^2 = e already forces e* = e
    assert np.array_equal(squares, squares & selfstar), \
        f"Idempotent of {S.name} that is not self-inverse"
    idx = np.flatnonzero(squares & selfstar)
    order = t[np.ix_(idx, idx)] == idx[:, None]
    order.setflags(write=False)
    return IdempotentSet(tuple(int(i) for i in idx), order)


@dataclass(frozen=True)
class DirectedResult:
    directed: bool
    witness: Optional[Tuple[int, int]] = None

    def to_json(self, S: FiniteSemigroup):
        if self.directed:
            return True
        e, f = self.witness
        return {"witness": [S.elements[e], S.elements[f]]}


def is_upward_directed(E: IdempotentSet) -> DirectedResult:
    """Every pair e, f of idempotents has g with eg = e and fg = f.

    The witness is the lexicographically first pair without a common upper
    bound, as indices into S.
    """
    order = E.order
    for a in range(len(E)):
        # bounded[b, g]: both indices[a] and indices[b] lie below indices[g]
        bounded = order[a][None, :] & order
        missing = np.flatnonzero(~bounded.any(axis=1))
        if missing.size:
            return DirectedResult(False, (E.indices[a], E.indices[int(missing[0])]))
    return DirectedResult(True)


# ______________________________________________________________________________
# PARTIAL PERMUTATIONS

@dataclass(frozen=True)
class PartialPerm:
    """Partial injection of {1..degree}; images[x-1] is None where undefined.

    Products act on the right: (s t)(x) = t(s(x)).
    """
    degree: int
    images: Tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        if self.degree < 1 or len(self.images) != self.degree:
            raise ValueError(f"Partial permutation needs {self.degree} images, "
                             f"got {len(self.images)}")
        defined = [y for y in self.images if y is not None]
        if any(not 1 <= y <= self.degree for y in defined):
            raise ValueError(f"Image out of range in {self.images}")
        if len(set(defined)) != len(defined):
            raise ValueError(f"Partial permutation {self.images} is not injective")

    def compose(self, other: "PartialPerm") -> "PartialPerm":
        return PartialPerm(self.degree, tuple(
            None if y is None else other.images[y - 1] for y in self.images))

    def inverse(self) -> "PartialPerm":
        images: List[Optional[int]] = [None] * self.degree
        for x, y in enumerate(self.images, start=1):
            if y is not None:
                images[y - 1] = x
        return PartialPerm(self.degree, tuple(images))

    @property
    def rank(self) -> int:
        return sum(y is not None for y in self.images)

    def sort_key(self) -> Tuple:
        return (self.rank, tuple(y or 0 for y in self.images))

    @property
    def label(self) -> str:
        sep = "" if self.degree < 10 else ","
        return sep.join("-" if y is None else str(y) for y in self.images)


def _from_partial_perms(name: str, perms: Sequence[PartialPerm],
                        max_size: int) -> FiniteInverseSemigroup:
    check_size(name, len(perms), max_size)
    position = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = position[p.compose(q)]
    star = [position[p.inverse()] for p in perms]
    return validate(table, star, name, [p.label for p in perms], max_size)


def symmetric_inverse_monoid(n: int, max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    """All partial injections of {1..n}, ordered by rank then images."""
    if n < 1:
        raise ValueError("symmetric_inverse_monoid needs n >= 1")
    check_size(f"I_{n} degree", n, MAX_SYMMETRIC_DEGREE)
    perms = []
    points = range(1, n + 1)
    for k in range(n + 1):
        for domain in itertools.combinations(points, k):
            for image in itertools.permutations(points, k):
                images: List[Optional[int]] = [None] * n
                for x, y in zip(domain, image):
                    images[x - 1] = y
                perms.append(PartialPerm(n, tuple(images)))
    perms.sort(key=PartialPerm.sort_key)
    return _from_partial_perms(f"I{n}", perms, max_size)


def generated_inverse_semigroup(degree: int, generators: Iterable[Sequence[Optional[int]]],
                                name: Optional[str] = None,
                                max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    """Inverse subsemigroup of I_degree generated by partial permutations.

    Closes under composition and inversion with a worklist; elements appear
    in discovery order.
    """
    elements: List[PartialPerm] = []
    seen = set()

    def add(p: PartialPerm) -> None:
        if p not in seen:
            seen.add(p)
            elements.append(p)
            check_size(name or "generated semigroup", len(elements), max_size)

    for g in generators:
        p = PartialPerm(degree, tuple(g))
        add(p)
        add(p.inverse())
    if not elements:
        raise ValueError("At least one generator is required")
    i = 0
    while i < len(elements):
        x = elements[i]
        for j in range(i + 1):
            y = elements[j]
            add(x.compose(y))
            add(y.compose(x))
        i += 1
    logger.debug(f"Generated {len(elements)} partial permutations of degree {degree}")
    return _from_partial_perms(name or f"generated_{degree}", elements, max_size)


# ______________________________________________________________________________
# CORPUS

def max_semilattice(k: int) -> FiniteInverseSemigroup:
    """{1..k} under max."""
    if k < 1:
        raise ValueError("max_semilattice needs k >= 1")
    check_size("max_semilattice", k, MAX_VALIDATION_SIZE)
    idx = np.arange(k)
    return validate(np.maximum.outer(idx, idx), name=f"max_semilattice:{k}",
                    elements=[str(i + 1) for i in idx])


def cyclic_group(n: int) -> FiniteInverseSemigroup:
    """Z/n written multiplicatively: e, g, g^2, ..."""
    if n < 1:
        raise ValueError("cyclic_group needs n >= 1")
    check_size("cyclic_group", n, MAX_VALIDATION_SIZE)
    idx = np.arange(n)
    labels = ["e", "g"] + [f"g^{i}" for i in range(2, n)]
    return validate(np.add.outer(idx, idx) % n, name=f"cyclic_group:{n}",
                    elements=labels[:n])


def brandt(n: int) -> FiniteInverseSemigroup:
    """Matrix units (i,j), 1 <= i,j <= n, plus a zero: (i,j)(k,l) = (i,l) if j = k."""
    if n < 1:
        raise ValueError("brandt needs n >= 1")
    size = n * n + 1
    check_size("brandt", size, MAX_VALIDATION_SIZE)
    zero = n * n
    table = np.full((size, size), zero, dtype=np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        table[i * n + j, j * n + l] = i * n + l
    labels = [f"({i + 1},{j + 1})" for i in range(n) for j in range(n)] + ["0"]
    return validate(table, name=f"brandt:{n}", elements=labels)


def truncated_add_monoid(k: int) -> FiniteSemigroup:
    """{0..k} under min(s + t, k).

    A commutative monoid for every k; an inverse semigroup only for k <= 1,
    in which case the validated inverse structure is returned.
    """
    if k < 1:
        raise ValueError("truncated_add_monoid needs k >= 1")
    check_size("truncated_add_monoid", k + 1, MAX_VALIDATION_SIZE)
    idx = np.arange(k + 1)
    table = np.minimum(np.add.outer(idx, idx), k)
    name = f"truncated_add_monoid:{k}"
    labels = [str(i) for i in idx]
    try:
        return validate(table, name=name, elements=labels)
    except NotInverse:
        logger.debug(f"{name} is a monoid without inverses")
        return make_semigroup(table, name=name, elements=labels)


def meet_semilattice_nondirected() -> FiniteInverseSemigroup:
    """{0, e, f} with ef = 0: idempotents without a common upper bound."""
    table = [[0, 0, 0],
             [0, 1, 0],
             [0, 0, 2]]
    return validate(table, name="meet_semilattice_nondirected", elements=["0", "e", "f"])


# ______________________________________________________________________________
# CAYLEY JSON

def to_cayley_json(S: FiniteSemigroup) -> Dict:
    data = {"name": S.name, "elements": list(S.elements),
            "table": S.table.tolist()}
    if isinstance(S, FiniteInverseSemigroup):
        data["star"] = S.star.tolist()
    return data


def from_cayley_json(data: Dict, max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    table = np.array(data["table"], dtype=np.int64)
    return validate(table, data.get("star"), data.get("name", "S"),
                    data.get("elements"), max_size)


# ______________________________________________________________________________
# FREE INVERSE SEMIGROUP ON {a, b}: MUNN TREES
# Words are strings over "aAbB" with A = a^-1 and B = b^-1.

_INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}


def reduce_word(word: str) -> str:
    """Free reduction in the free group on {a, b}."""
    stack: List[str] = []
    for letter in word:
        if stack and stack[-1] == _INVERSE_LETTER[letter]:
            stack.pop()
        else:
            stack.append(letter)
    return "".join(stack)


def invert_word(word: str) -> str:
    return "".join(_INVERSE_LETTER[x] for x in reversed(word))


def format_word(word: str) -> str:
    """Render "aA" as "aa*"; the empty word is "1"."""
    if not word:
        return "1"
    return "".join(x if x.islower() else x.lower() + "*" for x in word)


@dataclass(frozen=True)
class MunnTree:
    """Element of the free inverse semigroup: vertices are reduced words
    (the root is the empty word) and end is the reduced word of the element."""
    vertices: frozenset
    end: str

    def __post_init__(self) -> None:
        if "" not in self.vertices or self.end not in self.vertices:
            raise ValueError("Munn tree must contain its root and end vertex")
        if len(self.vertices) < 2:
            raise ValueError("Munn tree needs at least one edge")
        for v in self.vertices:
            if v and v[:-1] not in self.vertices:
                raise ValueError(f"Vertex {v!r} is not connected to the root")

    @classmethod
    def from_word(cls, word: str) -> "MunnTree":
        if not word:
            raise ValueError("The empty word is not an element of the free inverse semigroup")
        if set(word) - set(_INVERSE_LETTER):
            raise ValueError(f"Unknown letters in {word!r}")
        vertices = frozenset(reduce_word(word[:i]) for i in range(len(word) + 1))
        return cls(vertices, reduce_word(word))

    @property
    def label(self) -> str:
        verts = ",".join(format_word(v) for v in sorted(self.vertices, key=lambda w: (len(w), w)))
        return f"{{{verts}}} -> {format_word(self.end)}"


def parse_munn_word(text: str) -> MunnTree:
    """Parse words such as "aa*", "a^2(a^2)*" or "b*ab" into a Munn tree.

    Grammar: factors of a letter (a, b, or A, B for inverses) or a
    parenthesised word, each followed by any number of "*" (inverse) and
    "^k" (power) suffixes.
    """
    superscripts = {"²": "^2", "³": "^3", "⁴": "^4", "⁵": "^5"}
    src = "".join(superscripts.get(c, c) for c in text if not c.isspace())
    pos = 0

    def sequence() -> str:
        nonlocal pos
        parts = []
        while pos < len(src) and src[pos] != ")":
            parts.append(factor())
        return "".join(parts)

    def factor() -> str:
        nonlocal pos
        c = src[pos]
        if c in _INVERSE_LETTER:
            word = c
            pos += 1
        elif c == "(":
            pos += 1
            word = sequence()
            if pos >= len(src) or src[pos] != ")":
                raise MunnParseError(text, pos, "missing ')'")
            pos += 1
            if not word:
                raise MunnParseError(text, pos, "empty parentheses")
        else:
            raise MunnParseError(text, pos, f"unexpected {c!r}")
        while pos < len(src) and src[pos] in "*^":
            if src[pos] == "*":
                word = invert_word(word)
                pos += 1
            else:
                pos += 1
                start = pos
                while pos < len(src) and src[pos].isdigit():
                    pos += 1
                if start == pos or int(src[start:pos]) < 1:
                    raise MunnParseError(text, start, "expected a positive exponent")
                word = word * int(src[start:pos])
        return word

    word = sequence()
    if pos != len(src):
        raise MunnParseError(text, pos, "unbalanced ')'")
    if not word:
        raise MunnParseError(text, 0, "empty word")
    return MunnTree.from_word(word)


def munn_multiply(u: MunnTree, v: MunnTree) -> MunnTree:
    """Translate v to the end of u and take the union."""
    shifted = {reduce_word(u.end + w) for w in v.vertices}
    return MunnTree(u.vertices | frozenset(shifted), reduce_word(u.end + v.end))


def munn_inverse(u: MunnTree) -> MunnTree:
    back = invert_word(u.end)
    return MunnTree(frozenset(reduce_word(back + w) for w in u.vertices), back)


def munn_is_idempotent(u: MunnTree) -> bool:
    return u.end == ""


def munn_leq(e: MunnTree, f: MunnTree) -> bool:
    """e <= f iff tree(f) is contained in tree(e)."""
    for x in (e, f):
        if not munn_is_idempotent(x):
            raise NotIdempotent(x.label)
    return f.vertices <= e.vertices


def munn_upper_bound(e: MunnTree, f: MunnTree) -> Optional[MunnTree]:
    """Greatest common upper bound of two idempotents, or None.

    Without an identity the single-vertex tree is not an element, so an
    intersection consisting of the root alone means there is no bound.
    """
    for x in (e, f):
        if not munn_is_idempotent(x):
            raise NotIdempotent(x.label)
    common = e.vertices & f.vertices
    if len(common) < 2:
        return None
    g = MunnTree(frozenset(common), "")
    assert munn_multiply(e, g) == e and munn_multiply(f, g) == f
    return g


def random_munn_word(rng: np.random.Generator, max_length: int) -> str:
    length = int(rng.integers(1, max_length + 1))
    return "".join(rng.choice(list("aAbB"), size=length))


# ______________________________________________________________________________
# BICYCLIC SEMIGROUP

@dataclass(frozen=True)
class BicyclicElement:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError(f"Bicyclic components must be nonnegative, got ({self.m},{self.n})")

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


def bicyclic_multiply(x: BicyclicElement, y: BicyclicElement) -> BicyclicElement:
    k = max(x.n, y.m)
    return BicyclicElement(x.m - x.n + k, y.n - y.m + k)


def bicyclic_star(x: BicyclicElement) -> BicyclicElement:
    return BicyclicElement(x.n, x.m)


def bicyclic_group_map(x: BicyclicElement) -> int:
    """Homomorphism onto the integers."""
    return x.m - x.n


def bicyclic_is_idempotent(x: BicyclicElement) -> bool:
    return x.m == x.n


def bicyclic_leq(e: BicyclicElement, f: BicyclicElement) -> bool:
    """(m,m) <= (n,n) iff m >= n."""
    for x in (e, f):
        if not bicyclic_is_idempotent(x):
            raise NotIdempotent(str(x))
    return e.m >= f.m


def bicyclic_upper_bound(e: BicyclicElement, f: BicyclicElement) -> BicyclicElement:
    """Idempotents form a chain, so the larger one bounds both."""
    for x in (e, f):
        if not bicyclic_is_idempotent(x):
            raise NotIdempotent(str(x))
    k = min(e.m, f.m)
    return BicyclicElement(k, k)
