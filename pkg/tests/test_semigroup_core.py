import numpy as np
import pytest

from src.semigroup_core import (BicyclicElement, InverseNotUnique, MalformedTable, MunnParseError,
                                MunnTree, NotAssociative, NotIdempotent, NotInverse,
                                SizeGuardError, bicyclic_group_map, bicyclic_is_idempotent,
                                bicyclic_leq, bicyclic_multiply, bicyclic_star,
                                bicyclic_upper_bound, brandt, cyclic_group, format_word,
                                from_cayley_json, generated_inverse_semigroup, idempotents,
                                is_upward_directed, max_semilattice, meet_semilattice_nondirected,
                                munn_inverse, munn_is_idempotent, munn_leq, munn_multiply,
                                munn_upper_bound, parse_munn_word, random_munn_word, reduce_word,
                                symmetric_inverse_monoid, to_cayley_json, truncated_add_monoid,
                                validate)


# --- validation ---

def test_validate_cyclic_group_two():
    S = validate([[0, 1], [1, 0]])
    assert S.star.tolist() == [0, 1]


def test_validate_max_table_all_self_inverse():
    S = validate([[0, 1], [1, 1]], elements=["1", "2"])
    assert S.star.tolist() == [0, 1]


def test_left_zero_semigroup_has_two_inverses():
    with pytest.raises(InverseNotUnique) as info:
        validate([[0, 0], [1, 1]])
    assert info.value.element == 0
    assert info.value.candidates == (0, 1)


def test_nonassociative_triple_is_first_in_order():
    # x y = y + 1 mod 3 is not associative
    table = [[1, 2, 0], [1, 2, 0], [1, 2, 0]]
    with pytest.raises(NotAssociative) as info:
        validate(table)
    assert info.value.triple == (0, 0, 0)


def test_monoid_without_inverses_is_rejected():
    with pytest.raises(NotInverse) as info:
        validate(truncated_add_monoid(2).table)
    assert info.value.element == 1


def test_declared_star_is_checked():
    with pytest.raises(NotInverse):
        validate([[0, 1], [1, 0]], star=[1, 0])


@pytest.mark.parametrize("table", [[[0, 1]], [[0, 2], [1, 0]], [[0.0, 1.0], [1.0, 0.0]], []])
def test_malformed_tables(table):
    with pytest.raises(MalformedTable):
        validate(table)


def test_size_guard():
    with pytest.raises(SizeGuardError) as info:
        validate(cyclic_group(5).table, max_size=4)
    assert info.value.size == 5 and info.value.limit == 4


# --- idempotents and directedness ---

def test_idempotents_of_group_is_identity():
    E = idempotents(cyclic_group(3))
    assert E.indices == (0,)


def test_idempotents_of_max_semilattice():
    S = max_semilattice(3)
    E = idempotents(S)
    assert E.indices == (0, 1, 2)
    # e <= f iff ef = e, and max(e, f) = e means e is the larger number
    assert E.leq(2, 0) and not E.leq(0, 2)


def test_idempotents_of_symmetric_inverse_monoid(i2):
    E = idempotents(i2)
    assert sorted(i2.elements[e] for e in E.indices) == ["--", "-2", "1-", "12"]


def test_natural_order_is_antisymmetric(i2):
    order = idempotents(i2).order
    assert not np.any(order & order.T & ~np.eye(order.shape[0], dtype=bool))


def test_unital_semigroups_are_directed(i2):
    assert is_upward_directed(idempotents(i2)).directed
    assert is_upward_directed(idempotents(max_semilattice(5))).directed


def test_meet_semilattice_not_directed():
    S = meet_semilattice_nondirected()
    result = is_upward_directed(idempotents(S))
    assert not result.directed
    assert [S.elements[i] for i in result.witness] == ["e", "f"]
    assert result.to_json(S) == {"witness": ["e", "f"]}


def test_brandt_idempotents_not_directed():
    S = brandt(2)
    E = idempotents(S)
    assert sorted(S.elements[e] for e in E.indices) == ["(1,1)", "(2,2)", "0"]
    assert not is_upward_directed(E).directed


# --- constructors ---

@pytest.mark.parametrize("n, size", [(1, 2), (2, 7), (3, 34)])
def test_symmetric_inverse_monoid_sizes(n, size):
    assert symmetric_inverse_monoid(n).size == size


def test_symmetric_inverse_monoid_degree_guard():
    with pytest.raises(SizeGuardError):
        symmetric_inverse_monoid(5)


def test_max_semilattice_table():
    S = max_semilattice(2)
    assert S.elements == ("1", "2")
    assert S.table.tolist() == [[0, 1], [1, 1]]


def test_truncated_add_monoid():
    T1 = truncated_add_monoid(1)
    assert T1.table.tolist() == [[0, 1], [1, 1]]
    assert T1.identity() == 0 and T1.is_commutative()
    T2 = truncated_add_monoid(2)
    assert not hasattr(T2, "star")
    assert T2.identity() == 0


def test_brandt_two():
    S = brandt(2)
    assert S.size == 5
    x = S.index("(1,2)")
    assert S.elements[S.multiply(x, x)] == "0"
    assert S.elements[S.multiply(x, S.index("(2,1)"))] == "(1,1)"


def test_generated_inverse_semigroup_gives_i2():
    S = generated_inverse_semigroup(2, [[2, 1], [1, None]])
    assert S.size == 7


def test_cayley_json_round_trip(i2):
    assert from_cayley_json(to_cayley_json(i2)) == i2


def random_partial_perms(seed, degree=3, count=2):
    rng = np.random.default_rng(seed)
    gens = []
    for _ in range(count):
        images = rng.permutation(degree) + 1
        undefined = rng.random(degree) < 0.3
        gens.append([None if u else int(v) for u, v in zip(undefined, images)])
    return gens


INVERSE_CORPUS = ([max_semilattice(k) for k in range(1, 9)]
                  + [cyclic_group(n) for n in range(1, 7)]
                  + [brandt(n) for n in (1, 2, 3)]
                  + [symmetric_inverse_monoid(n) for n in (1, 2, 3)]
                  + [truncated_add_monoid(1), meet_semilattice_nondirected()]
                  + [generated_inverse_semigroup(3, random_partial_perms(seed), name=f"random_{seed}")
                     for seed in range(5)])


@pytest.mark.parametrize("S", INVERSE_CORPUS, ids=lambda S: S.name)
def test_inverse_semigroup_laws(S):
    t, star = S.table, S.star
    n = S.size
    assert np.array_equal(star[star], np.arange(n))
    # (st)* = t* s*
    assert np.array_equal(star[t], t[np.ix_(star, star)].T)
    E = idempotents(S).indices
    for e in E:
        for f in E:
            assert t[e, f] == t[f, e]
            assert (t[e, f] == e) == (t[f, e] == e)
            assert idempotents(S).leq(e, f) == (t[e, f] == e)


# --- Munn trees ---

def test_reduce_word():
    assert reduce_word("aAb") == "b"
    assert reduce_word("abBA") == ""


def test_parse_munn_words():
    aa = parse_munn_word("aa*")
    assert munn_is_idempotent(aa)
    assert aa.vertices == frozenset({"", "a"})
    assert parse_munn_word("a^2(a^2)*") == parse_munn_word("aaa*a*")
    assert parse_munn_word("a²(a²)*") == parse_munn_word("aaa*a*")


@pytest.mark.parametrize("text", ["", "a(", "a)", "c", "a^0", "()"])
def test_parse_munn_errors(text):
    with pytest.raises((MunnParseError, ValueError)):
        parse_munn_word(text)


def test_no_upper_bound_for_aa_and_bb():
    assert munn_upper_bound(parse_munn_word("aa*"), parse_munn_word("bb*")) is None


def test_upper_bound_of_nested_idempotents():
    aa, a2 = parse_munn_word("aa*"), parse_munn_word("a^2(a^2)*")
    assert munn_upper_bound(aa, a2) == aa
    assert munn_leq(a2, aa) and not munn_leq(aa, a2)
    assert munn_multiply(a2, aa) == a2


def test_munn_order_needs_idempotents():
    with pytest.raises(NotIdempotent):
        munn_leq(parse_munn_word("a"), parse_munn_word("aa*"))


def test_munn_multiplication_associative_and_regular(rng):
    for _ in range(50):
        x, y, z = (MunnTree.from_word(random_munn_word(rng, 5)) for _ in range(3))
        assert munn_multiply(munn_multiply(x, y), z) == munn_multiply(x, munn_multiply(y, z))
        assert munn_multiply(munn_multiply(x, munn_inverse(x)), x) == x


def test_munn_label():
    assert parse_munn_word("aa*").label == "{1,a} -> 1"
    assert format_word("aB") == "ab*"


# --- bicyclic semigroup ---

def test_bicyclic_product():
    assert bicyclic_multiply(BicyclicElement(1, 0), BicyclicElement(0, 1)) == BicyclicElement(1, 1)
    assert bicyclic_multiply(BicyclicElement(0, 1), BicyclicElement(1, 0)) == BicyclicElement(0, 0)


def test_bicyclic_group_map_is_homomorphism():
    grid = [BicyclicElement(m, n) for m in range(6) for n in range(6)]
    for x in grid:
        for y in grid:
            assert bicyclic_group_map(bicyclic_multiply(x, y)) == \
                bicyclic_group_map(x) + bicyclic_group_map(y)
    assert all(bicyclic_group_map(BicyclicElement(m, m)) == 0 for m in range(6))


def test_bicyclic_idempotent_order():
    e, f = BicyclicElement(3, 3), BicyclicElement(1, 1)
    assert bicyclic_is_idempotent(e)
    assert bicyclic_leq(e, f)
    assert bicyclic_upper_bound(e, f) == f
    assert bicyclic_star(BicyclicElement(2, 5)) == BicyclicElement(5, 2)
    with pytest.raises(ValueError):
        BicyclicElement(-1, 0)
