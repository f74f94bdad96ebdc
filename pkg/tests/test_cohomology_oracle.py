import pytest

from src.cohomology_oracle import (InvariantViolation, annihilated_line, augmentation_module,
                                   build_test_bimodules, character_module, cross_check,
                                   derivation_space, direct_sum, dual_module, is_derivation,
                                   quotient_module, trace_module, zero_module)
from src.diagonal_engine import BaseAlgebra, MatrixAlgebraInstance, TensorAlgebra, find_module_diagonal
from src.module_algebra import compute_J_span
from src.semigroup_core import (brandt, cyclic_group, max_semilattice,
                                meet_semilattice_nondirected, symmetric_inverse_monoid,
                                truncated_add_monoid)


def algebra(S):
    return BaseAlgebra.from_semigroup(S), compute_J_span(S)


def test_test_bimodules_of_group(c2):
    base, J = algebra(c2)
    modules = build_test_bimodules(base, J)
    assert [X.name for X in modules] == ["A/J", "augmentation", "A/J + A/J", "(A/J)*", "zero"]
    assert [X.dim for X in modules] == [2, 1, 4, 2, 0]


def test_quotient_module_of_max_semilattice():
    base, J = algebra(max_semilattice(3))
    assert quotient_module(base, J).dim == 1


def test_augmentation_module_is_commutative(i2):
    base, _ = algebra(i2)
    augmentation_module(base).validate(base)


def test_non_multiplicative_character_is_rejected(max2):
    base, _ = algebra(max2)
    with pytest.raises(InvariantViolation) as info:
        character_module(base, [0, 1], [1, 1]).validate(base)
    assert info.value.identity == "a.(b.x) = (ab).x"


def test_trace_is_not_a_character_of_matrix_algebra():
    base = BaseAlgebra.from_matrix_instance(MatrixAlgebraInstance.scalars(2))
    with pytest.raises(InvariantViolation):
        trace_module(base, 2).validate(base)


def test_matrix_algebra_one_dimensional_module():
    base = BaseAlgebra.from_matrix_instance(MatrixAlgebraInstance.scalars(2))
    line = annihilated_line(base)
    line.validate(base)
    assert derivation_space(base, line).h1_dim == 0


def test_augmentation_cohomology_of_group(c2):
    base, _ = algebra(c2)
    assert derivation_space(base, augmentation_module(base)).h1_dim == 0


def test_quotient_cohomology_of_max_semilattice(max2):
    base, J = algebra(max2)
    space = derivation_space(base, quotient_module(base, J))
    assert space.h1_dim == 0
    assert space.Z == space.B


def test_zero_module_has_no_derivations(max2):
    base, _ = algebra(max2)
    space = derivation_space(base, zero_module(base))
    assert space.Z.rank == 0 and space.B.rank == 0 and space.h1_dim == 0


def test_direct_sum_and_dual_validate(i2):
    base, J = algebra(i2)
    X = quotient_module(base, J)
    direct_sum(X, augmentation_module(base)).validate(base)
    dual_module(X).validate(base)


def test_derivations_satisfy_leibniz():
    S = truncated_add_monoid(1)
    base, J = algebra(S)
    for X in build_test_bimodules(base, J):
        space = derivation_space(base, X)
        assert all(is_derivation(base, X, row) for row in space.Z.basis)
        assert all(is_derivation(base, X, row) for row in space.B.basis)


def test_derivations_kill_the_identity():
    S = max_semilattice(3)
    base, _ = algebra(S)
    space = derivation_space(base, augmentation_module(base))
    assert all(row[S.identity()] == 0 for row in space.Z.basis)


@pytest.mark.parametrize("S", [cyclic_group(3), max_semilattice(4), truncated_add_monoid(1),
                               symmetric_inverse_monoid(2)], ids=lambda S: S.name)
def test_directed_members_have_vanishing_h1(S):
    base, J = algebra(S)
    feasible = find_module_diagonal(TensorAlgebra(base)).feasible
    report = cross_check(base, J, feasible)
    assert feasible and report.consistent
    assert all(s.h1_dim == 0 for s in report.spaces)
    data = report.to_json()
    assert data["asserted"] is True
    assert data["counterexamples"] == []


@pytest.mark.parametrize("S", [meet_semilattice_nondirected(), brandt(2)], ids=lambda S: S.name)
def test_non_directed_members_are_only_reported(S):
    base, J = algebra(S)
    feasible = find_module_diagonal(TensorAlgebra(base)).feasible
    data = cross_check(base, J, feasible, directed=False).to_json()
    assert data["asserted"] is False
    assert data["diagonal_feasible"] == feasible
    assert len(data["bimodules"]) == 5


def test_report_without_diagonal_is_consistent(max2):
    base, J = algebra(max2)
    report = cross_check(base, J, None)
    assert report.consistent
    assert report.counterexamples == []
