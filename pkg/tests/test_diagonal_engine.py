from fractions import Fraction

import numpy as np
import pytest

from src.diagonal_engine import (BaseAlgebra, FailedCommutation, FailedIdentity,
                                 MatrixAlgebraInstance, TensorAlgebra, algebra_level_J,
                                 build_ideal_I, build_ideal_J, find_classical_diagonal,
                                 find_identity, find_module_diagonal, j_consistency,
                                 matrix_explicit_diagonal, matrix_identity, sample_diagonals,
                                 standard_group_diagonal, verify_module_diagonal)
from src.exact_linalg import Subspace, as_exact, unit_vector, zero_vector
from src.module_algebra import compute_J_span
from src.semigroup_core import (SizeGuardError, brandt, cyclic_group, max_semilattice,
                                meet_semilattice_nondirected, symmetric_inverse_monoid,
                                truncated_add_monoid)


def matrix_tensor(n, coefficients=None):
    instance = MatrixAlgebraInstance.scalars(n) if coefficients is None else \
        MatrixAlgebraInstance(n, coefficients)
    return instance, TensorAlgebra(BaseAlgebra.from_matrix_instance(instance), max_size=32)


# --- products ---

def test_tensor_product_max(max2_tensor):
    t = max2_tensor
    assert t.multiply(t.basis_tensor(0, 1), t.basis_tensor(1, 0)).tolist() == \
        t.basis_tensor(1, 1).tolist()


def test_tensor_product_group(c2_tensor):
    t = c2_tensor
    assert t.multiply(t.basis_tensor(0, 1), t.basis_tensor(1, 1)).tolist() == \
        t.basis_tensor(1, 0).tolist()


def test_tensor_product_matrix_units():
    instance, t = matrix_tensor(2)
    e = {(i, j): instance.basis_index(i, j, 0) for i in range(2) for j in range(2)}
    x = t.basis_tensor(e[0, 1], e[1, 0])
    y = t.basis_tensor(e[1, 0], e[0, 1])
    assert t.multiply(x, y).tolist() == t.basis_tensor(e[0, 0], e[1, 1]).tolist()
    # E12 E12 = 0
    assert not np.any(t.multiply(x, x) != 0)


def test_matrix_labels():
    instance = MatrixAlgebraInstance(2, truncated_add_monoid(1))
    assert instance.name == "M2(truncated_add_monoid:1)"
    assert instance.labels[:3] == ("E11[0]", "E11[1]", "E12[0]")


def test_matrix_instance_needs_unital_commutative_coefficients():
    with pytest.raises(ValueError):
        MatrixAlgebraInstance(2, brandt(2))


def test_tensor_size_guard():
    with pytest.raises(SizeGuardError):
        TensorAlgebra(BaseAlgebra.from_semigroup(max_semilattice(13)))


# --- ideals ---

def test_ideal_I_of_group_is_zero(c2):
    assert build_ideal_I(BaseAlgebra.from_semigroup(c2)).rank == 0
    assert build_ideal_J(BaseAlgebra.from_semigroup(c2)).rank == 0


def test_ideal_I_of_max_semilattice_two(max2_tensor):
    expected = Subspace.span([as_exact([1, -1, 0, 0]), as_exact([0, 0, 1, -1])], 4)
    assert max2_tensor.ideal_I == expected
    assert max2_tensor.is_two_sided_ideal(max2_tensor.ideal_I)


def test_ideal_J_of_max_semilattice_two(max2_tensor):
    assert max2_tensor.ideal_J == Subspace.span([as_exact([1, -1])], 2)


def test_matrix_ideals_are_zero():
    _, t = matrix_tensor(2)
    assert t.ideal_I.rank == 0
    assert t.ideal_J.rank == 0


@pytest.mark.parametrize("S", [max_semilattice(3), cyclic_group(3), symmetric_inverse_monoid(2),
                               brandt(2), meet_semilattice_nondirected()],
                         ids=lambda S: S.name)
def test_J_from_ideal_matches_span(S):
    J_span = compute_J_span(S)
    tensor = TensorAlgebra(BaseAlgebra.from_semigroup(S))
    result = j_consistency(tensor, J_span)
    assert result["equal"] and result["omega_I_in_J_span"]
    assert algebra_level_J(S) == J_span


def test_algebra_level_J_of_large_member():
    S = symmetric_inverse_monoid(3)
    assert algebra_level_J(S) == compute_J_span(S)


# --- omega ---

def test_omega_of_standard_group_element(c2_tensor):
    t = c2_tensor
    M = (t.basis_tensor(0, 0) + t.basis_tensor(1, 1)) * Fraction(1, 2)
    assert t.omega(M).tolist() == [1, 0]
    assert standard_group_diagonal(t).tolist() == M.tolist()


def test_omega_tilde_of_matrix_diagonal():
    instance = MatrixAlgebraInstance.scalars(3)
    cert = matrix_explicit_diagonal(instance)
    assert cert.tensor.omega_tilde(cert.M).contains(matrix_identity(instance))


def test_find_identity():
    assert find_identity(BaseAlgebra.from_semigroup(max_semilattice(2))).tolist() == [1, 0]
    # the semilattice algebra is unital although the semilattice is not a monoid
    meet = BaseAlgebra.from_semigroup(meet_semilattice_nondirected())
    assert find_identity(meet).tolist() == [-1, 1, 1]


# --- diagonals ---

def test_group_diagonal(c2_tensor):
    result = find_module_diagonal(c2_tensor)
    assert result.feasible
    cert = result.certificate
    assert cert.ok
    assert cert.solution_space.member(standard_group_diagonal(c2_tensor) - cert.M)


def test_max_semilattice_two_solution_set(max2_tensor):
    result = find_module_diagonal(max2_tensor)
    assert result.feasible
    cert = result.certificate
    a, b, c, d = cert.M
    assert a + b == 0 and c + d == 1
    assert cert.solution_space_dim == 0
    assert cert.solution_space.member(max2_tensor.basis_tensor(1, 0) - cert.M)
    assert cert.solution_space.contains(max2_tensor.ideal_I)


def test_delta_one_tensor_delta_one_is_rejected(max2_tensor):
    t = max2_tensor
    with pytest.raises(FailedCommutation) as info:
        verify_module_diagonal(t, t.basis_tensor(0, 0))
    assert info.value.element == "2"
    expected = t.basis_tensor(1, 0) - t.basis_tensor(0, 1)
    assert info.value.residual.tolist() == expected.tolist()
    assert not t.ideal_I.member(info.value.residual)


def test_zero_fails_identity(max2_tensor):
    with pytest.raises(FailedIdentity) as info:
        verify_module_diagonal(max2_tensor, zero_vector(4))
    assert info.value.element == "1"
    assert len(info.value.transcript) == 1


def test_transcript_without_strict(max2_tensor):
    checks = verify_module_diagonal(max2_tensor, max2_tensor.basis_tensor(0, 0), strict=False,
                                    suppress_ideal=True)
    assert [(c.kind, c.element, c.ok) for c in checks] == [
        ("identity", "1", True), ("identity", "2", True),
        ("commutation", "1", True), ("commutation", "2", False)]


def test_diagonal_is_defined_modulo_I(max2_tensor, rng):
    cert = find_module_diagonal(max2_tensor).certificate
    shifted = cert.M + max2_tensor.ideal_I.random_element(rng)
    assert all(c.ok for c in verify_module_diagonal(max2_tensor, shifted, strict=False))


def test_sampled_diagonals_verify(rng):
    tensor = TensorAlgebra(BaseAlgebra.from_semigroup(symmetric_inverse_monoid(2)))
    cert = find_module_diagonal(tensor).certificate
    for M in sample_diagonals(cert, rng, 5):
        assert all(c.ok for c in verify_module_diagonal(tensor, M, strict=False))


def test_result_json(max2_tensor):
    data = find_module_diagonal(max2_tensor).to_json()
    assert data["feasible"] is True
    assert data["solution_space_dim"] == 0
    assert len(data["checks"]) == 4
    assert data["system_shape"][1] == 4


# --- matrix algebras ---

def test_matrix_explicit_diagonal_scalars_n1():
    cert = matrix_explicit_diagonal(MatrixAlgebraInstance.scalars(1))
    assert cert.ok
    assert cert.M.tolist() == [1]


def test_matrix_explicit_diagonal_n3_commutes_with_every_unit():
    cert = matrix_explicit_diagonal(MatrixAlgebraInstance.scalars(3))
    commutation = [c for c in cert.checks if c.kind == "commutation"]
    assert len(commutation) == 9 and all(c.ok for c in commutation)
    assert sorted(cert.M[cert.M != 0].tolist()) == [Fraction(1, 3)] * 9


def test_matrix_over_truncated_algebra():
    cert = matrix_explicit_diagonal(MatrixAlgebraInstance(2, truncated_add_monoid(1)))
    assert cert.ok
    assert cert.tensor.ideal_J.rank == 0


def test_module_search_finds_matrix_diagonal():
    instance, t = matrix_tensor(2)
    result = find_module_diagonal(t)
    assert result.feasible
    explicit = matrix_explicit_diagonal(instance)
    assert result.certificate.solution_space.member(explicit.M - result.certificate.M)


def test_classical_diagonals():
    assert find_classical_diagonal(TensorAlgebra(
        BaseAlgebra.from_semigroup(max_semilattice(2)))).feasible
    assert find_classical_diagonal(matrix_tensor(2)[1]).feasible


@pytest.mark.slow
def test_no_classical_diagonal_over_nilpotent_coefficients():
    _, t = matrix_tensor(2, truncated_add_monoid(2))
    result = find_classical_diagonal(t)
    assert not result.feasible
    assert ":" in result.failing_constraint
    assert find_module_diagonal(t).feasible


@pytest.mark.slow
def test_matrix_three_over_truncated_two():
    instance = MatrixAlgebraInstance(3, truncated_add_monoid(2))
    cert = matrix_explicit_diagonal(instance)
    assert cert.ok
    assert cert.tensor.ideal_J.rank == 0
    assert cert.tensor.omega_tilde(cert.M).contains(matrix_identity(instance))
