from fractions import Fraction

import pytest

from conftest import qp2, qp3

from nicholscy import builtin
from nicholscy.braiding import verify_label
from nicholscy.errors import NotInvariantError
from nicholscy.frt import (
    action_matrices,
    apply_generator,
    braiding_commutes_with_action,
    diagonal_action,
    homological_matrix,
    multiplicativity_check,
    quantum_label,
    rtt_check,
    stabilizes_subspace,
)
from nicholscy.linalg import Mat
from nicholscy.nichols import build_quadratic, graded_profile

F = Fraction


def labeled(spec):
    b = spec.braiding()
    return b.with_label(verify_label(b))


def family(spec):
    return action_matrices(labeled(spec))


def test_degree_one_action_reads_off_the_coefficients():
    b = labeled(qp2(2))
    af = action_matrices(b)
    # T^n_i . v_j = sum_m c^{mn}_{ij} v_m; diagonal tables give T^i_i = diag(q_ij)_j
    assert af.mat(0, 0) == Mat.from_rows([[1, 0], [0, 2]])
    assert af.mat(1, 1) == Mat.from_rows([["1/2", 0], [0, 1]])
    assert af.mat(1, 0).is_zero()
    assert af.mat(0, 1).is_zero()


def test_sixteen_coefficient_action_permutes_generators():
    af = family(builtin("example2"))
    # c(v_0 (x) v_1) = v_2 (x) v_3 contributes T^3_0 . v_1 = v_2
    m = af.mat(3, 0)
    assert m.get(2, 1) == F(1)


def test_apply_generator_matches_dense_action():
    af = family(qp3(2, 3, "1/3"))
    vec = {0: F(1), 4: F(-2), 26: F(1, 3)}  # sparse element of V^(x)3
    for upper, lower in ((0, 0), (1, 2), (2, 1)):
        dense = diagonal_action(af, lower, upper, 3)
        assert apply_generator(af, upper, lower, 3, vec) == dense.apply(vec)


def test_rtt_and_h_linearity_hold_for_the_suite():
    for spec in (qp2(1), qp2(2), qp3(2, "1/3", 3), builtin("example2")):
        b = labeled(spec)
        af = action_matrices(b)
        assert rtt_check(b, af)
        assert braiding_commutes_with_action(b, af)
        assert multiplicativity_check(af, 1, 1)


def test_relations_and_koszul_spaces_are_stable():
    b = labeled(builtin("example2"))
    af = action_matrices(b)
    gp = graded_profile(build_quadratic(b, cap=5))
    assert stabilizes_subspace(af, gp.J[2], 2)
    for m in range(2, 5):
        assert stabilizes_subspace(af, gp.K[m], m)


def test_quantum_label_powers():
    assert quantum_label(F(1), 4) == F(1)
    assert quantum_label(F(1), 3) == F(-1)
    assert quantum_label(F(2), 2) == F(1, 4)


def test_homological_matrix_of_the_quantum_plane():
    b = labeled(qp2(2))
    gp = graded_profile(build_quadratic(b, cap=4))
    hd = homological_matrix(action_matrices(b), gp.K[2], 2)
    assert hd.d == 2
    assert hd.Q == F(1)
    assert hd.D == Mat.from_rows([[2, 0], [0, "1/2"]])


def test_homological_matrix_requires_a_line():
    b = labeled(qp2(2))
    gp = graded_profile(build_quadratic(b, cap=4))
    with pytest.raises(NotInvariantError):
        homological_matrix(action_matrices(b), gp.K[1], 1)


def test_mutated_coefficient_breaks_an_invariant():
    spec = builtin("example2")
    rows = [list(r) for r in spec.table]
    rows[0][1] = "2"  # single coefficient flip
    from nicholscy import parse_input

    mutated = parse_input(
        {"name": "mutant", "dimension": 4, "braiding": rows}
    ).braiding()
    from nicholscy.braiding import validate_braid_equation

    assert not validate_braid_equation(mutated)
