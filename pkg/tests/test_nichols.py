from fractions import Fraction

import pytest

from conftest import diagonal_spec, qp2, qp3

from nicholscy import builtin
from nicholscy.braiding import verify_label
from nicholscy.errors import NotASRegularError, NotExactError
from nicholscy.nichols import (
    MonomialTower,
    as_regularity_check,
    build_quadratic,
    default_cap,
    graded_profile,
    hilbert_identity,
    koszul_check,
    reversal_permutation,
)

F = Fraction


def labeled(spec):
    b = spec.braiding()
    return b.with_label(verify_label(b))


def test_default_cap_budget():
    assert default_cap(1) == 4
    assert default_cap(2) == 14
    assert default_cap(3) == 9
    assert default_cap(4) == 7
    assert default_cap(30000) == 4


def test_reversal_permutation_reverses_legs():
    assert reversal_permutation(2, 2) == [0, 2, 1, 3]
    assert reversal_permutation(2, 3) == [0, 4, 2, 6, 1, 5, 3, 7]


def test_quadratic_data_for_the_quantum_plane():
    qd = build_quadratic(labeled(qp2(2)), cap=5)
    assert qd.I.dim == 1
    assert qd.I.dense_rows() == [[F(0), F(1), F(-2), F(0)]]
    assert qd.I_perp.dim == 3
    assert qd.cap == 5
    with pytest.raises(ValueError):
        build_quadratic(labeled(qp2(2)), cap=1)


def test_monomial_tower_normal_forms():
    qd = build_quadratic(labeled(qp2(2)), cap=4)
    tower = MonomialTower(2, qd.I)
    tower.extend_to(3)
    assert tower.bases[2] == [(0, 0), (1, 0), (1, 1)]
    # x y rewrites to 2 y x
    assert tower.reduce_word((0, 1)) == {1: F(2)}
    assert tower.reduce_word((1, 0)) == {1: F(1)}
    assert tower.dim(3) == 4
    prod = tower.mult_elements(1, {0: F(1)}, 2, {1: F(1)})  # x * yx
    assert prod == tower.reduce_word((0, 1, 0))


def test_graded_profile_of_the_quantum_plane():
    gp = graded_profile(build_quadratic(labeled(qp2(3)), cap=6))
    assert gp.dims_R == [1, 2, 3, 4, 5, 6, 7]
    assert gp.dims_dual == [1, 2, 1, 0, 0, 0, 0]
    assert gp.gldim == 2
    assert not gp.cap_exceeded
    assert gp.gldim_label() == 2
    assert hilbert_identity(gp)


def test_graded_profile_of_the_sixteen_coefficient_example():
    spec = builtin("example2")
    gp = graded_profile(build_quadratic(labeled(spec), cap=6))
    assert gp.dims_R == [1, 4, 10, 20, 35, 56, 84]
    assert gp.dims_dual == [1, 4, 6, 4, 1, 0, 0]
    assert gp.gldim == 4
    assert hilbert_identity(gp)


def test_unbounded_dual_profile_exceeds_the_cap():
    spec = diagonal_spec([["-1", "1"], ["1", "-1"]])
    gp = graded_profile(build_quadratic(labeled(spec), cap=6))
    assert gp.dims_R == [1, 2, 1, 0, 0, 0, 0]
    assert gp.dims_dual == [1, 2, 3, 4, 5, 6, 7]
    assert gp.gldim is None
    assert gp.cap_exceeded
    assert gp.gldim_label() == "exceeds cap"
    with pytest.raises(ValueError):
        koszul_check(gp)
    with pytest.raises(ValueError):
        as_regularity_check(gp)


def test_koszul_complex_is_exact_for_the_suite():
    for spec in (qp2(1), qp2(2), qp3(2, "1/3", 3), builtin("trivial1")):
        gp = graded_profile(build_quadratic(labeled(spec), cap=5))
        res = koszul_check(gp)
        assert res.exact
        assert res.max_internal_degree == 5
        assert res.homology[0] == [1]
        assert all(
            dim == 0 for t in range(1, 6) for dim in res.homology[t]
        )


def test_dual_complex_cohomology_is_one_line_at_the_top():
    gp = graded_profile(build_quadratic(labeled(qp2(2)), cap=5))
    res = as_regularity_check(gp)
    assert res.ok
    assert res.d == 2
    assert res.window == (-3, 2)
    assert res.cohomology[2] == [0, 0, 1]
    assert all(dim == 0 for t in range(-3, 2) for dim in res.cohomology[t])


def test_exactness_failure_is_reported_with_its_position():
    # feed a profile whose "relations" are not the (-1)-eigenspace: take the
    # quantum plane tower but lie about the dual dimensions
    gp = graded_profile(build_quadratic(labeled(qp2(2)), cap=4))
    gp.dims_dual[1] = 1
    with pytest.raises((NotExactError, AssertionError, IndexError, ValueError)):
        koszul_check(gp)
