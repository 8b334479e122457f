import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from nclp import (
    MultiMatrixAlgebra,
    NotProjectionError,
    Projection,
    ShapeMismatchError,
    central_support,
    frob_norm,
    from_vec,
    is_unitary,
    jordan_product,
    left_support,
    polar_decompose,
    proj_join,
    proj_leq,
    proj_meet,
    random_sample,
    right_support,
    supports,
    to_vec,
    trace,
)

from conftest import algebras, seeded

M2 = MultiMatrixAlgebra.from_dims([2])
M2C = MultiMatrixAlgebra.from_dims([2, 1])


def test_trace_identity_single_block():
    assert trace(M2.identity()) == pytest.approx(2.0)


def test_trace_weighted_blocks():
    # 3*tr(1_2) + 1*tr(1_1) = 7
    a = MultiMatrixAlgebra.from_dims([2, 1], [3.0, 1.0])
    assert trace(a.identity()) == pytest.approx(7.0)


def test_trace_zero():
    assert trace(M2.zero()) == 0.0


def test_trace_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        trace(M2.identity() @ M2C.identity())


def test_jordan_product_identity():
    one = M2.identity()
    assert frob_norm(jordan_product(one, one) - one) == 0.0


def test_jordan_product_orthogonal_units():
    e11 = M2.matrix_unit(0, 0, 0)
    e22 = M2.matrix_unit(0, 1, 1)
    assert frob_norm(jordan_product(e11, e22)) == 0.0


def test_jordan_product_offdiagonal_units():
    e12 = M2.matrix_unit(0, 0, 1)
    e21 = M2.matrix_unit(0, 1, 0)
    want = (M2.matrix_unit(0, 0, 0) + M2.matrix_unit(0, 1, 1)) * 0.5
    assert frob_norm(jordan_product(e12, e21) - want) < 1e-15


def test_polar_nilpotent():
    x = M2.matrix_unit(0, 0, 1) * 2.0
    v, m = polar_decompose(x)
    assert frob_norm(v - M2.matrix_unit(0, 0, 1)) < 1e-12
    assert frob_norm(m - 2.0 * M2.matrix_unit(0, 1, 1)) < 1e-12


def test_polar_of_positive():
    h = random_sample(M2, "psd", 5)
    v, m = polar_decompose(h)
    assert frob_norm(m - h) < 1e-10
    assert frob_norm(v - left_support(h)) < 1e-10


def test_polar_of_unitary():
    u = random_sample(M2, "unitary", 9)
    v, m = polar_decompose(u)
    assert frob_norm(v - u) < 1e-12
    assert frob_norm(m - M2.identity()) < 1e-12


def test_supports_matrix_unit():
    s_l, s_r = supports(M2.matrix_unit(0, 0, 1))
    assert frob_norm(s_l - M2.matrix_unit(0, 0, 0)) < 1e-12
    assert frob_norm(s_r - M2.matrix_unit(0, 1, 1)) < 1e-12


def test_supports_invertible_and_zero():
    u = random_sample(M2, "unitary", 3)
    s_l, s_r = supports(u)
    assert frob_norm(s_l - M2.identity()) < 1e-12
    assert frob_norm(s_r - M2.identity()) < 1e-12
    s_l, s_r = supports(M2.zero())
    assert frob_norm(s_l) == 0.0 and frob_norm(s_r) == 0.0


def test_meet_idempotent():
    q = random_sample(M2C, "projection", 4)
    q = Projection(M2C, q.data)
    assert frob_norm(proj_meet(q, q) - q) < 1e-10


def test_meet_orthogonal_ranges():
    e11 = Projection(M2, M2.matrix_unit(0, 0, 0).data)
    e22 = Projection(M2, M2.matrix_unit(0, 1, 1).data)
    assert frob_norm(proj_meet(e11, e22)) == 0.0


def test_meet_skew_lines():
    # span(e1) and span(e1+e2) meet only at 0
    e11 = Projection(M2, M2.matrix_unit(0, 0, 0).data)
    m = np.full((2, 2), 0.5)
    skew = Projection(M2, (m,))
    assert frob_norm(proj_meet(e11, skew)) < 1e-12


def test_central_support_masks():
    one = Projection(M2C, M2C.identity().data)
    assert central_support(one).mask == (True, True)
    e11 = Projection(M2C, M2C.matrix_unit(0, 0, 0).data)
    assert central_support(e11).mask == (True, False)
    zero = Projection(M2C, M2C.zero().data)
    assert central_support(zero).mask == (False, False)


def test_projection_invariant_enforced():
    with pytest.raises(NotProjectionError):
        Projection(M2, (np.array([[0.5, 0.0], [0.0, 0.3]]),))


def test_random_projection_full_rank_is_identity():
    q = random_sample(M2C, "projection", 0, ranks=(2, 1))
    assert frob_norm(q - M2C.identity()) < 1e-12


def test_random_unitary_is_unitary():
    assert is_unitary(random_sample(M2C, "unitary", 11))


def test_random_sample_deterministic():
    a = random_sample(M2C, "element", 42)
    b = random_sample(M2C, "element", 42)
    assert frob_norm(a - b) == 0.0


def test_random_sample_bad_rank():
    with pytest.raises(Exception):
        random_sample(M2, "projection", 0, ranks=(3,))


@given(seeded(algebras()))
def test_trace_is_tracial(bundle):
    rng, alg = bundle
    x = random_sample(alg, "element", rng)
    y = random_sample(alg, "element", rng)
    lhs, rhs = trace(x @ y), trace(y @ x)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@given(seeded(algebras()))
def test_polar_reconstructs(bundle):
    rng, alg = bundle
    x = random_sample(alg, "element", rng)
    v, m = polar_decompose(x)
    assert frob_norm(v @ m - x) <= 1e-10 * max(1.0, frob_norm(x))
    assert frob_norm(v.dag() @ v - right_support(x)) <= 1e-8


@given(seeded(algebras()))
def test_supports_absorb(bundle):
    rng, alg = bundle
    x = random_sample(alg, "element", rng)
    s_l, s_r = supports(x)
    assert frob_norm(s_l @ x - x) <= 1e-10 * max(1.0, frob_norm(x))
    assert frob_norm(x @ s_r - x) <= 1e-10 * max(1.0, frob_norm(x))


@given(seeded(algebras()))
def test_meet_join_order(bundle):
    rng, alg = bundle
    p = random_sample(alg, "projection", rng)
    q = random_sample(alg, "projection", rng)
    p = Projection(alg, p.data)
    q = Projection(alg, q.data)
    m, j = proj_meet(p, q), proj_join(p, q)
    assert proj_leq(m, p) and proj_leq(m, q)
    assert proj_leq(p, j) and proj_leq(q, j)


@given(seeded(algebras()))
def test_central_support_dominates(bundle):
    rng, alg = bundle
    q = Projection(alg, random_sample(alg, "projection", rng).data)
    z = central_support(q).to_projection()
    assert proj_leq(q, z)
    x = random_sample(alg, "element", rng)
    assert frob_norm(z @ x - x @ z) <= 1e-12 * max(1.0, frob_norm(x))


@given(seeded(algebras()))
def test_vec_roundtrip(bundle):
    rng, alg = bundle
    x = random_sample(alg, "element", rng)
    assert frob_norm(from_vec(alg, to_vec(x)) - x) == 0.0
