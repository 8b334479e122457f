import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from nclp import (
    Corner,
    ExponentError,
    JordanMap,
    LpVector,
    MultiMatrixAlgebra,
    NotCornerError,
    NotIsometryError,
    PolarPartNotUnitaryError,
    PositiveFunctional,
    Projection,
    RawIsometry,
    apply_isometry,
    central_correspondence,
    check_module_relation,
    corner_image,
    decompose,
    extract_right_orthoiso,
    frob_norm,
    functional_pth_root,
    jordan_distance,
    lp_norm,
    pushforward_functional,
    random_jordan,
    random_sample,
    synthesize,
    to_raw,
    verify_isometry_sampled,
)

from conftest import algebras, seeded

M2 = MultiMatrixAlgebra.from_dims([2])
M2C = MultiMatrixAlgebra.from_dims([2, 1])

P_GRID = (1.0, 1.5, 3.0, 4.0, math.inf)


def identity_jordan(alg):
    return JordanMap(alg, alg, tuple(range(alg.n_blocks)),
                     tuple(np.eye(n) for n in alg.dims),
                     (False,) * alg.n_blocks)


def transpose_map(alg, p):
    j = JordanMap(alg, alg, tuple(range(alg.n_blocks)),
                  tuple(np.eye(n) for n in alg.dims),
                  (True,) * alg.n_blocks)
    return synthesize(j, alg.identity(), p)


def random_instance(seed, p, dims=(2, 1), w1=None, w2=None):
    rng = np.random.default_rng(seed)
    src = MultiMatrixAlgebra.from_dims(dims, w1 or tuple(rng.uniform(0.5, 2.0, len(dims))))
    tgt = MultiMatrixAlgebra.from_dims(
        tuple(reversed(dims)), w2 or tuple(rng.uniform(0.5, 2.0, len(dims))))
    j = random_jordan(src, tgt, rng)
    w = random_sample(tgt, "unitary", rng)
    return j, w, synthesize(j, w, p)


def test_synthesize_identity():
    t = synthesize(identity_jordan(M2C), M2C.identity(), 3.0)
    xi = LpVector(random_sample(M2C, "element", 0), 3.0)
    assert frob_norm(apply_isometry(t, xi).element - xi.element) == 0.0


def test_synthesize_weight_change_scalar():
    # halving the trace weight scales vectors by 2^(1/3) at p = 3
    src = MultiMatrixAlgebra.from_dims([2], [2.0])
    tgt = MultiMatrixAlgebra.from_dims([2], [1.0])
    j = JordanMap(src, tgt, (0,), (np.eye(2),), (False,))
    t = synthesize(j, tgt.identity(), 3.0)
    xi = LpVector(random_sample(src, "element", 1), 3.0)
    out = apply_isometry(t, xi)
    assert np.linalg.norm(out.element.data[0] - 2.0 ** (1 / 3) * xi.element.data[0]) < 1e-12
    assert lp_norm(out) == pytest.approx(lp_norm(xi), rel=1e-12)


@given(seeded(algebras(), st.sampled_from([1.0, 1.5, 3.0, 4.0])))
def test_positive_functional_law(bundle):
    """T(phi^(1/p)) = w (phi o J^-1)^(1/p): both routes agree."""
    rng, alg, p = bundle
    weights2 = tuple(float(x) for x in rng.uniform(0.5, 2.0, alg.n_blocks))
    tgt = MultiMatrixAlgebra.from_dims(alg.dims, weights2)
    j = random_jordan(alg, tgt, rng)
    w = random_sample(tgt, "unitary", rng)
    t = synthesize(j, w, p)
    phi = PositiveFunctional(alg, random_sample(alg, "psd", rng))
    lhs = apply_isometry(t, functional_pth_root(phi, p))
    rhs = w @ functional_pth_root(pushforward_functional(phi, j), p).element
    assert frob_norm(lhs.element - rhs) <= 1e-10 * max(1.0, frob_norm(rhs))


@given(seeded(algebras(), st.sampled_from(P_GRID)))
def test_structured_is_isometric(bundle):
    rng, alg, p = bundle
    j = random_jordan(alg, alg, rng)
    w = random_sample(alg, "unitary", rng)
    t = synthesize(j, w, p)
    xi = LpVector(random_sample(alg, "element", rng), p)
    assert lp_norm(apply_isometry(t, xi)) == pytest.approx(lp_norm(xi), rel=1e-9, abs=1e-12)


def test_structured_matches_raw_export():
    j, w, t = random_instance(3, 3.0)
    raw = to_raw(t)
    xi = LpVector(random_sample(t.jordan.source, "element", 4), 3.0)
    a = apply_isometry(t, xi)
    b = apply_isometry(raw, xi)
    assert frob_norm(a.element - b.element) < 1e-12


def test_apply_zero():
    j, w, t = random_instance(5, 1.5)
    z = LpVector(t.jordan.source.zero(), 1.5)
    assert frob_norm(apply_isometry(t, z).element) == 0.0


def test_synthesize_rejects_p2_and_nonunitary():
    with pytest.raises(ExponentError):
        synthesize(identity_jordan(M2), M2.identity(), 2.0)
    with pytest.raises(Exception):
        synthesize(identity_jordan(M2), M2.identity() * 2.0, 3.0)


@pytest.mark.parametrize("p", P_GRID)
def test_decompose_roundtrip(p):
    j, w, t = random_instance(11, p)
    dec = decompose(to_raw(t))
    assert frob_norm(dec.w - w) < 1e-8
    assert jordan_distance(dec.jordan, j) < 1e-8
    assert dec.residual < 1e-7


def test_decompose_identity():
    t = to_raw(synthesize(identity_jordan(M2C), M2C.identity(), 3.0))
    dec = decompose(t)
    assert frob_norm(dec.w - M2C.identity()) < 1e-10
    assert jordan_distance(dec.jordan, identity_jordan(M2C)) < 1e-10


@pytest.mark.parametrize("p", P_GRID)
def test_decompose_rejects_scaled(p):
    t = to_raw(synthesize(identity_jordan(M2C), M2C.identity(), p))
    half = RawIsometry(p, t.source, t.target, 0.5 * t.matrix)
    with pytest.raises(PolarPartNotUnitaryError):
        decompose(half)


def test_corner_image_identity():
    t = synthesize(identity_jordan(M2C), M2C.identity(), 3.0)
    q = Projection(M2C, random_sample(M2C, "projection", 1).data)
    c = Corner(q, Projection(M2C, random_sample(M2C, "projection", 2).data), 3.0)
    rep = corner_image(t, c)
    assert rep.corner_out.close_to(c)
    assert rep.residual_forward < 1e-12 and rep.residual_backward < 1e-12


def test_corner_image_transpose_swaps_column_to_row():
    t = transpose_map(M2, 3.0)
    e11 = Projection(M2, M2.matrix_unit(0, 0, 0).data)
    one = Projection(M2, M2.identity().data)
    col = Corner(one, e11, 3.0)   # {xi e11}: the first column
    rep = corner_image(t, col)
    assert rep.corner_out.close_to(Corner(e11, one, 3.0))  # {e11 xi}: the first row


def test_corner_image_ad_u_moves_column():
    rng = np.random.default_rng(6)
    u = random_sample(M2, "unitary", rng)
    j = JordanMap(M2, M2, (0,), tuple(u.data), (False,))
    t = synthesize(j, M2.identity(), 3.0)
    q = Projection(M2, M2.matrix_unit(0, 0, 0).data)
    one = Projection(M2, M2.identity().data)
    rep = corner_image(t, Corner(one, q, 3.0))
    uqu = Projection(M2, (u @ M2.matrix_unit(0, 0, 0) @ u.dag()).data)
    assert rep.corner_out.close_to(Corner(one, uqu, 3.0))


def test_corner_image_rejects_mixer():
    # a generic coordinate unitary is not an algebra map; corners smear
    rng = np.random.default_rng(2)
    g = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))[0]
    t = RawIsometry(3.0, M2C, M2C, g)
    e11 = Projection(M2C, M2C.matrix_unit(0, 0, 0).data)
    one = Projection(M2C, M2C.identity().data)
    with pytest.raises(NotCornerError):
        corner_image(t, Corner(one, e11, 3.0))


def test_orthoiso_ad_u():
    rng = np.random.default_rng(4)
    u = random_sample(M2C, "unitary", rng)
    j = JordanMap(M2C, M2C, (0, 1), tuple(u.data), (False, False))
    t = synthesize(j, random_sample(M2C, "unitary", rng), 3.0)
    pr = extract_right_orthoiso(t)
    assert pr.z_prime.mask == (True, True)
    q = Projection(M2C, random_sample(M2C, "projection", 5).data)
    want = Projection(M2C, (u @ q @ u.dag()).data)
    assert frob_norm(pr(q) - want) < 1e-10


def test_orthoiso_transpose():
    t = transpose_map(M2, 3.0)
    pr = extract_right_orthoiso(t)
    assert pr.z_prime.mask == (False,)
    q = Projection(M2, random_sample(M2, "projection", 3).data)
    qt = Projection(M2, tuple(m.T for m in q.data))
    assert frob_norm(pr(q) - qt) < 1e-10


def test_orthoiso_lattice_extremes():
    j, w, t = random_instance(9, 3.0)
    pr = extract_right_orthoiso(t)
    src, tgt = t.jordan.source, t.jordan.target
    zero = Projection(src, src.zero().data)
    one = Projection(src, src.identity().data)
    assert frob_norm(pr(zero)) == 0.0
    assert frob_norm(pr(one) - tgt.identity()) < 1e-10


def test_orthoiso_requires_finite_p():
    j, w, t = random_instance(10, math.inf)
    with pytest.raises(ExponentError):
        extract_right_orthoiso(t)


@given(seeded(algebras(max_total_dim=4), st.sampled_from([1.5, 3.0, 4.0])))
@settings(max_examples=20)
def test_orthoiso_matches_decomposed_jordan(bundle):
    rng, alg, p = bundle
    j = random_jordan(alg, alg, rng)
    w = random_sample(alg, "unitary", rng)
    t = synthesize(j, w, p)
    pr = extract_right_orthoiso(t, seed=int(rng.integers(2**31)))
    dec = decompose(to_raw(t))
    q = Projection(alg, random_sample(alg, "projection", rng).data)
    want = dec.jordan.apply(q)
    assert frob_norm(pr(q) - want) <= 1e-8
    # orthogonality transport
    qc = q.complement()
    assert frob_norm(pr(q) @ pr(qc)) <= 1e-8


def test_module_relation_ad_u_and_transpose():
    rng = np.random.default_rng(12)
    u = random_sample(M2, "unitary", rng)
    j = JordanMap(M2, M2, (0,), tuple(u.data), (False,))
    t = synthesize(j, random_sample(M2, "unitary", rng), 3.0)
    rep = check_module_relation(t, j)
    assert rep.residual < 1e-10

    tt = transpose_map(M2, 3.0)
    jt = JordanMap(M2, M2, (0,), (np.eye(2),), (True,))
    rep = check_module_relation(tt, jt)
    assert rep.residual < 1e-10


def test_module_relation_with_identity_element():
    j, w, t = random_instance(14, 3.0)
    xi = LpVector(random_sample(j.source, "element", 15), 3.0)
    lhs = apply_isometry(t, xi)
    rhs = apply_isometry(t, xi).element @ j.apply(j.source.identity())
    assert frob_norm(lhs.element - rhs) < 1e-12


def test_central_correspondence_identity_and_swap():
    t = synthesize(identity_jordan(M2C), M2C.identity(), 3.0)
    corr = central_correspondence(t)
    assert corr.mapping == (0, 1)

    j, w, ts = random_instance(16, 3.0, dims=(2, 1))
    corr = central_correspondence(ts)
    assert corr.mapping == j.sigma


def test_central_correspondence_rejects_smear():
    # swap coordinates between blocks so no central summand lands cleanly
    m = np.eye(M2C.dim)
    m[[1, 4]] = m[[4, 1]]
    t = RawIsometry(3.0, M2C, M2C, m)
    with pytest.raises(NotIsometryError):
        central_correspondence(t)


def test_verify_isometry_sampled():
    j, w, t = random_instance(18, 3.0)
    screen = verify_isometry_sampled(t, n_samples=25, seed=1)
    assert screen.max_rel_deviation <= 1e-10
    assert not screen.no_evidence

    doubled = RawIsometry(3.0, j.source, j.target, 2.0 * to_raw(t).matrix)
    screen = verify_isometry_sampled(doubled, n_samples=25, seed=1)
    assert screen.max_rel_deviation == pytest.approx(1.0, rel=1e-9)

    empty = verify_isometry_sampled(t, n_samples=0)
    assert empty.max_rel_deviation == 0.0 and empty.no_evidence


@given(seeded(algebras(), st.sampled_from([1.5, 3.0, 4.0])))
@settings(max_examples=15)
def test_isometry_preserves_sip(bundle):
    from nclp import semi_inner_product

    rng, alg, p = bundle
    j = random_jordan(alg, alg, rng)
    t = synthesize(j, random_sample(alg, "unitary", rng), p)
    xi = LpVector(random_sample(alg, "element", rng), p)
    eta = LpVector(random_sample(alg, "element", rng), p)
    a = semi_inner_product(apply_isometry(t, xi), apply_isometry(t, eta))
    b = semi_inner_product(xi, eta)
    assert abs(a - b) <= 1e-8 * max(1.0, abs(b))


def test_decompose_p2_rejected():
    # the container is permissive; the structure theory is not
    t = RawIsometry(2.0, M2, M2, np.eye(4))
    with pytest.raises(ExponentError):
        decompose(t)
