"""Surjective L^p isometries: synthesis from Jordan data and decomposition
back to it.

A structured isometry acts as T(xi) = w D^(1/p) J(xi) with w unitary, J a
Jordan *-isomorphism and D the central density matching the traces; on
positive vectors this is exactly T(phi^(1/p)) = w (phi o J^-1)^(1/p).
decompose recovers (w, J) from a dense matrix and certifies the result; the
remaining operations are structural probes (corner images, the right
orthoisomorphism on projections, central correspondence) that double as
detectors for maps that are not isometries of this form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .algebra import (
    EPS_EQ,
    EPS_RANK,
    AlgebraElement,
    CentralProjection,
    MultiMatrixAlgebra,
    Projection,
    _as_rng,
    _range_basis,
    frob_norm,
    from_vec,
    is_unitary,
    joint_left_support,
    joint_right_support,
    linmap_matrix,
    op_norm,
    pairing_matrix,
    polar_decompose,
    psd_power,
    random_sample,
    to_vec,
)
from .errors import (
    BlockMismatchError,
    CertificationError,
    ExponentError,
    NotBijectiveError,
    NotCornerError,
    NotIsometryError,
    PolarPartNotUnitaryError,
    PositiveImageError,
    ShapeMismatchError,
)
from .jordan import CentralDensity, JordanMap, classify_linear_map
from .lpspace import Corner, LpVector, PositiveFunctional, functional_pth_root, lp_norm

EPS_CERT = 1e-7  # certification residual for dense-map comparisons


def _check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ExponentError(f"exponent must lie in [1, inf], got {p}")
    if p == 2.0:
        raise ExponentError("p = 2 carries no structure: every unitary of the "
                            "Hilbert space is an isometry")
    return p


@dataclass(frozen=True, eq=False)
class StructuredIsometry:
    """T(xi) = w D^(1/p) J(xi); exactly isometric by construction."""

    p: float
    w: AlgebraElement
    jordan: JordanMap
    density: CentralDensity

    @property
    def source(self) -> MultiMatrixAlgebra:
        return self.jordan.source

    @property
    def target(self) -> MultiMatrixAlgebra:
        return self.jordan.target

    def apply(self, xi: LpVector) -> LpVector:
        if xi.p != self.p:
            raise ExponentError(f"vector has exponent {xi.p}, isometry has {self.p}")
        if xi.algebra != self.source:
            raise ShapeMismatchError("vector does not live on the source space")
        power = 0.0 if self.p == math.inf else 1.0 / self.p
        out = self.w @ self.density.scale(self.jordan.apply(xi.element), power)
        return LpVector(out, self.p)

    def to_matrix(self) -> np.ndarray:
        return linmap_matrix(self.source, self.target,
                             lambda x: self.apply(LpVector(x, self.p)).element)


@dataclass(frozen=True, eq=False)
class RawIsometry:
    """A dense complex-linear map in matrix-unit coordinates (block-major,
    row-major within blocks).  Accepted provisionally: nothing is checked
    beyond shapes, downstream operations certify or raise."""

    p: float
    source: MultiMatrixAlgebra
    target: MultiMatrixAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        if not (self.p >= 1.0):
            raise ExponentError(f"exponent must lie in [1, inf], got {self.p}")
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatchError(
                f"matrix shape {m.shape} != ({self.target.dim}, {self.source.dim})"
            )
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def apply(self, xi: LpVector) -> LpVector:
        if xi.p != self.p:
            raise ExponentError(f"vector has exponent {xi.p}, isometry has {self.p}")
        if xi.algebra != self.source:
            raise ShapeMismatchError("vector does not live on the source space")
        return LpVector(from_vec(self.target, self.matrix @ to_vec(xi.element)), self.p)

    def to_matrix(self) -> np.ndarray:
        return np.array(self.matrix, copy=True)


LpIsometry = Union[StructuredIsometry, RawIsometry]


def synthesize(jordan: JordanMap, w: AlgebraElement, p: float) -> StructuredIsometry:
    """Build the isometry T(xi) = w D^(1/p) J(xi) from its Jordan data."""
    p = _check_p(p)
    if w.algebra != jordan.target:
        raise ShapeMismatchError("w does not live on the target algebra")
    if not is_unitary(w):
        raise ValueError("w is not unitary")
    return StructuredIsometry(p, w, jordan, CentralDensity.from_jordan(jordan))


def apply_isometry(t: LpIsometry, xi: LpVector) -> LpVector:
    return t.apply(xi)


def to_raw(t: LpIsometry) -> RawIsometry:
    if isinstance(t, RawIsometry):
        return t
    return RawIsometry(t.p, t.source, t.target, t.to_matrix())


@dataclass(frozen=True)
class Decomposition:
    """Certified decomposition of a surjective isometry."""

    w: AlgebraElement
    jordan: JordanMap
    p: float
    residual: float


def _certify(t: RawIsometry, w: AlgebraElement, jordan: JordanMap, eps_cert: float) -> Decomposition:
    resynth = synthesize(jordan, w, t.p).to_matrix()
    residual = float(np.linalg.norm(resynth - t.matrix))
    if residual > eps_cert * max(1.0, float(np.linalg.norm(t.matrix))):
        raise CertificationError(
            f"certification failed: dense-map residual {residual:.3e} exceeds {eps_cert:.1e}",
            residual=residual,
        )
    return Decomposition(w, jordan, t.p, residual)


def _psd_spanning_set(algebra: MultiMatrixAlgebra):
    """Rank-one PSD family spanning the algebra: for each block the matrices
    (e_a + e_b)(e_a + e_b)*, (e_a + i e_b)(e_a + i e_b)*, and e_a e_a*.

    Yields (i, a, b, tag, element) with tag in {"diag", "plus", "phase"}.
    """
    for i, blk in enumerate(algebra.blocks):
        n = blk.dim
        for a in range(n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[a, a] = 1.0
            yield i, a, a, "diag", _block_element(algebra, i, m)
        for a in range(n):
            for b in range(a + 1, n):
                va = np.zeros(n, dtype=np.complex128)
                va[a] = 1.0
                vb = np.zeros(n, dtype=np.complex128)
                vb[b] = 1.0
                g1 = va + vb
                g2 = va + 1j * vb
                yield i, a, b, "plus", _block_element(algebra, i, np.outer(g1, g1.conj()))
                yield i, a, b, "phase", _block_element(algebra, i, np.outer(g2, g2.conj()))


def _block_element(algebra: MultiMatrixAlgebra, i: int, m: np.ndarray) -> AlgebraElement:
    data = [np.zeros((b.dim, b.dim)) for b in algebra.blocks]
    data[i] = m
    return AlgebraElement(algebra, tuple(data))


def _decompose_direct(t: RawIsometry, eps_eq: float, eps_cert: float) -> Decomposition:
    src, tgt, p = t.source, t.target, t.p

    # Polar part of the image of the uniform faithful state.  A surjective
    # isometry of structured form sends it to w |eta0| with w unitary and
    # |eta0| of full rank; any norm change or rank deficit disqualifies T.
    phi0 = PositiveFunctional.uniform_state(src)
    xi0 = functional_pth_root(phi0, p)
    eta0 = t.apply(xi0)
    if abs(lp_norm(eta0) - lp_norm(xi0)) > eps_eq * max(1.0, lp_norm(xi0)):
        raise PolarPartNotUnitaryError(
            "polar part not unitary: the uniform state changes norm "
            f"(deviation {abs(lp_norm(eta0) - lp_norm(xi0)):.3e})"
        )
    w, abseta = polar_decompose(eta0.element)
    if not is_unitary(w, eps_eq):
        raise PolarPartNotUnitaryError(
            "polar part not unitary: the image of the uniform state is rank-deficient"
        )

    # Positive images: h -> (w* T(h^(1/p)))^p must send the PSD spanning set
    # to PSD elements; that extends to the linear map Phi = D J on densities.
    phi_of: dict[tuple[int, int, int, str], AlgebraElement] = {}
    for i, a, b, tag, h in _psd_spanning_set(src):
        img = w.dag() @ t.apply(LpVector(psd_power(h, 1.0 / p), p)).element
        herm_res = frob_norm(img - img.dag())
        scale = max(1.0, op_norm(img))
        neg = min(
            (float(np.linalg.eigvalsh((m + m.conj().T) / 2).min(initial=0.0)) for m in img.data),
            default=0.0,
        )
        if herm_res > eps_eq * scale or neg < -eps_eq * scale:
            raise PositiveImageError(
                f"image of positive not positive (hermitian residual {herm_res:.3e}, "
                f"min eigenvalue {neg:.3e})"
            )
        phi_of[(i, a, b, tag)] = psd_power(img, p)

    # Linear extension of Phi to matrix units via
    #   e_ab + e_ba = h_plus - e_aa - e_bb,  i(e_ba - e_ab) = h_phase - e_aa - e_bb.
    phi_units: dict[tuple[int, int, int], AlgebraElement] = {}
    for i, blk in enumerate(src.blocks):
        n = blk.dim
        for a in range(n):
            phi_units[(i, a, a)] = phi_of[(i, a, a, "diag")]
        for a in range(n):
            for b in range(a + 1, n):
                daa, dbb = phi_units[(i, a, a)], phi_units[(i, b, b)]
                s_plus = phi_of[(i, a, b, "plus")] - daa - dbb
                s_phase = phi_of[(i, a, b, "phase")] - daa - dbb
                phi_units[(i, a, b)] = (s_plus + 1j * s_phase) * 0.5
                phi_units[(i, b, a)] = (s_plus - 1j * s_phase) * 0.5

    # J^-1 from the trace identity tau_src(h J^-1(y)) = tau_tgt(Phi(h) y):
    # reading it on matrix units gives J^-1(y)_i[b,a] = tau_tgt(Phi(e_ab) y)/w_i.
    d = src.dim
    m_jinv = np.zeros((d, tgt.dim), dtype=np.complex128)
    for (i, a, b), img in phi_units.items():
        row = src.unit_index(i, b, a)
        for j, blk in enumerate(tgt.blocks):
            lam = tgt.weights[j] / src.weights[i]
            off = tgt.block_offset(j)
            m_jinv[row, off : off + blk.dim**2] = lam * img.data[j].T.reshape(-1)

    try:
        m_j = np.linalg.inv(m_jinv)
    except np.linalg.LinAlgError as exc:
        raise NotBijectiveError(f"not bijective: recovered Jordan data is singular ({exc})")
    jordan = classify_linear_map(m_j, src, tgt, tol=eps_eq)
    return _certify(t, w, jordan, eps_cert)


def _decompose_infty(t: RawIsometry, eps_eq: float, eps_cert: float) -> Decomposition:
    # Operator-norm branch: w = T(1), J = w* T(.).
    src, tgt = t.source, t.target
    w = t.apply(LpVector(src.identity(), math.inf)).element
    if not is_unitary(w, eps_eq):
        raise PolarPartNotUnitaryError(
            "polar part not unitary: the image of the identity is not unitary"
        )
    m_j = linmap_matrix(src, tgt, lambda x: w.dag() @ from_vec(tgt, t.matrix @ to_vec(x)))
    jordan = classify_linear_map(m_j, src, tgt, tol=eps_eq)
    return _certify(t, w, jordan, eps_cert)


def _right_mult_matrix(algebra: MultiMatrixAlgebra, a: AlgebraElement) -> np.ndarray:
    return linmap_matrix(algebra, algebra, lambda y: y @ a)


def _decompose_l1(t: RawIsometry, eps_eq: float, eps_cert: float) -> Decomposition:
    # L^1 is not smooth, so the direct route is unavailable.  The adjoint of
    # T with respect to the bilinear pairing tau(x y) is an operator-norm
    # isometry S: N -> M with S(y) = J^-1(y w); decompose it with the
    # operator-norm branch (S = v K with v = J^-1(w), K = v* S), then undo
    # the twist: w = K^-1(v) and J^-1 = S(. w*).
    src, tgt = t.source, t.target
    p_src = pairing_matrix(src)
    p_tgt = pairing_matrix(tgt)
    m_s = np.linalg.solve(p_src, t.matrix.T @ p_tgt)
    s = RawIsometry(math.inf, tgt, src, m_s)
    kad = _decompose_infty(s, eps_eq, eps_cert)
    v, k = kad.w, kad.jordan
    w = k.inverse().apply(v)
    if not is_unitary(w, eps_eq):
        raise PolarPartNotUnitaryError("polar part not unitary: dualized unitary is not unitary")
    m_jinv = m_s @ _right_mult_matrix(tgt, w.dag())
    try:
        m_j = np.linalg.inv(m_jinv)
    except np.linalg.LinAlgError as exc:
        raise NotBijectiveError(f"not bijective: dualized Jordan data is singular ({exc})")
    jordan = classify_linear_map(m_j, src, tgt, tol=eps_eq)
    return _certify(t, w, jordan, eps_cert)


def decompose(t: LpIsometry, eps_eq: float = EPS_EQ, eps_cert: float = EPS_CERT) -> Decomposition:
    """Recover (w, J) with T(xi) = w D^(1/p) J(xi) from a dense map, and
    certify the result against the input.

    Branches: 1 < p < inf uses the polar/positivity route; p = inf reads off
    w = T(1) directly; p = 1 decomposes the adjoint at p = inf and dualizes.
    Raises PolarPartNotUnitaryError, PositiveImageError, NotJordanError,
    NotBijectiveError, BlockMismatchError, or CertificationError.
    """
    raw = to_raw(t)
    p = _check_p(raw.p)
    if raw.source.dim != raw.target.dim:
        raise BlockMismatchError(
            f"block mismatch: total dimensions {raw.source.dim} vs {raw.target.dim}"
        )
    if p == math.inf:
        return _decompose_infty(raw, eps_eq, eps_cert)
    if p == 1.0:
        return _decompose_l1(raw, eps_eq, eps_cert)
    return _decompose_direct(raw, eps_eq, eps_cert)


# ---------------------------------------------------------------------------
# structural probes

def _clean_blocks(xi: LpVector, rel: float = 1e-12) -> LpVector:
    scale = frob_norm(xi.element)
    if scale == 0.0:
        return xi
    data = tuple(
        m if np.linalg.norm(m) > rel * scale else np.zeros_like(m) for m in xi.element.data
    )
    return LpVector(AlgebraElement(xi.algebra, data), xi.p)


@dataclass(frozen=True)
class CornerImageReport:
    corner_in: Corner
    corner_out: Corner
    residual_forward: float   # images sit inside the output corner
    residual_backward: float  # output corner basis sits inside the image span


def corner_image(t: LpIsometry, corner: Corner) -> CornerImageReport:
    """Push a corner through T; the image of a corner under a surjective
    isometry is again a corner of equal linear dimension.

    Raises NotCornerError when the support joins of the images span a
    strictly larger corner than the input dimension allows."""
    if corner.algebra != t.source or corner.p != t.p:
        raise ShapeMismatchError("corner does not live on the source space")
    basis = corner.basis()
    # raw maps leave round-off dust on blocks the image misses; a relative
    # rank cut would promote that dust to support, so scrub it first
    images = [_clean_blocks(t.apply(b)) for b in basis]
    tgt = t.target
    r1 = joint_left_support([im.element for im in images], tgt)
    r2 = joint_right_support([im.element for im in images], tgt)
    out = Corner(r1, r2, t.p)
    if out.dim() != corner.dim():
        raise NotCornerError(
            f"image not a corner: input dimension {corner.dim()}, "
            f"smallest enclosing corner has dimension {out.dim()}"
        )
    fwd = 0.0
    for im in images:
        fwd = max(fwd, frob_norm(im.element - out.q1 @ im.element @ out.q2)
                  / max(1.0, frob_norm(im.element)))
    bwd = 0.0
    if images:
        span = np.stack([to_vec(im.element) for im in images], axis=1)
        q, _ = np.linalg.qr(span)
        for ob in out.basis():
            vec = to_vec(ob.element)
            bwd = max(bwd, float(np.linalg.norm(vec - q @ (q.conj().T @ vec)))
                      / max(1.0, float(np.linalg.norm(vec))))
    return CornerImageReport(corner, out, fwd, bwd)


@dataclass(frozen=True)
class CentralCorrespondence:
    """Bijection of minimal central summands induced by an isometry."""

    source: MultiMatrixAlgebra
    target: MultiMatrixAlgebra
    mapping: tuple[int, ...]

    def target_mask(self, source_mask: CentralProjection) -> CentralProjection:
        out = [False] * self.target.n_blocks
        for i, keep in enumerate(source_mask.mask):
            if keep:
                out[self.mapping[i]] = True
        return CentralProjection(self.target, tuple(out))


def central_correspondence(t: LpIsometry, tol: float = EPS_EQ) -> CentralCorrespondence:
    """Match each minimal central summand of the source to the central
    support of its image; for an isometry of structured form this is a
    dimension-preserving bijection sending abelian summands to abelian ones.

    Raises NotIsometryError when an image smears across several blocks,
    lands on a block of the wrong dimension, or fails to fill its block."""
    src, tgt = t.source, t.target
    taken: set[int] = set()
    mapping: list[int] = []
    for i, blk in enumerate(src.blocks):
        n = blk.dim
        imgs = []
        for a in range(n):
            for b in range(n):
                imgs.append(t.apply(LpVector(src.matrix_unit(i, a, b), t.p)).element)
        total = math.sqrt(sum(frob_norm(im) ** 2 for im in imgs))
        hits = [
            j
            for j in range(tgt.n_blocks)
            if math.sqrt(sum(float(np.linalg.norm(im.data[j]) ** 2) for im in imgs))
            > tol * max(1.0, total)
        ]
        if len(hits) != 1:
            raise NotIsometryError(
                f"not an isometry: central summand {i} maps onto {len(hits)} target blocks"
            )
        j = hits[0]
        if tgt.dims[j] != n:
            raise NotIsometryError(
                f"not an isometry: central summand {i} (dim {n}) lands on "
                f"target block {j} (dim {tgt.dims[j]})"
            )
        if j in taken:
            raise NotIsometryError(f"not an isometry: target block {j} is hit twice")
        # the restricted images must fill the whole target summand
        stacked = np.stack([im.data[j].reshape(-1) for im in imgs], axis=0)
        sv = np.linalg.svd(stacked, compute_uv=False)
        rank = int(np.sum(sv > EPS_RANK * sv[0])) if sv.size and sv[0] > 0 else 0
        if rank != tgt.dims[j] ** 2:
            raise NotIsometryError(
                f"not an isometry: image of central summand {i} does not fill block {j}"
            )
        taken.add(j)
        mapping.append(j)
    return CentralCorrespondence(src, tgt, tuple(mapping))


@dataclass(frozen=True, eq=False)
class RightOrthoiso:
    """Orthoisomorphism pi_r on projections induced by T on right supports.

    z_prime marks the target blocks where columns map to columns; on the
    complement columns map to rows and the right-support relation holds
    against left supports of the input instead, so pi_r there is read off
    from images of rows.  Either way the unitary factor of T cancels and
    pi_r agrees blockwise with the Jordan part of T on projections.  Abelian
    target blocks count as column-to-column by convention.  Calling the
    object maps a source projection q to pi_r(q)."""

    isometry: LpIsometry
    correspondence: CentralCorrespondence
    z_prime: CentralProjection

    @property
    def source_mask(self) -> CentralProjection:
        src = self.correspondence.source
        return CentralProjection(
            src,
            tuple(self.z_prime.mask[self.correspondence.mapping[i]] for i in range(src.n_blocks)),
        )

    def __call__(self, q: Projection) -> Projection:
        t = self.isometry
        src, tgt = t.source, t.target
        if q.algebra != src:
            raise ShapeMismatchError("projection does not live on the source algebra")
        data: list[np.ndarray | None] = [None] * tgt.n_blocks
        for i, blk in enumerate(src.blocks):
            j = self.correspondence.mapping[i]
            w, v = np.linalg.eigh(q.data[i])
            rng_basis = v[:, w > 0.5]
            images = []
            for a in range(blk.dim):
                ea = np.zeros(blk.dim, dtype=np.complex128)
                ea[a] = 1.0
                for b in range(rng_basis.shape[1]):
                    if self.z_prime.mask[j]:
                        m = np.outer(ea, rng_basis[:, b].conj())  # spans the column Mq
                    else:
                        m = np.outer(rng_basis[:, b], ea.conj())  # spans the row qM
                    images.append(t.apply(LpVector(_block_element(src, i, m), t.p)).element)
            if images:
                stacked = np.vstack([im.data[j] for im in images])
                basis = _range_basis(stacked.conj().T)
                data[j] = basis @ basis.conj().T
            else:
                data[j] = np.zeros((tgt.dims[j], tgt.dims[j]))
        return Projection(tgt, tuple(data))


def _column_corner(algebra: MultiMatrixAlgebra, q: Projection, p: float) -> Corner:
    one = CentralProjection(algebra, (True,) * algebra.n_blocks).to_projection()
    return Corner(one, q, p)


def _z_from_test_column(t: LpIsometry, q: Projection) -> tuple[bool | None, ...]:
    """Column/row verdict per target block from one proper test column;
    None marks blocks exempt from the vote (abelian)."""
    rep = corner_image(t, _column_corner(t.source, q, t.p))
    r1 = rep.corner_out.q1.ranks()
    r2 = rep.corner_out.q2.ranks()
    verdict: list[bool | None] = []
    for j, n in enumerate(t.target.dims):
        if n == 1:
            verdict.append(None)
            continue
        if r1[j] == n and 0 < r2[j] < n:
            verdict.append(True)   # column block
        elif r2[j] == n and 0 < r1[j] < n:
            verdict.append(False)  # row block
        else:
            raise NotIsometryError(
                "not an isometry of structured form: test column lands on "
                f"target block {j} with support ranks ({r1[j]}, {r2[j]}) of {n}"
            )
    return tuple(verdict)


def extract_right_orthoiso(t: LpIsometry, seed: int = 0) -> RightOrthoiso:
    """Derive the right-support orthoisomorphism pi_r and the central marker
    z' (column-to-column blocks) from two independent proper test columns.

    Requires 1 < p < inf, p != 2.  Purely abelian algebras have no proper
    test columns; there z' is all-multiplicative by convention.  Raises
    NotIsometryError when the two test columns disagree or an image is
    neither a column nor a row."""
    p = _check_p(t.p)
    if p == 1.0 or p == math.inf:
        raise ExponentError(f"right orthoisomorphism extraction needs 1 < p < inf, got {p}")
    corr = central_correspondence(t)
    src, tgt = t.source, t.target
    if all(n == 1 for n in tgt.dims):
        z = CentralProjection(tgt, (True,) * tgt.n_blocks)
        return RightOrthoiso(t, corr, z)

    rng = _as_rng(seed)

    def _test_column(ranks_low: bool) -> Projection:
        ranks = []
        for n in src.dims:
            if n == 1:
                ranks.append(1)
            elif ranks_low:
                ranks.append(1)
            else:
                ranks.append(n - 1)
        return random_sample(src, "projection", rng, ranks=ranks)  # type: ignore[return-value]

    v1 = _z_from_test_column(t, _test_column(True))
    v2 = _z_from_test_column(t, _test_column(False))
    mask = []
    for j, (a, b) in enumerate(zip(v1, v2)):
        if a is None:
            mask.append(True)  # abelian blocks: multiplicative by convention
            continue
        if a != b:
            raise NotIsometryError(
                "not an isometry of structured form: column/row verdict for "
                f"target block {j} depends on the test column"
            )
        mask.append(a)
    return RightOrthoiso(t, corr, CentralProjection(tgt, tuple(mask)))


@dataclass(frozen=True)
class ModuleRelationReport:
    """Worst residuals of T(xi x) = T(xi) pi_r(x) per source block (the
    antimultiplicative variant checks T(x xi) = T(xi) pi_r(x))."""

    per_block: tuple[float, ...]
    residual: float


def check_module_relation(
    t: LpIsometry,
    jordan: JordanMap,
    n_samples: int = 8,
    seed: int = 0,
) -> ModuleRelationReport:
    """Diagnostic only: measure how well T intertwines right multiplication
    with pi_r extended to the algebra by the decomposed Jordan map."""
    src = t.source
    if jordan.source != src or jordan.target != t.target:
        raise ShapeMismatchError("Jordan map does not match the isometry")
    rng = _as_rng(seed)
    per_block = []
    for i in range(src.n_blocks):
        worst = 0.0
        for _ in range(n_samples):
            xi_el = _block_element(src, i, _random_block(rng, src.dims[i]))
            x_el = _block_element(src, i, _random_block(rng, src.dims[i]))
            xi_el = xi_el / max(frob_norm(xi_el), 1e-300)
            x_el = x_el / max(frob_norm(x_el), 1e-300)
            jx = jordan.apply(x_el)
            if jordan.anti[i]:
                lhs = t.apply(LpVector(x_el @ xi_el, t.p)).element
            else:
                lhs = t.apply(LpVector(xi_el @ x_el, t.p)).element
            rhs = t.apply(LpVector(xi_el, t.p)).element @ jx
            worst = max(worst, frob_norm(lhs - rhs))
        per_block.append(worst)
    return ModuleRelationReport(tuple(per_block), max(per_block, default=0.0))


def _random_block(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)


@dataclass(frozen=True)
class IsometryScreen:
    """Sampled sanity check; no_evidence flags a zero-sample run."""

    max_rel_deviation: float
    n_samples: int
    no_evidence: bool


def verify_isometry_sampled(t: LpIsometry, n_samples: int = 50, seed: int = 0) -> IsometryScreen:
    """Largest relative norm deviation over random vectors.  Screening only:
    small deviation on samples never certifies the map."""
    if n_samples <= 0:
        return IsometryScreen(0.0, 0, True)
    rng = _as_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        xi = LpVector(random_sample(t.source, "element", rng), t.p)
        before = lp_norm(xi)
        if before == 0.0:
            continue
        after = lp_norm(t.apply(xi))
        worst = max(worst, abs(after - before) / before)
    return IsometryScreen(worst, n_samples, False)
