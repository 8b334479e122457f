"""Jordan *-isomorphisms between multi-matrix algebras, in canonical form.

A Jordan *-isomorphism acts block by block: it matches each source block to a
target block of equal dimension (sigma), then applies x -> u x u* or the
antimultiplicative x -> u x^T u*.  classify_linear_map recovers this form
from a dense matrix; pushforward_functional transports densities through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    EPS_EQ,
    AlgebraElement,
    CentralProjection,
    MultiMatrixAlgebra,
    _as_rng,
    _haar_unitary,
    allclose,
    fix_phase,
    frob_norm,
    from_vec,
    linmap_matrix,
    to_vec,
)
from .errors import (
    BlockMismatchError,
    NotBijectiveError,
    NotJordanError,
    ShapeMismatchError,
)
from .lpspace import PositiveFunctional


@dataclass(frozen=True, eq=False)
class JordanMap:
    """Canonical form: sigma matches blocks, one unitary and one flag per
    source block.  Abelian blocks carry the multiplicative flag by convention."""

    source: MultiMatrixAlgebra
    target: MultiMatrixAlgebra
    sigma: tuple[int, ...]
    unitaries: tuple[np.ndarray, ...]
    anti: tuple[bool, ...]

    def __post_init__(self):
        k = self.source.n_blocks
        if self.target.n_blocks != k:
            raise BlockMismatchError("block mismatch: different block counts")
        if sorted(self.sigma) != list(range(k)):
            raise ValueError(f"sigma {self.sigma} is not a bijection of block indices")
        us = []
        for i, j in enumerate(self.sigma):
            n_src = self.source.dims[i]
            if self.target.dims[j] != n_src:
                raise BlockMismatchError(
                    f"block mismatch: source block {i} (dim {n_src}) maps to "
                    f"target block {j} (dim {self.target.dims[j]})"
                )
            u = np.array(self.unitaries[i], dtype=np.complex128, copy=True)
            if u.shape != (n_src, n_src):
                raise ShapeMismatchError(f"unitary {i} has shape {u.shape}")
            if np.linalg.norm(u.conj().T @ u - np.eye(n_src)) > EPS_EQ * max(1.0, n_src):
                raise ValueError(f"matrix for block {i} is not unitary")
            u.flags.writeable = False
            us.append(u)
        object.__setattr__(self, "sigma", tuple(int(j) for j in self.sigma))
        object.__setattr__(self, "unitaries", tuple(us))
        # transpose is trivial on 1x1 blocks; normalize the flag there
        object.__setattr__(
            self,
            "anti",
            tuple(bool(a) and self.source.dims[i] > 1 for i, a in enumerate(self.anti)),
        )

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.source:
            raise ShapeMismatchError("element does not live on the source algebra")
        data: list[np.ndarray | None] = [None] * self.target.n_blocks
        for i, j in enumerate(self.sigma):
            u = self.unitaries[i]
            xb = x.data[i].T if self.anti[i] else x.data[i]
            data[j] = u @ xb @ u.conj().T
        return AlgebraElement(self.target, tuple(data))  # type: ignore[arg-type]

    def inverse(self) -> "JordanMap":
        k = self.source.n_blocks
        inv_sigma = [0] * k
        for i, j in enumerate(self.sigma):
            inv_sigma[j] = i
        # inverse of Ad(u) is Ad(u*); inverse of u (.)^T u* is u^T (.)^T (u^T)*
        us = [None] * k
        flags = [False] * k
        for i, j in enumerate(self.sigma):
            u = self.unitaries[i]
            us[j] = u.T if self.anti[i] else u.conj().T
            flags[j] = self.anti[i]
        return JordanMap(self.target, self.source, tuple(inv_sigma), tuple(us), tuple(flags))

    def to_matrix(self) -> np.ndarray:
        return linmap_matrix(self.source, self.target, self.apply)

    def canonical(self) -> "JordanMap":
        """Fix each unitary's global phase (it is only determined up to one)."""
        return JordanMap(
            self.source,
            self.target,
            self.sigma,
            tuple(fix_phase(u) for u in self.unitaries),
            self.anti,
        )

    def multiplicative_mask(self) -> CentralProjection:
        """Central projection of the source spanned by the multiplicative blocks."""
        return CentralProjection(self.source, tuple(not a for a in self.anti))


@dataclass(frozen=True)
class CentralDensity:
    """Per-block positive scalars: the density of the pushed-forward trace.

    For a Jordan map J, D_j = weight_source[sigma^-1(j)] / weight_target[j]
    makes tau_target(D J(h) y) = tau_source(h J^-1(y)) for all h, y.
    """

    algebra: MultiMatrixAlgebra
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != self.algebra.n_blocks:
            raise ShapeMismatchError("value count does not match block count")
        if any(not v > 0 for v in self.values):
            raise ValueError("central density must be strictly positive")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_jordan(cls, j: JordanMap) -> "CentralDensity":
        vals = [0.0] * j.target.n_blocks
        for i, jj in enumerate(j.sigma):
            vals[jj] = j.source.weights[i] / j.target.weights[jj]
        return cls(j.target, tuple(vals))

    def scale(self, x: AlgebraElement, power: float = 1.0) -> AlgebraElement:
        if x.algebra != self.algebra:
            raise ShapeMismatchError("element does not live on the density's algebra")
        facs = [v**power if power != 0 else 1.0 for v in self.values]
        return AlgebraElement(self.algebra, tuple(f * m for f, m in zip(facs, x.data)))


def apply_jordan(j: JordanMap, x: AlgebraElement) -> AlgebraElement:
    return j.apply(x)


def jordan_split(
    j: JordanMap,
) -> tuple[CentralProjection, JordanMap | None, JordanMap | None]:
    """Split J along the central projection z carried by the multiplicative
    blocks; returns (z, multiplicative part, antimultiplicative part), with
    None for an empty part."""
    z = j.multiplicative_mask()

    def _part(mask: Sequence[bool]) -> JordanMap | None:
        if not any(mask):
            return None
        src = j.source.restrict(mask)
        tgt_keep = [False] * j.target.n_blocks
        for i, keep in enumerate(mask):
            if keep:
                tgt_keep[j.sigma[i]] = True
        tgt = j.target.restrict(tgt_keep)
        tgt_pos = {jj: k for k, jj in enumerate(i for i, keep in enumerate(tgt_keep) if keep)}
        sigma = tuple(tgt_pos[j.sigma[i]] for i, keep in enumerate(mask) if keep)
        us = tuple(j.unitaries[i] for i, keep in enumerate(mask) if keep)
        anti = tuple(j.anti[i] for i, keep in enumerate(mask) if keep)
        return JordanMap(src, tgt, sigma, us, anti)

    return z, _part(z.mask), _part(z.complement().mask)


def pushforward_functional(phi: PositiveFunctional, j: JordanMap) -> PositiveFunctional:
    """Density of phi o J^-1 with respect to the target trace: D * J(h)."""
    if phi.algebra != j.source:
        raise ShapeMismatchError("functional does not live on the source algebra")
    d = CentralDensity.from_jordan(j)
    return PositiveFunctional(j.target, d.scale(j.apply(phi.density)))


def random_jordan(
    source: MultiMatrixAlgebra,
    target: MultiMatrixAlgebra,
    seed: int | np.random.Generator,
) -> JordanMap:
    """Uniform sigma among dimension-compatible bijections, Haar unitaries,
    fair-coin flags on non-abelian blocks."""
    if sorted(source.dims) != sorted(target.dims):
        raise BlockMismatchError(
            f"block mismatch: dims {source.dims} vs {target.dims}"
        )
    rng = _as_rng(seed)
    sigma = [0] * source.n_blocks
    for n in sorted(set(source.dims)):
        src_idx = [i for i, d in enumerate(source.dims) if d == n]
        tgt_idx = [i for i, d in enumerate(target.dims) if d == n]
        perm = rng.permutation(len(tgt_idx))
        for k, i in enumerate(src_idx):
            sigma[i] = tgt_idx[perm[k]]
    us = tuple(_haar_unitary(n, rng) for n in source.dims)
    anti = tuple(bool(rng.integers(0, 2)) and n > 1 for n in source.dims)
    return JordanMap(source, target, tuple(sigma), us, anti)


def jordan_distance(j1: JordanMap, j2: JordanMap) -> float:
    """Max block distance between canonical forms; inf when the discrete data
    (algebras, sigma, flags) disagree."""
    if (
        j1.source != j2.source
        or j1.target != j2.target
        or j1.sigma != j2.sigma
        or j1.anti != j2.anti
    ):
        return math.inf
    c1, c2 = j1.canonical(), j2.canonical()
    return max(
        (float(np.linalg.norm(a - b)) for a, b in zip(c1.unitaries, c2.unitaries)),
        default=0.0,
    )


def classify_linear_map(
    matrix: np.ndarray,
    source: MultiMatrixAlgebra,
    target: MultiMatrixAlgebra,
    tol: float = EPS_EQ,
) -> JordanMap:
    """Recover the canonical form of a Jordan *-isomorphism given as a dense
    matrix over matrix-unit coordinates.

    Checks, in order: compatible block structure, numerical invertibility,
    unitality, *-preservation, that minimal central projections map to
    minimal central projections (giving sigma), the multiplicative vs
    antimultiplicative flag per block (comparing L(xy) against L(x)L(y) and
    L(y)L(x) on matrix units), and finally a full reconstruction residual
    against the recovered canonical form.

    Raises BlockMismatchError, NotBijectiveError, or NotJordanError.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    if sorted(source.dims) != sorted(target.dims):
        raise BlockMismatchError(f"block mismatch: dims {source.dims} vs {target.dims}")
    d = source.dim
    if matrix.shape != (target.dim, d):
        raise ShapeMismatchError(f"matrix shape {matrix.shape} != ({target.dim}, {d})")
    s = np.linalg.svd(matrix, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= 1e-10 * s[0]:
        raise NotBijectiveError(f"not bijective: singular value ratio {s[-1] / max(s[0], 1e-300):.3e}")

    def l(x: AlgebraElement) -> AlgebraElement:
        return from_vec(target, matrix @ to_vec(x))

    one_img = l(source.identity())
    if not allclose(one_img, target.identity(), tol):
        raise NotJordanError("not Jordan: the map is not unital")

    star_res = 0.0
    for i, a, b in source.units():
        e = source.matrix_unit(i, a, b)
        star_res = max(star_res, frob_norm(l(e.dag()) - l(e).dag()))
    if star_res > tol * max(1.0, float(s[0])):
        raise NotJordanError(f"not Jordan: adjoints are not preserved (residual {star_res:.3e})")

    # sigma from images of the minimal central projections
    sigma: list[int] = []
    used: set[int] = set()
    for i in range(source.n_blocks):
        y = l(source.central_unit(i))
        hits = [
            jj
            for jj in range(target.n_blocks)
            if np.linalg.norm(y.data[jj]) > tol * max(1.0, frob_norm(y))
        ]
        if len(hits) != 1:
            raise NotJordanError(
                f"not Jordan: central summand {i} maps onto {len(hits)} target blocks"
            )
        jj = hits[0]
        if target.dims[jj] != source.dims[i]:
            raise BlockMismatchError(
                f"block mismatch: block {i} (dim {source.dims[i]}) lands on "
                f"target block {jj} (dim {target.dims[jj]})"
            )
        if np.linalg.norm(y.data[jj] - np.eye(target.dims[jj])) > tol * max(1.0, source.dims[i]):
            raise NotJordanError(f"not Jordan: central summand {i} does not map to an identity")
        if jj in used:
            raise NotJordanError(f"not Jordan: two central summands map onto block {jj}")
        used.add(jj)
        sigma.append(jj)

    unitaries: list[np.ndarray] = []
    anti_flags: list[bool] = []
    for i, n in enumerate(source.dims):
        jj = sigma[i]
        if n == 1:
            unitaries.append(np.eye(1))
            anti_flags.append(False)
            continue
        # flag: probe one noncommuting product of matrix units
        if n >= 3:
            x, y = source.matrix_unit(i, 0, 1), source.matrix_unit(i, 1, 2)
        else:
            x, y = source.matrix_unit(i, 0, 0), source.matrix_unit(i, 0, 1)
        lxy, lx, ly = l(x @ y), l(x), l(y)
        mult_res = frob_norm(lxy - lx @ ly)
        anti_res = frob_norm(lxy - ly @ lx)
        mult_ok = mult_res <= tol
        anti_ok = anti_res <= tol
        if mult_ok == anti_ok:
            raise NotJordanError(
                f"not Jordan: block {i} is neither multiplicative nor "
                f"antimultiplicative (residuals {mult_res:.3e}, {anti_res:.3e})"
            )
        anti = anti_ok
        # recover the frame: columns c_a of u satisfy N(e_ab) = c_a c_b*,
        # where N = L for the multiplicative case and N(e_ab) = L(e_ba) else.
        def nimg(a: int, b: int) -> np.ndarray:
            if anti:
                a, b = b, a
            return l(source.matrix_unit(i, a, b)).data[jj]

        b00 = nimg(0, 0)
        w, v = np.linalg.eigh((b00 + b00.conj().T) / 2)
        if abs(w[-1] - 1.0) > 0.1:
            raise NotJordanError(f"not Jordan: image of a minimal projection has spectrum {w}")
        c0 = v[:, -1]
        cols = [c0] + [nimg(a, 0) @ c0 for a in range(1, n)]
        u = fix_phase(np.stack(cols, axis=1))
        if np.linalg.norm(u.conj().T @ u - np.eye(n)) > 1e-6:
            raise NotJordanError(f"not Jordan: recovered frame on block {i} is not unitary")
        unitaries.append(u)
        anti_flags.append(anti)

    j = JordanMap(source, target, tuple(sigma), tuple(unitaries), tuple(anti_flags))
    res = float(np.linalg.norm(j.to_matrix() - matrix))
    if res > tol * max(1.0, float(np.linalg.norm(matrix))):
        raise NotJordanError(f"not Jordan: reconstruction residual {res:.3e}")
    return j
