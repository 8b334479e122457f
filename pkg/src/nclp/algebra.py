"""Weighted multi-matrix algebras and their spectral primitives.

A finite-dimensional von Neumann algebra is modeled as a direct sum of full
complex matrix blocks M_{n_i}(C) with strictly positive trace weights
lambda_i; the faithful trace is tau(x) = sum_i lambda_i tr(x_i).  Everything
downstream (L^p norms, Jordan maps, isometries) is built on the block-wise
spectral operations defined here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Literal, Sequence

import numpy as np

from .errors import NotProjectionError, ShapeMismatchError

# Numerical rank decisions use EPS_RANK relative to the largest singular
# value; approximate equality uses EPS_EQ in Frobenius norm relative to the
# operand scale.  Block sizes stay small (dims <= ~8), so dense spectral
# routines are always adequate.
EPS_RANK = 1e-10
EPS_EQ = 1e-8

SampleKind = Literal["element", "projection", "unitary", "psd"]


def _freeze(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=np.complex128, copy=True, order="C")
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Block:
    """One matrix block: dimension n >= 1 and trace weight > 0."""

    dim: int
    weight: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"block dimension must be an integer >= 1, got {self.dim}")
        if not self.weight > 0:
            raise ValueError(f"block weight must be > 0, got {self.weight}")


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    """Direct sum of matrix blocks with weights; immutable and hashable."""

    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @classmethod
    def from_dims(cls, dims: Sequence[int], weights: Sequence[float] | None = None) -> "MultiMatrixAlgebra":
        if weights is None:
            weights = [1.0] * len(dims)
        if len(weights) != len(dims):
            raise ValueError("dims and weights must have equal length")
        return cls(tuple(Block(int(n), float(w)) for n, w in zip(dims, weights)))

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(b.weight for b in self.blocks)

    @property
    def dim(self) -> int:
        """Complex dimension sum_i n_i^2 of the underlying vector space."""
        return sum(b.dim * b.dim for b in self.blocks)

    def block_offset(self, i: int) -> int:
        return sum(b.dim * b.dim for b in self.blocks[:i])

    def unit_index(self, i: int, a: int, b: int) -> int:
        """Flat coordinate of the matrix unit e_ab in block i (block-major, row-major)."""
        n = self.blocks[i].dim
        return self.block_offset(i) + a * n + b

    def units(self) -> Iterator[tuple[int, int, int]]:
        for i, blk in enumerate(self.blocks):
            for a in range(blk.dim):
                for b in range(blk.dim):
                    yield i, a, b

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.zeros((b.dim, b.dim)) for b in self.blocks))

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, tuple(np.eye(b.dim) for b in self.blocks))

    def matrix_unit(self, i: int, a: int, b: int) -> "AlgebraElement":
        data = [np.zeros((blk.dim, blk.dim)) for blk in self.blocks]
        data[i][a, b] = 1.0
        return AlgebraElement(self, tuple(data))

    def central_unit(self, i: int) -> "AlgebraElement":
        """Identity of block i, zero elsewhere (a minimal central projection)."""
        data = [np.zeros((blk.dim, blk.dim)) for blk in self.blocks]
        data[i] = np.eye(self.blocks[i].dim)
        return AlgebraElement(self, tuple(data))

    def restrict(self, mask: Sequence[bool]) -> "MultiMatrixAlgebra":
        if len(mask) != self.n_blocks:
            raise ShapeMismatchError("mask length does not match block count")
        return MultiMatrixAlgebra(tuple(b for b, keep in zip(self.blocks, mask) if keep))

    def abelian_mask(self) -> tuple[bool, ...]:
        return tuple(b.dim == 1 for b in self.blocks)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """One complex matrix per block.  Instances are immutable."""

    algebra: MultiMatrixAlgebra
    data: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.data) != self.algebra.n_blocks:
            raise ShapeMismatchError(
                f"expected {self.algebra.n_blocks} blocks, got {len(self.data)}"
            )
        mats = []
        for blk, m in zip(self.algebra.blocks, self.data):
            m = np.asarray(m)
            if m.shape != (blk.dim, blk.dim):
                raise ShapeMismatchError(f"block shape {m.shape} != ({blk.dim}, {blk.dim})")
            mats.append(_freeze(m))
        object.__setattr__(self, "data", tuple(mats))

    def block(self, i: int) -> np.ndarray:
        return self.data[i]

    def dag(self) -> "AlgebraElement":
        """Adjoint x*."""
        return AlgebraElement(self.algebra, tuple(m.conj().T for m in self.data))

    def _check_peer(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ShapeMismatchError("operands live on different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_peer(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_peer(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(-a for a in self.data))

    def __mul__(self, c: complex) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(c * a for a in self.data))

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "AlgebraElement":
        return self * (1.0 / c)

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Ring product, block by block."""
        self._check_peer(other)
        return AlgebraElement(self.algebra, tuple(a @ b for a, b in zip(self.data, other.data)))


class Projection(AlgebraElement):
    """Self-adjoint idempotent.  Construction re-symmetrizes and rounds the
    spectrum to {0, 1}; inputs farther than EPS_EQ from the result are rejected."""

    def __post_init__(self):
        super().__post_init__()
        cleaned = []
        drift = 0.0
        scale = max(1.0, frob_norm(self))
        for m in self.data:
            h = (m + m.conj().T) / 2.0
            w, v = np.linalg.eigh(h)
            r = np.where(w > 0.5, 1.0, 0.0)
            q = (v * r) @ v.conj().T
            drift += np.linalg.norm(q - m) ** 2
            cleaned.append(_freeze(q))
        if np.sqrt(drift) > EPS_EQ * scale:
            raise NotProjectionError(
                f"element is {np.sqrt(drift):.3e} away from the nearest projection"
            )
        object.__setattr__(self, "data", tuple(cleaned))

    def ranks(self) -> tuple[int, ...]:
        return tuple(int(round(np.trace(m).real)) for m in self.data)

    def complement(self) -> "Projection":
        one = self.algebra.identity()
        return Projection(self.algebra, tuple(i - m for i, m in zip(one.data, self.data)))


@dataclass(frozen=True)
class CentralProjection:
    """Central projection, stored as a boolean mask over blocks."""

    algebra: MultiMatrixAlgebra
    mask: tuple[bool, ...]

    def __post_init__(self):
        if len(self.mask) != self.algebra.n_blocks:
            raise ShapeMismatchError("mask length does not match block count")
        object.__setattr__(self, "mask", tuple(bool(b) for b in self.mask))

    def to_projection(self) -> Projection:
        data = [
            np.eye(blk.dim) if keep else np.zeros((blk.dim, blk.dim))
            for blk, keep in zip(self.algebra.blocks, self.mask)
        ]
        return Projection(self.algebra, tuple(data))

    def complement(self) -> "CentralProjection":
        return CentralProjection(self.algebra, tuple(not b for b in self.mask))

    def __and__(self, other: "CentralProjection") -> "CentralProjection":
        if other.algebra != self.algebra:
            raise ShapeMismatchError("operands live on different algebras")
        return CentralProjection(self.algebra, tuple(a and b for a, b in zip(self.mask, other.mask)))

    def __or__(self, other: "CentralProjection") -> "CentralProjection":
        if other.algebra != self.algebra:
            raise ShapeMismatchError("operands live on different algebras")
        return CentralProjection(self.algebra, tuple(a or b for a, b in zip(self.mask, other.mask)))

    def is_orthogonal_to(self, other: "CentralProjection") -> bool:
        return not any((self & other).mask)

    def all(self) -> bool:
        return all(self.mask)

    def none(self) -> bool:
        return not any(self.mask)

    def apply_to(self, x: AlgebraElement) -> AlgebraElement:
        """Multiply by the mask: zero out blocks outside the support."""
        data = tuple(m if keep else np.zeros_like(m) for m, keep in zip(x.data, self.mask))
        if isinstance(x, Projection):
            return Projection(x.algebra, data)
        return AlgebraElement(x.algebra, data)

    def dominates(self, q: Projection) -> bool:
        """True when q vanishes on every masked-out block."""
        return all(keep or np.linalg.norm(m) <= EPS_EQ for m, keep in zip(q.data, self.mask))


# ---------------------------------------------------------------------------
# scalar functionals and norms

def trace(x: AlgebraElement) -> complex:
    """Weighted trace tau(x) = sum_i lambda_i tr(x_i)."""
    return complex(sum(w * np.trace(m) for w, m in zip(x.algebra.weights, x.data)))


def frob_norm(x: AlgebraElement) -> float:
    return float(np.sqrt(sum(np.linalg.norm(m) ** 2 for m in x.data)))


def op_norm(x: AlgebraElement) -> float:
    """Operator norm: largest singular value across blocks."""
    return float(max(np.linalg.norm(m, 2) if m.size else 0.0 for m in x.data))


def allclose(x: AlgebraElement, y: AlgebraElement, tol: float = EPS_EQ) -> bool:
    x._check_peer(y)
    return frob_norm(x - y) <= tol * max(1.0, frob_norm(x), frob_norm(y))


def jordan_product(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Symmetrized product (xy + yx) / 2."""
    return (x @ y + y @ x) * 0.5


def is_hermitian(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    return frob_norm(x - x.dag()) <= tol * max(1.0, frob_norm(x))


def is_unitary(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    res = frob_norm(x.dag() @ x - x.algebra.identity())
    return res <= tol * max(1.0, frob_norm(x) ** 2)


def is_psd(x: AlgebraElement, tol: float = EPS_EQ) -> bool:
    if not is_hermitian(x, tol):
        return False
    scale = max(1.0, op_norm(x))
    return all(np.linalg.eigvalsh((m + m.conj().T) / 2).min(initial=0.0) >= -tol * scale for m in x.data)


# ---------------------------------------------------------------------------
# spectral calculus

def psd_power(x: AlgebraElement, t: float) -> AlgebraElement:
    """x^t for positive semidefinite x, by functional calculus.

    Eigenvalues below zero (numerical noise) are clamped to 0 before the
    power, so fractional t never sees a negative base.
    """
    out = []
    for m in x.data:
        w, v = np.linalg.eigh((m + m.conj().T) / 2)
        w = np.clip(w, 0.0, None)
        pw = np.where(w > 0, w, 0.0) ** t if t != 0 else np.ones_like(w)
        if t < 1:  # 0^t = 0 also for t < 1; numpy already yields 0, keep exact
            pw = np.where(w > 0, pw, 0.0)
        out.append((v * pw) @ v.conj().T)
    return AlgebraElement(x.algebra, tuple(out))


def positive_part(x: AlgebraElement) -> AlgebraElement:
    """Spectral positive part of a hermitian element."""
    out = []
    for m in x.data:
        w, v = np.linalg.eigh((m + m.conj().T) / 2)
        out.append((v * np.clip(w, 0.0, None)) @ v.conj().T)
    return AlgebraElement(x.algebra, tuple(out))


def polar_decompose(x: AlgebraElement) -> tuple[AlgebraElement, AlgebraElement]:
    """Polar decomposition x = v m with m = (x* x)^(1/2).

    v is the partial isometry with v* v = right support of x; on a zero block
    both factors are zero.
    """
    vs, ms = [], []
    for m in x.data:
        if np.linalg.norm(m) == 0.0:
            vs.append(np.zeros_like(m))
            ms.append(np.zeros_like(m))
            continue
        u, s, vh = np.linalg.svd(m)
        r = int(np.sum(s > EPS_RANK * s[0]))
        vs.append(u[:, :r] @ vh[:r, :])
        ms.append((vh.conj().T * s) @ vh)
    return AlgebraElement(x.algebra, tuple(vs)), AlgebraElement(x.algebra, tuple(ms))


def _range_basis(m: np.ndarray, rtol: float = EPS_RANK) -> np.ndarray:
    """Orthonormal basis of the column space, rank cut at rtol * sigma_max."""
    if np.linalg.norm(m) == 0.0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(m)
    r = int(np.sum(s > rtol * s[0]))
    return u[:, :r]


def left_support(x: AlgebraElement) -> Projection:
    """Range projection of x x*."""
    out = []
    for m in x.data:
        b = _range_basis(m)
        out.append(b @ b.conj().T + np.zeros_like(m))
    return Projection(x.algebra, tuple(out))


def right_support(x: AlgebraElement) -> Projection:
    """Range projection of x* x."""
    return left_support(x.dag())


def supports(x: AlgebraElement) -> tuple[Projection, Projection]:
    return left_support(x), right_support(x)


def joint_left_support(elements: Sequence[AlgebraElement], algebra: MultiMatrixAlgebra) -> Projection:
    """Join of the left supports of a finite family (zero projection if empty)."""
    if not elements:
        return CentralProjection(algebra, (False,) * algebra.n_blocks).to_projection()
    out = []
    for i, blk in enumerate(algebra.blocks):
        stacked = np.hstack([e.data[i] for e in elements])
        b = _range_basis(stacked)
        out.append(b @ b.conj().T + np.zeros((blk.dim, blk.dim)))
    return Projection(algebra, tuple(out))


def joint_right_support(elements: Sequence[AlgebraElement], algebra: MultiMatrixAlgebra) -> Projection:
    return joint_left_support([e.dag() for e in elements], algebra)


def proj_meet(p: Projection, q: Projection) -> Projection:
    """Lattice meet p ^ q via principal angles between the ranges.

    Directions whose principal cosine exceeds 1 - EPS_RANK count as common;
    this is a one-shot SVD decision, not an iterated limit.
    """
    p._check_peer(q)
    out = []
    for mp, mq in zip(p.data, q.data):
        bp = _range_basis(mp)
        bq = _range_basis(mq)
        if bp.shape[1] == 0 or bq.shape[1] == 0:
            out.append(np.zeros_like(mp))
            continue
        u, s, _ = np.linalg.svd(bp.conj().T @ bq)
        k = int(np.sum(s > 1.0 - EPS_RANK))
        if k == 0:
            out.append(np.zeros_like(mp))
            continue
        y = bp @ u[:, :k]
        out.append(y @ y.conj().T)
    return Projection(p.algebra, tuple(out))


def proj_join(p: Projection, q: Projection) -> Projection:
    """Lattice join 1 - ((1 - p) ^ (1 - q))."""
    return proj_meet(p.complement(), q.complement()).complement()


def proj_leq(p: Projection, q: Projection, tol: float = EPS_EQ) -> bool:
    """p <= q as projections (q p = p up to tol)."""
    return frob_norm(q @ p - p) <= tol * max(1.0, frob_norm(p))


def central_support(q: AlgebraElement) -> CentralProjection:
    """Smallest central projection dominating q (mask of nonzero blocks)."""
    if not isinstance(q, Projection):
        q = Projection(q.algebra, q.data)  # validates the invariant
    mask = []
    for m in q.data:
        s = np.linalg.svd(m, compute_uv=False)
        mask.append(bool(s.size and s[0] > EPS_RANK))
    return CentralProjection(q.algebra, tuple(mask))


# ---------------------------------------------------------------------------
# sampling

def _as_rng(seed: int | np.random.Generator) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    # QR of a complex Gaussian with phase correction gives Haar measure.
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    ph = np.where(np.abs(d) > 0, d / np.abs(np.where(np.abs(d) > 0, d, 1.0)), 1.0)
    return q * ph


def random_sample(
    algebra: MultiMatrixAlgebra,
    kind: SampleKind,
    seed: int | np.random.Generator,
    ranks: Sequence[int] | None = None,
) -> AlgebraElement:
    """Draw a random element of the requested kind; deterministic per seed.

    kind = "element": i.i.d. standard complex Gaussian entries.
    kind = "projection": Haar frame times a rank pattern (random ranks when
        ranks is None).
    kind = "unitary": Haar unitary per block.
    kind = "psd": g* g, normalized to unit trace mass.
    """
    rng = _as_rng(seed)
    dims = algebra.dims
    if kind == "element":
        data = [
            (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
            for n in dims
        ]
        return AlgebraElement(algebra, tuple(data))
    if kind == "unitary":
        return AlgebraElement(algebra, tuple(_haar_unitary(n, rng) for n in dims))
    if kind == "psd":
        data = []
        for n in dims:
            g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
            data.append(g.conj().T @ g)
        x = AlgebraElement(algebra, tuple(data))
        return x / trace(x).real
    if kind == "projection":
        if ranks is None:
            ranks = [int(rng.integers(0, n + 1)) for n in dims]
        if len(ranks) != len(dims) or any(r < 0 or r > n for r, n in zip(ranks, dims)):
            raise ValueError(f"invalid rank request {tuple(ranks)} for dims {dims}")
        data = []
        for n, r in zip(dims, ranks):
            u = _haar_unitary(n, rng)
            data.append(u[:, :r] @ u[:, :r].conj().T + np.zeros((n, n)))
        return Projection(algebra, tuple(data))
    raise ValueError(f"unknown sample kind {kind!r}")


# ---------------------------------------------------------------------------
# flat coordinates (block-major, row-major within blocks)

def to_vec(x: AlgebraElement) -> np.ndarray:
    return np.concatenate([m.reshape(-1) for m in x.data])


def from_vec(algebra: MultiMatrixAlgebra, v: np.ndarray) -> AlgebraElement:
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (algebra.dim,):
        raise ShapeMismatchError(f"vector length {v.shape} != ({algebra.dim},)")
    data = []
    off = 0
    for blk in algebra.blocks:
        n = blk.dim
        data.append(v[off : off + n * n].reshape(n, n))
        off += n * n
    return AlgebraElement(algebra, tuple(data))


def linmap_matrix(
    source: MultiMatrixAlgebra,
    target: MultiMatrixAlgebra,
    f: Callable[[AlgebraElement], AlgebraElement],
) -> np.ndarray:
    """Dense matrix of a complex-linear map, columns indexed by matrix units."""
    cols = []
    for i, a, b in source.units():
        cols.append(to_vec(f(source.matrix_unit(i, a, b))))
    return np.stack(cols, axis=1)


def pairing_matrix(algebra: MultiMatrixAlgebra) -> np.ndarray:
    """Gram matrix of the bilinear pairing (x, y) -> tau(x y) on matrix units."""
    d = algebra.dim
    P = np.zeros((d, d), dtype=np.complex128)
    for i, blk in enumerate(algebra.blocks):
        n, w = blk.dim, blk.weight
        for a in range(n):
            for b in range(n):
                P[algebra.unit_index(i, a, b), algebra.unit_index(i, b, a)] = w
    return P


def restrict_element(x: AlgebraElement, mask: Sequence[bool]) -> AlgebraElement:
    sub = x.algebra.restrict(mask)
    data = tuple(m for m, keep in zip(x.data, mask) if keep)
    return AlgebraElement(sub, data)


def embed_element(x: AlgebraElement, algebra: MultiMatrixAlgebra, mask: Sequence[bool]) -> AlgebraElement:
    """Inverse of restrict_element: place blocks back, zero elsewhere."""
    it = iter(x.data)
    data = []
    for blk, keep in zip(algebra.blocks, mask):
        data.append(next(it) if keep else np.zeros((blk.dim, blk.dim)))
    return AlgebraElement(algebra, tuple(data))


def fix_phase(u: np.ndarray) -> np.ndarray:
    """Normalize a unitary's global phase: first significant entry of the
    first column becomes real positive."""
    c = u[:, 0]
    idx = int(np.argmax(np.abs(c) > 1e-6 * np.abs(c).max()))
    z = c[idx]
    if np.abs(z) == 0:
        return u
    return u * (np.conj(z) / np.abs(z))
