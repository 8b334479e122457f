"""Noncommutative L^p structure over a multi-matrix algebra.

Norms are weighted Schatten norms for the trace tau; positive vectors are
p-th roots of densities of positive functionals.  The Clarkson equality
defect, the semi-inner product, and the corner calculus live here.
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
    Projection,
    central_support,
    frob_norm,
    is_hermitian,
    joint_left_support,
    joint_right_support,
    op_norm,
    polar_decompose,
    positive_part,
    psd_power,
    trace,
)
from .errors import ExponentError, ShapeMismatchError


def dual_exponent(p: float) -> float:
    if p == math.inf:
        return 1.0
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


def _check_exponent(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):  # also rejects nan
        raise ExponentError(f"exponent must lie in [1, inf], got {p}")
    return p


@dataclass(frozen=True, eq=False)
class LpVector:
    """Element of L^p over its algebra; the carrier space is the algebra itself."""

    element: AlgebraElement
    p: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))

    @property
    def algebra(self) -> MultiMatrixAlgebra:
        return self.element.algebra

    @property
    def data(self) -> tuple[np.ndarray, ...]:
        return self.element.data

    def _check_peer(self, other: "LpVector") -> None:
        if other.p != self.p:
            raise ExponentError(f"mixed exponents {self.p} and {other.p}")
        self.element._check_peer(other.element)

    def __add__(self, other: "LpVector") -> "LpVector":
        self._check_peer(other)
        return LpVector(self.element + other.element, self.p)

    def __sub__(self, other: "LpVector") -> "LpVector":
        self._check_peer(other)
        return LpVector(self.element - other.element, self.p)

    def __neg__(self) -> "LpVector":
        return LpVector(-self.element, self.p)

    def __mul__(self, c: complex) -> "LpVector":
        return LpVector(self.element * c, self.p)

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "LpVector":
        return LpVector(self.element / c, self.p)


def lp_norm(xi: LpVector) -> float:
    """tau(|xi|^p)^(1/p); operator norm for p = inf."""
    if xi.p == math.inf:
        return op_norm(xi.element)
    total = 0.0
    for w, m in zip(xi.algebra.weights, xi.data):
        s = np.linalg.svd(m, compute_uv=False)
        total += w * float(np.sum(s**xi.p))
    return total ** (1.0 / xi.p)


@dataclass(frozen=True, eq=False)
class PositiveFunctional:
    """Positive linear functional phi(x) = tau(h x) with PSD density h."""

    algebra: MultiMatrixAlgebra
    density: AlgebraElement

    def __post_init__(self):
        if self.density.algebra != self.algebra:
            raise ShapeMismatchError("density lives on a different algebra")
        if not is_hermitian(self.density):
            raise ValueError("density is not hermitian")
        scale = max(1.0, op_norm(self.density))
        for m in self.density.data:
            w = np.linalg.eigvalsh((m + m.conj().T) / 2)
            if w.size and w.min() < -EPS_EQ * scale:
                raise ValueError(f"density has negative eigenvalue {w.min():.3e}")

    @classmethod
    def uniform_state(cls, algebra: MultiMatrixAlgebra) -> "PositiveFunctional":
        one = algebra.identity()
        return cls(algebra, one / trace(one).real)

    def __call__(self, x: AlgebraElement) -> complex:
        return trace(self.density @ x)

    def mass(self) -> float:
        return trace(self.density).real


def functional_pth_root(phi: PositiveFunctional, p: float) -> LpVector:
    """The positive L^p vector h^(1/p) representing phi; its norm is phi(1)^(1/p)."""
    p = _check_exponent(p)
    if p == math.inf:
        raise ExponentError("p-th root of a functional requires p < inf")
    return LpVector(psd_power(phi.density, 1.0 / p), p)


def haagerup_pair(xi: LpVector, eta: LpVector) -> complex:
    """Bilinear duality pairing tau(xi eta) for conjugate exponents."""
    ip = 0.0 if xi.p == math.inf else 1.0 / xi.p
    iq = 0.0 if eta.p == math.inf else 1.0 / eta.p
    if abs(ip + iq - 1.0) > 1e-9:
        raise ExponentError(f"exponents {xi.p} and {eta.p} are not conjugate")
    xi.element._check_peer(eta.element)
    return trace(xi.element @ eta.element)


def clarkson_defect(xi: LpVector, eta: LpVector) -> float:
    """||xi+eta||^p + ||xi-eta||^p - 2(||xi||^p + ||eta||^p).

    Zero exactly when xi eta* = xi* eta = 0; requires finite p != 2.
    """
    xi._check_peer(eta)
    p = xi.p
    if p == math.inf or p == 2.0:
        raise ExponentError(f"Clarkson equality defect needs finite p != 2, got {p}")
    return (
        lp_norm(xi + eta) ** p
        + lp_norm(xi - eta) ** p
        - 2.0 * (lp_norm(xi) ** p + lp_norm(eta) ** p)
    )


def is_orthogonal_algebraic(xi: LpVector, eta: LpVector, tol: float = EPS_EQ) -> bool:
    """Both products vanish: max(||xi eta*||, ||xi* eta||) <= tol ||xi|| ||eta||."""
    xi.element._check_peer(eta.element)
    prod = max(op_norm(xi.element @ eta.element.dag()), op_norm(xi.element.dag() @ eta.element))
    return prod <= tol * op_norm(xi.element) * op_norm(eta.element)


def semi_inner_product(xi: LpVector, eta: LpVector) -> complex:
    """[xi, eta] = tau(xi |eta|^(p-1) v*) / ||eta||^(p-2) with eta = v |eta| polar.

    Defined for 1 < p < inf; [0-functional convention] returns 0 when eta = 0.
    Computed on the normalized eta to keep the power and the division stable
    at extreme norms: [xi, eta] = ||eta|| tau(xi |eta/||eta|||^(p-1) v*).
    """
    xi._check_peer(eta)
    p = xi.p
    if not (1.0 < p < math.inf):
        raise ExponentError(f"semi-inner product needs 1 < p < inf, got {p}")
    nrm = lp_norm(eta)
    if nrm == 0.0:
        return 0.0
    v, m = polar_decompose(eta.element / nrm)
    a = psd_power(m, p - 1.0)
    return nrm * trace(xi.element @ a @ v.dag())


def duality_vector(eta: LpVector) -> LpVector:
    """The L^q element g with [xi, eta] = tau(xi g); satisfies ||g||_q = ||eta||_p."""
    p = eta.p
    if not (1.0 < p < math.inf):
        raise ExponentError(f"duality vector needs 1 < p < inf, got {p}")
    nrm = lp_norm(eta)
    if nrm == 0.0:
        return LpVector(eta.algebra.zero(), dual_exponent(p))
    v, m = polar_decompose(eta.element / nrm)
    a = psd_power(m, p - 1.0)
    return LpVector(nrm * (a @ v.dag()), dual_exponent(p))


# ---------------------------------------------------------------------------
# corners q1 L^p q2

@dataclass(frozen=True, eq=False)
class Corner:
    """Subspace q1 L^p q2, stored in the canonical representation where q1 and
    q2 have equal central support (blocks where either side vanishes are
    zeroed on both sides)."""

    q1: Projection
    q2: Projection
    p: float

    def __post_init__(self):
        self.q1._check_peer(self.q2)
        object.__setattr__(self, "p", _check_exponent(self.p))
        z = central_support(self.q1) & central_support(self.q2)
        object.__setattr__(self, "q1", z.apply_to(self.q1))
        object.__setattr__(self, "q2", z.apply_to(self.q2))

    @property
    def algebra(self) -> MultiMatrixAlgebra:
        return self.q1.algebra

    def central_mask(self) -> CentralProjection:
        return central_support(self.q1)

    def dim(self) -> int:
        return sum(r1 * r2 for r1, r2 in zip(self.q1.ranks(), self.q2.ranks()))

    def basis(self) -> list[LpVector]:
        """Rank-one spanning family u_a w_b* from range bases of q1 and q2."""
        out = []
        alg = self.algebra
        for i, blk in enumerate(alg.blocks):
            w1, v1 = np.linalg.eigh(self.q1.data[i])
            w2, v2 = np.linalg.eigh(self.q2.data[i])
            left = v1[:, w1 > 0.5]
            right = v2[:, w2 > 0.5]
            for a in range(left.shape[1]):
                for b in range(right.shape[1]):
                    m = np.outer(left[:, a], right[:, b].conj())
                    data = [np.zeros((bb.dim, bb.dim)) for bb in alg.blocks]
                    data[i] = m
                    out.append(LpVector(AlgebraElement(alg, tuple(data)), self.p))
        return out

    def contains_residual(self, xi: LpVector) -> float:
        """Relative distance of xi from q1 xi q2."""
        inside = self.q1 @ xi.element @ self.q2
        return frob_norm(xi.element - inside) / max(1.0, frob_norm(xi.element))

    def is_column(self) -> bool:
        z = self.central_mask()
        return self.q1.ranks() == z.to_projection().ranks()

    def is_row(self) -> bool:
        z = self.central_mask()
        return self.q2.ranks() == z.to_projection().ranks()

    def close_to(self, other: "Corner", tol: float = EPS_EQ) -> bool:
        if other.algebra != self.algebra or other.p != self.p:
            return False
        return (
            frob_norm(self.q1 - other.q1) <= tol * max(1.0, frob_norm(self.q1))
            and frob_norm(self.q2 - other.q2) <= tol * max(1.0, frob_norm(self.q2))
        )


def orthocomplement(
    vectors: Sequence[LpVector],
    algebra: MultiMatrixAlgebra | None = None,
    p: float | None = None,
) -> Corner:
    """Clarkson-orthogonal complement of a finite family, always a corner:
    (1 - join of left supports) L^p (1 - join of right supports).

    algebra and p are required when the family is empty (full corner)."""
    if vectors:
        algebra = vectors[0].algebra
        p = vectors[0].p
        for v in vectors[1:]:
            vectors[0]._check_peer(v)
    if algebra is None or p is None:
        raise ValueError("empty family needs explicit algebra and p")
    elems = [v.element for v in vectors]
    jl = joint_left_support(elems, algebra)
    jr = joint_right_support(elems, algebra)
    return Corner(jl.complement(), jr.complement(), p)


def decompose_into_positives(
    xi: LpVector,
) -> tuple[tuple[complex, PositiveFunctional], ...]:
    """Write xi as sum c_k phi_k^(1/p) with coefficients (1, -1, i, -i).

    The four functionals come from the spectral positive/negative parts of
    the hermitian components of xi; densities are p-th powers of the parts.

    Recovering a part from its density costs eigenvalue accuracy eps^(1/p):
    an eigenvalue mu enters the density as mu^p, and eigh only resolves that
    to absolute accuracy eps * |h|^p.
    """
    if xi.p == math.inf:
        raise ExponentError("positive decomposition requires p < inf")
    x = xi.element
    re = (x + x.dag()) * 0.5
    im = (x - x.dag()) * (-0.5j)
    parts = [positive_part(re), positive_part(-re), positive_part(im), positive_part(-im)]
    coeffs = (1.0 + 0j, -1.0 + 0j, 1j, -1j)
    out = []
    for c, part in zip(coeffs, parts):
        density = psd_power(part, xi.p)
        out.append((c, PositiveFunctional(x.algebra, density)))
    return tuple(out)
