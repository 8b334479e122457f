"""Property suites: randomized desk-scale verification of the isometry
toolkit, runnable from the CLI.

Each suite draws seeded random instances (pairs of small multi-matrix
algebras with a Jordan map and a Haar unitary), checks one family of
invariants, and reports the worst residual together with the per-case seed
that produced it, so failures replay exactly.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    EPS_EQ,
    AlgebraElement,
    CentralProjection,
    MultiMatrixAlgebra,
    Projection,
    frob_norm,
    linmap_matrix,
    random_sample,
)
from .errors import (
    NclpError,
    NotCornerError,
    NotJordanError,
    PolarPartNotUnitaryError,
    PositiveImageError,
    UsageError,
)
from .isometry import (
    EPS_CERT,
    RawIsometry,
    check_module_relation,
    corner_image,
    decompose,
    extract_right_orthoiso,
    synthesize,
    to_raw,
)
from .jordan import JordanMap, jordan_distance, random_jordan
from .lpspace import (
    Corner,
    LpVector,
    PositiveFunctional,
    clarkson_defect,
    dual_exponent,
    duality_vector,
    functional_pth_root,
    haagerup_pair,
    is_orthogonal_algebraic,
    lp_norm,
    orthocomplement,
    semi_inner_product,
)

SUITE_NAMES = (
    "clarkson",
    "sip",
    "roundtrip",
    "corners",
    "orthoiso",
    "kadison-infty",
    "adversarial",
)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    p_grid: tuple[float, ...] = (1.0, 1.5, 3.0, 4.0, math.inf)
    max_blocks: int = 3
    max_dim: int = 4  # bound on the total of the block dimensions
    n_instances: int = 50
    eps_eq: float = EPS_EQ
    eps_cert: float = EPS_CERT

    def __post_init__(self):
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        if not self.p_grid:
            raise UsageError("p_grid is empty")
        for p in self.p_grid:
            if p == 2.0:
                raise UsageError("p = 2 is excluded: no structure theorem holds there")
            if not (p >= 1.0):
                raise UsageError(f"exponents must lie in [1, inf], got {p}")
        if self.max_dim < 1 or self.max_blocks < 1:
            raise UsageError("max_dim and max_blocks must be at least 1")
        if self.n_instances < 1:
            raise UsageError("n_instances must be at least 1")

    @property
    def finite_grid(self) -> tuple[float, ...]:
        """Exponents usable by the smooth-case machinery (1 < p < inf)."""
        return tuple(p for p in self.p_grid if 1.0 < p < math.inf)


@dataclass(frozen=True)
class Instance:
    source: MultiMatrixAlgebra
    target: MultiMatrixAlgebra
    jordan: JordanMap
    unitary: AlgebraElement
    p: float
    seed: int


def _case_seeds(config: SuiteConfig, salt: int, n: int | None = None) -> list[int]:
    ss = np.random.SeedSequence([config.seed, salt])
    return [int(s) for s in ss.generate_state(n or config.n_instances, dtype=np.uint64)]


def generate_instance(config: SuiteConfig, seed: int) -> Instance:
    """Random compatible algebra pair + Jordan map + Haar unitary + exponent,
    deterministic per (config, seed)."""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, min(config.max_blocks, config.max_dim) + 1))
    dims = []
    budget = config.max_dim
    for i in range(k):
        hi = budget - (k - i - 1)  # leave room for one dim per remaining block
        dims.append(int(rng.integers(1, hi + 1)))
        budget -= dims[-1]
    w_src = rng.uniform(0.5, 2.0, size=k)
    w_tgt = rng.uniform(0.5, 2.0, size=k)
    perm = rng.permutation(k)
    source = MultiMatrixAlgebra.from_dims(dims, w_src.tolist())
    target = MultiMatrixAlgebra.from_dims([dims[j] for j in perm], [w_tgt[j] for j in perm])
    jordan = random_jordan(source, target, rng)
    unitary = random_sample(target, "unitary", rng)
    p = config.p_grid[int(rng.integers(len(config.p_grid)))]
    return Instance(source, target, jordan, unitary, p, seed)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    n_cases: int
    worst_residual: float
    worst_seed: int
    wall_time_s: float
    extra: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)  # short strings, one per failed case


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


class _Tally:
    """Worst-residual bookkeeping shared by all suites."""

    def __init__(self, name: str):
        self.name = name
        self.n_cases = 0
        self.worst = 0.0
        self.worst_seed = 0
        self.extra: dict = {}
        self.failures: list[str] = []
        self._t0 = time.perf_counter()

    def check(self, seed: int, residual: float, bound: float, label: str) -> None:
        self.n_cases += 1
        if residual > self.worst:
            self.worst = residual
            self.worst_seed = seed
        if not (residual <= bound):
            self.failures.append(f"seed={seed} {label}: residual {residual:.3e} > {bound:.1e}")

    def fail(self, seed: int, label: str) -> None:
        self.n_cases += 1
        self.failures.append(f"seed={seed} {label}")

    def ok(self, seed: int) -> None:
        self.check(seed, 0.0, 1.0, "")

    def bump(self, key: str, by: int = 1) -> None:
        self.extra[key] = self.extra.get(key, 0) + by

    def result(self) -> SuiteResult:
        return SuiteResult(
            name=self.name,
            passed=not self.failures,
            n_cases=self.n_cases,
            worst_residual=self.worst,
            worst_seed=self.worst_seed,
            wall_time_s=time.perf_counter() - self._t0,
            extra=self.extra,
            failures=self.failures[:20],
        )


def _unit(x: AlgebraElement, p: float) -> LpVector | None:
    v = LpVector(x, p)
    n = lp_norm(v)
    if n < 1e-12:
        return None
    return LpVector(x / n, p)


def _orthogonal_pair(src, rng, p) -> tuple[LpVector, LpVector] | None:
    """xi = r x q, eta = (1-r) y (1-q): disjoint left and right supports.
    None only on C itself, where no nonzero orthogonal pair exists."""
    if src.dim == 1:
        return None
    for attempt in range(8):
        if attempt < 4:
            q = random_sample(src, "projection", rng)
            r = random_sample(src, "projection", rng)
        else:
            # guaranteed-proper pattern: split a big block, or split the
            # center when every block is abelian
            ranks = [int(rng.integers(1, n)) if n > 1 else int(rng.integers(0, 2))
                     for n in src.dims]
            if all(n == 1 for n in src.dims) and len(set(ranks)) == 1:
                ranks[0] = 1 - ranks[0]
            q = random_sample(src, "projection", rng, ranks=ranks)
            r = q
        x = random_sample(src, "element", rng)
        y = random_sample(src, "element", rng)
        xi = _unit(r @ x @ q, p)
        eta = _unit(r.complement() @ y @ q.complement(), p)
        if xi is not None and eta is not None:
            return xi, eta
    return None


def _overlap_pair(src, rng, p) -> tuple[LpVector, LpVector] | None:
    for _ in range(20):
        x = random_sample(src, "element", rng)
        y = random_sample(src, "element", rng)
        ov = max(frob_norm(x @ y.dag()), frob_norm(x.dag() @ y))
        if ov >= 0.1 * frob_norm(x) * frob_norm(y):
            return _unit(x, p), _unit(y, p)
    return None


def suite_clarkson(config: SuiteConfig) -> SuiteResult:
    """Clarkson equality, both directions, plus Hoelder and orthogonality
    transport through structured isometries."""
    t = _Tally("clarkson")
    min_defect = math.inf
    for seed in _case_seeds(config, 1):
        inst = generate_instance(config, seed)
        rng = np.random.default_rng(seed + 1)
        src = inst.source
        for p in config.finite_grid:
            for _ in range(2):
                pair = _orthogonal_pair(src, rng, p)
                if pair is None:
                    continue
                xi, eta = pair
                t.check(seed, abs(clarkson_defect(xi, eta)), 1e-9, f"orthogonal defect p={p}")
                t.bump("orthogonal_pairs")
                # orthogonality transported by a structured isometry
                T = synthesize(inst.jordan, inst.unitary, p)
                if not is_orthogonal_algebraic(T.apply(xi), T.apply(eta), config.eps_eq):
                    t.fail(seed, f"orthogonality not preserved p={p}")
                else:
                    t.ok(seed)
                t.bump("orthogonality_transport")
            for _ in range(2):
                pair = _overlap_pair(src, rng, p)
                if pair is None or pair[0] is None or pair[1] is None:
                    continue
                xi, eta = pair
                d = abs(clarkson_defect(xi, eta))
                min_defect = min(min_defect, d)
                t.n_cases += 1
                if d < 1e-9:
                    t.fail(seed, f"overlapping pair with defect {d:.2e} p={p}")
                t.bump("overlap_pairs")
        # Hoelder on the full grid
        for p in config.p_grid:
            q = dual_exponent(p)
            x = _unit(random_sample(src, "element", rng), p)
            y = _unit(random_sample(src, "element", rng), q)
            if x is None or y is None:
                continue
            bound = lp_norm(x) * lp_norm(y)
            excess = abs(haagerup_pair(x, y)) - bound
            t.check(seed, max(excess, 0.0), config.eps_eq * max(1.0, bound), f"Hoelder p={p}")
            t.bump("hoelder_pairs")
    res = t.result()
    res.extra["min_overlap_defect"] = None if min_defect == math.inf else min_defect
    return res


def suite_sip(config: SuiteConfig) -> SuiteResult:
    """Semi-inner products: preservation under structured isometries, the
    duality-map norm identity, and the pth-root norm of states."""
    t = _Tally("sip")
    for seed in _case_seeds(config, 2):
        inst = generate_instance(config, seed)
        rng = np.random.default_rng(seed + 2)
        src = inst.source
        for p in config.finite_grid:
            T = synthesize(inst.jordan, inst.unitary, p)
            for _ in range(2):
                xi = _unit(random_sample(src, "element", rng), p)
                eta = _unit(random_sample(src, "element", rng), p)
                if xi is None or eta is None:
                    continue
                lhs = semi_inner_product(T.apply(xi), T.apply(eta))
                rhs = semi_inner_product(xi, eta)
                t.check(seed, abs(lhs - rhs), config.eps_eq, f"SIP preservation p={p}")
                t.bump("sip_pairs")
            eta = _unit(random_sample(src, "element", rng), p)
            if eta is not None:
                g = duality_vector(eta)
                t.check(seed, abs(lp_norm(g) - lp_norm(eta)), config.eps_eq,
                        f"duality norm p={p}")
                t.check(seed, abs(haagerup_pair(eta, g) - lp_norm(eta) ** 2), config.eps_eq,
                        f"duality pairing p={p}")
                t.bump("duality_checks")
        # pth-root norm identity over the whole grid, including 1 and inf
        for p in config.p_grid:
            h = random_sample(src, "psd", rng)
            phi = PositiveFunctional(src, h)
            root = functional_pth_root(phi, p) if p != math.inf else None
            if root is None:
                continue
            t.check(seed, abs(lp_norm(root) - phi.mass() ** (1.0 / p)), 1e-9,
                    f"pth-root norm p={p}")
            t.bump("pth_root_checks")
    return t.result()


def suite_roundtrip(config: SuiteConfig) -> SuiteResult:
    """decompose(synthesize(J, w, p)) recovers (w, J); re-synthesis matches
    the dense input; nearby distinct parameters give distinct maps."""
    t = _Tally("roundtrip")
    for seed in _case_seeds(config, 3):
        inst = generate_instance(config, seed)
        for p in config.p_grid:
            T = to_raw(synthesize(inst.jordan, inst.unitary, p))
            try:
                dec = decompose(T, config.eps_eq, config.eps_cert)
            except NclpError as exc:
                t.fail(seed, f"decompose failed at p={p}: {type(exc).__name__}")
                continue
            t.check(seed, frob_norm(dec.w - inst.unitary), config.eps_eq, f"w residual p={p}")
            t.check(seed, jordan_distance(dec.jordan, inst.jordan), config.eps_eq,
                    f"J residual p={p}")
            t.check(seed, dec.residual, config.eps_cert, f"resynthesis p={p}")
            t.bump("roundtrips")
        # uniqueness at the map level: nudging w or J moves the dense map,
        # so equal dense maps can only come from equal parameters
        rng = np.random.default_rng(seed + 3)
        p = inst.p
        base = to_raw(synthesize(inst.jordan, inst.unitary, p)).matrix
        w2 = inst.unitary @ _unitary_nudge(inst.target, rng, 1e-3)
        moved = to_raw(synthesize(inst.jordan, w2, p)).matrix
        t.n_cases += 1
        if np.linalg.norm(moved - base) < 1e-4:
            t.fail(seed, "w-perturbed map indistinguishable from original")
        u2 = tuple(u @ _haar_matrix(u.shape[0], rng) if u.shape[0] > 1 else u
                   for u in inst.jordan.unitaries)
        j2 = JordanMap(inst.source, inst.target, inst.jordan.sigma, u2, inst.jordan.anti)
        if jordan_distance(j2, inst.jordan) > 1e-6:
            moved = to_raw(synthesize(j2, inst.unitary, p)).matrix
            t.n_cases += 1
            if np.linalg.norm(moved - base) < 1e-8:
                t.fail(seed, "J-perturbed map indistinguishable from original")
        t.bump("uniqueness_checks")
    return t.result()


def _unitary_nudge(algebra: MultiMatrixAlgebra, rng: np.random.Generator,
                   size: float) -> AlgebraElement:
    """exp(i * size * H) for a random unit-norm hermitian H."""
    blocks = []
    for n in algebra.dims:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (g + g.conj().T) / 2
        h = h / max(np.linalg.norm(h), 1e-300)
        vals, vecs = np.linalg.eigh(h)
        blocks.append(vecs @ np.diag(np.exp(1j * size * vals)) @ vecs.conj().T)
    return AlgebraElement(algebra, tuple(blocks))


def suite_corners(config: SuiteConfig) -> SuiteResult:
    """Corner calculus: orthocomplements are corners, double complement
    restores doubly proper corners, images under isometries are corners of
    equal dimension, orthocomplements transport, and vanishing SIPs force
    central orthogonality."""
    t = _Tally("corners")
    for seed in _case_seeds(config, 4):
        inst = generate_instance(config, seed)
        rng = np.random.default_rng(seed + 4)
        src = inst.source
        p = inst.p if 1.0 < inst.p < math.inf else 3.0
        T = synthesize(inst.jordan, inst.unitary, p)

        # orthocomplement of a random family is a corner orthogonal to it
        fam = [LpVector(random_sample(src, "element", rng), p) for _ in range(2)]
        comp = orthocomplement(fam)
        worst = 0.0
        for b in comp.basis():
            for v in fam:
                worst = max(worst, frob_norm(b.element @ v.element.dag()),
                            frob_norm(b.element.dag() @ v.element))
        t.check(seed, worst, config.eps_eq, "complement orthogonality")
        t.bump("orthocomplements")

        # orthocomplement transport: T(S^perp) = T(S)^perp
        img_comp = corner_image(T, comp).corner_out
        comp_img = orthocomplement([T.apply(v) for v in fam])
        if not img_comp.close_to(comp_img, config.eps_eq):
            t.fail(seed, "orthocomplement transport mismatch")
        else:
            t.ok(seed)
        t.bump("transports")

        # double orthocomplement on a doubly proper corner
        ranks1, ranks2 = [], []
        for n in src.dims:
            if n == 1:
                ranks1.append(1)
                ranks2.append(1)
            else:
                ranks1.append(int(rng.integers(1, n)))
                ranks2.append(int(rng.integers(1, n)))
        corner = Corner(
            random_sample(src, "projection", rng, ranks=ranks1),  # type: ignore[arg-type]
            random_sample(src, "projection", rng, ranks=ranks2),  # type: ignore[arg-type]
            p,
        )
        again = orthocomplement(orthocomplement(corner.basis(), src, p).basis(), src, p)
        if not again.close_to(corner, config.eps_eq):
            t.fail(seed, "double orthocomplement mismatch")
        else:
            t.ok(seed)
        t.bump("double_complements")

        # image of a corner is a corner of the same dimension
        try:
            rep = corner_image(T, corner)
        except NotCornerError:
            t.fail(seed, "image of corner not a corner")
        else:
            t.check(seed, max(rep.residual_forward, rep.residual_backward),
                    config.eps_eq, "corner image residual")
            if rep.corner_out.dim() != corner.dim():
                t.fail(seed, "corner image dimension drift")
        t.bump("corner_images")

        # vanishing SIPs between two corners force centrally orthogonal
        # products; construct corners that are one-sided orthogonal per block
        c1, c2 = _sip_vanishing_pair(src, rng, p)
        vanish = 0.0
        for b1 in c1.basis():
            for b2 in c2.basis():
                vanish = max(vanish, abs(semi_inner_product(b1, b2)),
                             abs(semi_inner_product(b2, b1)))
        t.check(seed, vanish, config.eps_eq, "one-sided orthogonal corners SIP")
        both = [
            i
            for i in range(src.n_blocks)
            if np.linalg.norm(c1.q1.data[i] @ c2.q1.data[i]) > config.eps_eq
            and np.linalg.norm(c1.q2.data[i] @ c2.q2.data[i]) > config.eps_eq
        ]
        if both:  # some block carries both products: central supports overlap
            t.fail(seed, f"central orthogonality violated on blocks {both}")
        else:
            t.ok(seed)
        t.bump("sip_vanishing")

        # converse health check: corners overlapping on both sides of some
        # block must show a visibly nonzero SIP somewhere
        pair = _overlapping_corners(src, rng, p)
        if pair is not None:
            c1, c2 = pair
            peak = 0.0
            for b1 in c1.basis():
                for b2 in c2.basis():
                    peak = max(peak, abs(semi_inner_product(b1, b2)))
            t.n_cases += 1
            if peak < 1e-9:
                t.fail(seed, f"overlapping corners with all SIPs < 1e-9 (peak {peak:.2e})")
            t.bump("sip_overlap")
    return t.result()


def _sip_vanishing_pair(src: MultiMatrixAlgebra, rng: np.random.Generator,
                        p: float) -> tuple[Corner, Corner]:
    """Two corners with, per block, either left projections orthogonal or
    right projections orthogonal (abelian blocks drop to one side)."""
    q1, q2, r1, r2 = [], [], [], []
    for n in src.dims:
        left_mode = bool(rng.integers(0, 2))
        if n == 1:
            a = np.ones((1, 1))
            b = np.zeros((1, 1))
            if left_mode:
                q1.append(a); r1.append(b)
                q2.append(a); r2.append(a)
            else:
                q1.append(a); r1.append(a)
                q2.append(a); r2.append(b)
            continue
        k = int(rng.integers(1, n))
        basis = _haar_matrix(n, rng)
        inside = basis[:, :k] @ basis[:, :k].conj().T
        outside = basis[:, k:] @ basis[:, k:].conj().T
        other1 = random_sample(MultiMatrixAlgebra.from_dims([n], [1.0]), "projection",
                               rng, ranks=[int(rng.integers(1, n + 1))]).data[0]
        other2 = random_sample(MultiMatrixAlgebra.from_dims([n], [1.0]), "projection",
                               rng, ranks=[int(rng.integers(1, n + 1))]).data[0]
        if left_mode:
            q1.append(inside); r1.append(outside)
            q2.append(other1); r2.append(other2)
        else:
            q1.append(other1); r1.append(other2)
            q2.append(inside); r2.append(outside)
    corner1 = Corner(Projection(src, tuple(q1)), Projection(src, tuple(q2)), p)
    corner2 = Corner(Projection(src, tuple(r1)), Projection(src, tuple(r2)), p)
    return corner1, corner2


def _overlapping_corners(src: MultiMatrixAlgebra, rng: np.random.Generator,
                         p: float) -> tuple[Corner, Corner] | None:
    """Corners whose left and right projection products are both visibly
    nonzero on a shared block, or None if the draw fails."""
    for _ in range(10):
        a = random_sample(src, "projection", rng)
        b = random_sample(src, "projection", rng)
        c = random_sample(src, "projection", rng)
        d = random_sample(src, "projection", rng)
        c1 = Corner(a, b, p)
        c2 = Corner(c, d, p)
        for i in range(src.n_blocks):
            if (np.linalg.norm(c1.q1.data[i] @ c2.q1.data[i]) > 0.05
                    and np.linalg.norm(c1.q2.data[i] @ c2.q2.data[i]) > 0.05):
                return c1, c2
    return None


def suite_orthoiso(config: SuiteConfig) -> SuiteResult:
    """Extraction of z' and pi_r: consistency across test columns, agreement
    with the decomposed Jordan map on projections, orthogonality
    preservation, and the module relation."""
    t = _Tally("orthoiso")
    for seed in _case_seeds(config, 5):
        inst = generate_instance(config, seed)
        rng = np.random.default_rng(seed + 5)
        p = inst.p if 1.0 < inst.p < math.inf else float(
            (config.finite_grid or (3.0,))[0])
        T = synthesize(inst.jordan, inst.unitary, p)
        try:
            pr = extract_right_orthoiso(T, seed=seed)
        except NclpError as exc:
            t.fail(seed, f"extraction failed: {type(exc).__name__}")
            continue
        dec = decompose(to_raw(T), config.eps_eq, config.eps_cert)
        # z' matches the multiplicative mask of the decomposed Jordan map
        if pr.source_mask.mask != dec.jordan.multiplicative_mask().mask:
            t.fail(seed, "z' disagrees with decomposed Jordan flags")
        else:
            t.ok(seed)
        t.bump("zprime_checks")
        # pi_r agrees with J on random projections and preserves orthogonality
        worst = 0.0
        q = random_sample(inst.source, "projection", rng)
        worst = max(worst, frob_norm(pr(q) - dec.jordan.apply(q)))
        qc = q.complement()
        worst = max(worst, frob_norm(pr(qc) - dec.jordan.apply(qc)))
        t.check(seed, worst, config.eps_eq, "pi_r vs J on projections")
        t.check(seed, frob_norm(pr(q) @ pr(qc)), config.eps_eq, "pi_r orthogonality")
        t.bump("pi_r_checks")
        # module relation with the decomposed Jordan map
        rel = check_module_relation(T, dec.jordan, n_samples=4, seed=seed)
        t.check(seed, rel.residual, config.eps_eq, "module relation")
        t.bump("module_relations")
    return t.result()


def suite_kadison_infty(config: SuiteConfig) -> SuiteResult:
    """The operator-norm branch: T(x) = w J(x) round-trips through decompose."""
    t = _Tally("kadison-infty")
    for seed in _case_seeds(config, 6):
        inst = generate_instance(config, seed)
        T = to_raw(synthesize(inst.jordan, inst.unitary, math.inf))
        try:
            dec = decompose(T, config.eps_eq, config.eps_cert)
        except NclpError as exc:
            t.fail(seed, f"decompose failed: {type(exc).__name__}")
            continue
        t.check(seed, frob_norm(dec.w - inst.unitary), config.eps_eq, "w residual")
        t.check(seed, jordan_distance(dec.jordan, inst.jordan), config.eps_eq, "J residual")
        t.check(seed, dec.residual, config.eps_cert, "resynthesis")
        t.bump("roundtrips")
    return t.result()


def suite_adversarial(config: SuiteConfig) -> SuiteResult:
    """Maps that are not surjective isometries of structured form must be
    rejected with the documented typed errors; no false acceptances.

    Classes: scaled isometries (polar part not unitary), positivity-breaking
    similarity twists (image of positive not positive for 1 < p < inf; the
    Jordan classifier rejects the twist for p in {1, inf}), coordinate mixers
    that send corners to non-corners, and perturbed true isometries."""
    t = _Tally("adversarial")
    for seed in _case_seeds(config, 7):
        inst = generate_instance(config, seed)
        rng = np.random.default_rng(seed + 7)
        p = inst.p
        T = to_raw(synthesize(inst.jordan, inst.unitary, p))

        # scaled isometry
        c = float(rng.uniform(1.2, 2.0))
        if rng.integers(0, 2):
            c = 1.0 / c
        try:
            decompose(RawIsometry(p, inst.source, inst.target, c * T.matrix),
                      config.eps_eq, config.eps_cert)
            t.fail(seed, f"scaled map accepted (c={c:.3f}, p={p})")
        except PolarPartNotUnitaryError:
            t.ok(seed)
        except NclpError as exc:
            t.fail(seed, f"scaled map: wrong error {type(exc).__name__}")
        t.bump("scaled")

        # positivity-breaking similarity twist (needs a non-abelian block)
        if any(n > 1 for n in inst.source.dims):
            tw = _similarity_twist(inst, rng)
            expected = (PositiveImageError,) if 1.0 < p < math.inf else (
                NotJordanError, PolarPartNotUnitaryError)
            try:
                decompose(RawIsometry(p, inst.source, inst.target, tw),
                          config.eps_eq, config.eps_cert)
                t.fail(seed, f"positivity-breaking map accepted (p={p})")
            except expected:
                t.ok(seed)
            except NclpError as exc:
                t.fail(seed, f"positivity-breaking: wrong error {type(exc).__name__}")
            t.bump("positivity_breaking")

        # corner to non-corner: a generic coordinate unitary
        if inst.source.dim >= 2:
            mix = _haar_matrix(inst.source.dim, rng)
            Tm = RawIsometry(3.0, inst.source, inst.source, mix)
            corner = _proper_corner(inst.source, rng, 3.0)
            try:
                corner_image(Tm, corner)
                t.fail(seed, "mixed corner accepted as corner")
            except NotCornerError:
                t.ok(seed)
            except NclpError as exc:
                t.fail(seed, f"corner mixer: wrong error {type(exc).__name__}")
            t.bump("corner_breaking")

        # perturbed isometry beyond certification
        noise = rng.standard_normal(T.matrix.shape) + 1j * rng.standard_normal(T.matrix.shape)
        noise *= 1e-3 / np.linalg.norm(noise)
        try:
            decompose(RawIsometry(p, inst.source, inst.target, T.matrix + noise),
                      config.eps_eq, config.eps_cert)
            t.fail(seed, f"perturbed map accepted (p={p})")
        except NclpError:
            t.ok(seed)
        t.bump("perturbed")
    return t.result()


def _similarity_twist(inst: Instance, rng: np.random.Generator) -> np.ndarray:
    """Dense matrix of xi -> w D^(1/p) s J(xi) s^(-1) with s positive and
    non-scalar: agrees with the true isometry on the identity but breaks
    *-preservation."""
    tgt = inst.target
    s_blocks = []
    for n in tgt.dims:
        if n == 1:
            s_blocks.append(np.ones((1, 1), dtype=np.complex128))
        else:
            g = _haar_matrix(n, rng)
            d = np.exp(rng.uniform(-0.7, 0.7, size=n))
            d = d / d.mean()
            s_blocks.append(g @ np.diag(d) @ g.conj().T)
    s = AlgebraElement(tgt, tuple(s_blocks))
    s_inv = AlgebraElement(tgt, tuple(np.linalg.inv(b) for b in s_blocks))
    base = synthesize(inst.jordan, inst.unitary, inst.p)
    power = 0.0 if inst.p == math.inf else 1.0 / inst.p

    def f(x: AlgebraElement) -> AlgebraElement:
        return inst.unitary @ base.density.scale(
            s @ inst.jordan.apply(x) @ s_inv, power)

    return linmap_matrix(inst.source, inst.target, f)


def _haar_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _proper_corner(algebra: MultiMatrixAlgebra, rng: np.random.Generator, p: float) -> Corner:
    """A corner that is proper somewhere: full on one block set, absent on
    the rest when all blocks are abelian, proper inside a block otherwise."""
    if all(n == 1 for n in algebra.dims):
        mask = [False] * algebra.n_blocks
        mask[int(rng.integers(algebra.n_blocks))] = True
        z = CentralProjection(algebra, tuple(mask))
        return Corner(z.to_projection(), z.to_projection(), p)
    ranks = [int(rng.integers(1, n)) if n > 1 else 1 for n in algebra.dims]
    q = random_sample(algebra, "projection", rng, ranks=ranks)
    return Corner(q, q, p)  # type: ignore[arg-type]


_SUITES = {
    "clarkson": suite_clarkson,
    "sip": suite_sip,
    "roundtrip": suite_roundtrip,
    "corners": suite_corners,
    "orthoiso": suite_orthoiso,
    "kadison-infty": suite_kadison_infty,
    "adversarial": suite_adversarial,
}


def run_suite(name: str, config: SuiteConfig) -> SuiteReport:
    """Run one named suite, or all of them."""
    if name == "all":
        return SuiteReport(config, [_SUITES[n](config) for n in SUITE_NAMES])
    if name not in _SUITES:
        raise UsageError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)} or all"
        )
    return SuiteReport(config, [_SUITES[name](config)])


def config_to_json(config: SuiteConfig) -> dict:
    return {
        "seed": config.seed,
        "p_grid": ["inf" if p == math.inf else p for p in config.p_grid],
        "max_blocks": config.max_blocks,
        "max_dim": config.max_dim,
        "n_instances": config.n_instances,
        "eps_eq": config.eps_eq,
        "eps_cert": config.eps_cert,
    }


def report_to_json(report: SuiteReport) -> dict:
    return {
        "schema": "nclp-suite-report/1",
        "config": config_to_json(report.config),
        "passed": report.passed,
        "suites": [
            {
                "name": r.name,
                "passed": r.passed,
                "n_cases": r.n_cases,
                "worst_residual": r.worst_residual,
                "worst_seed": r.worst_seed,
                "wall_time_s": r.wall_time_s,
                "extra": r.extra,
                "failures": r.failures,
            }
            for r in report.results
        ],
    }
