#!/usr/bin/env python3
"""Walk one isometry through the whole pipeline, printing each stage.

Builds a random structured isometry on M_2 + M_3 (mixed multiplicative and
antimultiplicative blocks forced), exports it as a dense matrix, hands that
raw matrix to the decomposer, and compares what comes back.  Then runs the
corner and orthoisomorphism diagnostics on the same map.
"""

import numpy as np

from nclp import (
    Corner,
    JordanMap,
    LpVector,
    MultiMatrixAlgebra,
    Projection,
    apply_isometry,
    check_module_relation,
    corner_image,
    decompose,
    extract_right_orthoiso,
    frob_norm,
    jordan_distance,
    lp_norm,
    random_sample,
    synthesize,
    to_raw,
)

P = 3.0
rng = np.random.default_rng(20260817)

src = MultiMatrixAlgebra.from_dims([2, 3], [1.25, 0.6])
tgt = MultiMatrixAlgebra.from_dims([3, 2], [0.8, 1.5])
u2 = random_sample(MultiMatrixAlgebra.from_dims([2]), "unitary", rng).data[0]
u3 = random_sample(MultiMatrixAlgebra.from_dims([3]), "unitary", rng).data[0]
jordan = JordanMap(src, tgt, (1, 0), (u2, u3), (False, True))
w = random_sample(tgt, "unitary", rng)

t = synthesize(jordan, w, P)
print(f"synthesized T on {src.dims} -> {tgt.dims} at p = {P}")
print(f"  block map sigma = {jordan.sigma}, anti flags = {jordan.anti}")

xi = LpVector(random_sample(src, "element", rng), P)
print(f"  isometry check on one vector: |xi| = {lp_norm(xi):.6f}, "
      f"|T xi| = {lp_norm(apply_isometry(t, xi)):.6f}")

raw = to_raw(t)
print(f"\nexported dense matrix: {raw.matrix.shape}, "
      f"|T|_F = {np.linalg.norm(raw.matrix):.4f}")

dec = decompose(raw)
print("decomposed the raw matrix back:")
print(f"  |w_rec - w|        = {frob_norm(dec.w - w):.3e}")
print(f"  jordan distance    = {jordan_distance(dec.jordan, jordan):.3e}")
print(f"  certification residual = {dec.residual:.3e}")

q = Projection(src, random_sample(src, "projection", 7).data)
col = Corner(Projection(src, src.identity().data), q, P)
rep = corner_image(raw, col)
print(f"\ncolumn corner of ranks {q.ranks()} maps to corner of ranks "
      f"({rep.corner_out.q1.ranks()}, {rep.corner_out.q2.ranks()}), "
      f"residual {max(rep.residual_forward, rep.residual_backward):.3e}")

pr = extract_right_orthoiso(raw)
print(f"column->column mask on target blocks: {pr.z_prime.mask}")
delta = frob_norm(pr(q) - dec.jordan.apply(q))
print(f"|pi_r(q) - J(q)| = {delta:.3e}")

rel = check_module_relation(raw, dec.jordan, n_samples=12, seed=3)
print(f"module relation residual over 12 samples: {rel.residual:.3e}")
