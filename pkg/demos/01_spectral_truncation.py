#!/usr/bin/env python3
"""Walk through the weighted spectral machinery: decompose a kernel, look at
eigenvalue clusters, and truncate at a spectral-gap midpoint.
"""

import numpy as np

from graphonlab import (
    cayley_kernel,
    decompose,
    kernel_from_matrix,
    spectral_radius,
    tail_truncate,
    weighted_norm,
)
from graphonlab.spectral import gap_midpoints

# A kernel is a symmetric matrix over a weighted atom space. Weights default
# to uniform; here we make a blocky 8-atom kernel with a bit of noise.
rng = np.random.default_rng(0)
base = np.kron(np.array([[0.9, 0.2], [0.2, 0.6]]), np.ones((4, 4)))
noisy = base + 0.05 * (lambda a: (a + a.T) / 2)(rng.standard_normal((8, 8)))
kernel = kernel_from_matrix(np.clip(noisy, -1, 1))

dec = decompose(kernel)
print("eigenvalues (sorted by |lambda|):")
print(np.round(dec.eigenvalues, 4))
print("clusters of numerically equal |lambda|:", dec.clusters)
print("spectral radius:", round(spectral_radius(dec), 4))

# Energy bookkeeping: the weighted L2 norm squared equals the sum of
# squared eigenvalues.
print("\n||K||_2^2          =", round(weighted_norm(kernel, "L2") ** 2, 10))
print("sum of lambda_i^2  =", round(float(np.sum(dec.eigenvalues**2)), 10))

# Truncation keeps eigencomponents with |lambda| strictly above a threshold.
# Thresholds must sit in spectral gaps so degenerate clusters never split;
# gap_midpoints lists the safe choices.
mids = gap_midpoints(dec)
print("\ngap midpoints:", np.round(mids, 4))
lam = mids[1]
structured = tail_truncate(dec, lam)
residual = kernel_from_matrix(kernel.values - structured.values)
print(f"truncating at {lam:.4f}:")
print("  rank kept:", dec.rank_above(lam))
print("  residual spectral radius:", round(spectral_radius(decompose(residual)), 4))
print("  (never exceeds the threshold)")

# Eigenvectors of a sup-bounded kernel cannot spike: ||f||_inf <= 1/|lambda|.
print("\nsup norms vs 1/|lambda|:")
for lam_i, f in list(zip(dec.eigenvalues, dec.eigenvectors.T))[:4]:
    print(f"  lambda={lam_i:+.4f}  ||f||_inf={np.max(np.abs(f)):.4f}"
          f"  bound={1/abs(lam_i):.4f}")

# Cayley kernels on Z_n make the clusters interesting: frequencies j and
# n - j share an eigenvalue, so multiplicity-two clusters appear.
ck = cayley_kernel(8, np.array([0.0, 1.0, 0.0, 0.5, 0.25, 0.5, 0.0, 1.0]))
print("\nCayley kernel on Z_8 cluster dimensions:",
      decompose(ck).cluster_dimensions())
