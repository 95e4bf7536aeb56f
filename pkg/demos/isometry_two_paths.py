"""The headline identity: |f(v)| equals the configuration norm of f.

An invertible isometry of a weighted atomic ell^p space factors into
phases and a permutation.  Its cycle structure and cycle phase products
determine a spectral configuration, and the norm of any Laurent polynomial
in the isometry can be computed two ways: directly as a matrix norm, or
from the configuration alone.  The two must agree.
"""

import numpy as np

from lpkit import (
    AtomicSpace,
    LaurentPolynomial,
    SpatialIsometry,
    conjugation_identity_check,
    decompose,
    fpv_norm,
    gauge_trivialize,
    measure_normalize,
    periods,
    spectral_configuration_of,
    to_matrix,
)

rng = np.random.default_rng(7)
# two 1-cycles, one 2-cycle, one 3-cycle; random phases and weights
T = np.array([0, 1, 3, 2, 5, 6, 4])
v = SpatialIsometry(AtomicSpace(rng.random(7) + 0.5),
                    np.exp(2j * np.pi * rng.random(7)), T)

print("cycle slots:", periods(v).slots)
print("matrix at p=3 (weighted):\n", np.round(to_matrix(v, 3), 3), "\n")

back = decompose(to_matrix(v, 3), v.space, 3)
print("decompose recovers (h, T):", np.allclose(back.h, v.h), np.all(back.T == v.T))
print("conjugation identity deviation:", conjugation_identity_check(v, 3), "\n")

g, vp = gauge_trivialize(v)
print("gauged phases (1 off cross-sections):", np.round(vp.h, 4))
nu, _ = measure_normalize(v)
print("cycle-constant weights:", np.round(nu.weights, 4), "\n")

sigma = spectral_configuration_of(v)
print("spectral configuration slots:",
      {n: len(s.points) for n, s in sigma.finite_slots.items()})

f = LaurentPolynomial(((-1, 0.3 + 0.1j), (0, 1.0), (2, -0.7j)))
print("\ntwo-path norms of f(v):")
for p in (1, 2, 3):
    direct, via = fpv_norm(f, v, p, seed=0)
    print(f"  p={p}: direct [{direct.lower:.8f}, {direct.upper:.8f}]"
          f"  via sigma [{via.lower:.8f}, {via.upper:.8f}]")
print("\nan aperiodic component forces the bilateral-shift branch:")
w = SpatialIsometry(AtomicSpace(np.ones(1)), np.ones(1), np.zeros(1, dtype=int),
                    aperiodic=True)
est = fpv_norm(LaurentPolynomial(((0, 1), (1, 1))), w, 1, "via-sigma", n_max=16)
print(f"  |1 + v| at p=1 = {est.lower:.10f}  (the l1 norm, 2)")
