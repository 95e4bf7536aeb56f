"""Walk through the circulant algebra: norms, embeddings, restrictions, gaps.

The algebra of the order-n cyclic group acts on ell^p_n by circulant
matrices.  In Gelfand coordinates an element is its eigenvalue tuple; the
interesting structure is how the operator norm varies with p between the
sup norm (p = 2) and the coefficient ell^1 norm (p = 1).
"""

import numpy as np

from lpkit import (
    CyclicElement,
    circulant_of,
    classify_isometry,
    embed_divisor,
    fpzn_norm,
    gap_witness,
    restrict,
    rotate,
)

x = CyclicElement(2, [1, 1j])
print("element xi = (1, i) of the order-2 algebra")
print("circulant:\n", np.round(circulant_of(x), 6))
for p in (1, 1.5, 2, 3, 6):
    est = fpzn_norm(x, p, seed=0)
    print(f"  p={p:<4}: bracket [{est.lower:.10f}, {est.upper:.10f}]  ({est.method})")
print("note the collapse to sup|xi| = 1 at p = 2 and sqrt(2) at p = 1\n")

print("the canonical generator is an isometry; (1, i) is not:")
print(" ", classify_isometry(CyclicElement.generator(4), 1))
print(" ", classify_isometry(x, 1))
print()

beta = CyclicElement(4, np.exp(2j * np.pi * np.random.default_rng(1).random(4)))
print("zero-insertion embedding into order 8 preserves the norm:")
emb = embed_divisor(beta, 8)
for p in (1, 3):
    a, b = fpzn_norm(beta, p, seed=0), fpzn_norm(emb, p, seed=0)
    print(f"  p={p}: |beta| in [{a.lower:.8f}, {a.upper:.8f}],"
          f" |embedded| in [{b.lower:.8f}, {b.upper:.8f}]")

print("stride restriction never increases the norm:")
for off in range(2):
    r = restrict(beta, 2, off)
    print(f"  offset {off}: |restriction|_1 = {fpzn_norm(r, 1).lower:.8f}"
          f" <= |beta|_1 = {fpzn_norm(beta, 1).lower:.8f}")

print("\nrotating the coordinates is isometric:")
print(f"  |beta|_1 = {fpzn_norm(beta, 1).lower:.12f}")
print(f"  |rotate(beta, 3)|_1 = {fpzn_norm(rotate(beta, 3), 1).lower:.12f}")

print("\nbut restrictions can *strictly* lose mass: a certified gap witness")
for (n, d) in ((2, 1), (6, 2)):
    alpha, margin = gap_witness(n, d, 1, seed=0)
    print(f"  (n={n}, d={d}, p=1): margin {margin:.4f} with alpha = {np.round(alpha.xi, 4)}")
