"""Spectral configurations: saturation, the lattice, dichotomy, membership.

A configuration assigns a rotation-invariant closed circle set to each
order n.  Its norm on Laurent polynomials is the slotwise sup of cyclic
tuple norms; equal saturations mean canonically isometric algebras.
"""

from fractions import Fraction as Fr

from lpkit import (
    ArcSet,
    LaurentPolynomial,
    SpectralConfiguration,
    canonically_equivalent,
    classify,
    fpsigma_norm,
    lattice_sup,
    leq,
    membership_probe,
    order,
    saturate,
)
from lpkit.specconf import roots_of_unity_set

sigma = SpectralConfiguration({2: ArcSet(points=(0, Fr(1, 2)))})
print("sigma: slot 2 = {1, -1}, order", order(sigma))
sat = saturate(sigma)
print("saturation adds the divisor slot:",
      {n: [str(p) for p in s.points] for n, s in sat.finite_slots.items()})
print("sigma <= saturation:", leq(sigma, sat),
      "; canonically equivalent:", canonically_equivalent(sigma, sat), "\n")

print("dichotomy classifier:")
print("  order 2 at p=3 :", classify(sat, 3))
print("  order 2 at p=2 :", classify(sat, 2))
full_inf = SpectralConfiguration({}, infinity_full=True)
print("  infinite order :", classify(full_inf, 3), "\n")

f = LaurentPolynomial(((0, (1 + 1j) / 2), (1, (1 - 1j) / 2)))
print("f interpolates f(1)=1, f(-1)=i; its configuration norm at p=1")
est = fpsigma_norm(f, sat, 1)
print(f"  |f|_sigma = {est.lower:.10f}  (= sqrt(2), the slot-2 tuple norm)\n")

print("the lattice: sup of two root-set configurations")
a = SpectralConfiguration({3: roots_of_unity_set(3)})
b = SpectralConfiguration({2: roots_of_unity_set(2, Fr(1, 4))})
sup = lattice_sup([a, b])
print("  slots:", {n: len(s.points) for n, s in sup.finite_slots.items()}, "\n")

print("bump-function membership probe on the saturated sigma (p = 1):")
for t, label in ((0, "t = 1"), (Fr(1, 4), "t = i")):
    res = membership_probe(t, 2, sat, 1)
    print(f"  {label}: {res.verdict:<11} trace {[round(v, 6) for _, v in res.trace]}")
