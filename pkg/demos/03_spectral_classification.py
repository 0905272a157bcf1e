"""Classify a handful of elements and look inside a non-unitary normal one."""

import numpy as np

from cartanball import block_decompose, classify, factorize, generate, perturb, spectrum_normal
from cartanball.spectral import decompose

print(f"{'kind':12} unitary normal self_adj non_unitary_normal")
for kind in ("unitary", "random", "normal", "selfadjoint"):
    c = classify(generate(kind, 4, 3, seed=2))
    print(f"{kind:12} {c.is_unitary!s:7} {c.is_normal!s:6} {c.is_self_adjoint!s:8} {c.is_non_unitary_normal}")

T = generate("normal", 5, 3, seed=3, k=3)
S = decompose(factorize(T))
print("\nblocks of the positive part (a, delta, multiplicity):")
for b in S.blocks:
    print(f"  a = {b.a:.6f}  delta = {b.delta:.6f}  k_i = {b.k_i}  a^2 - 1 - delta^2 = {b.a**2 - 1 - b.delta**2:.1e}")

view = block_decompose(T)
print("reassembled from the blocks:", np.allclose(view.reconstruct(), T.matrix))

print("\nspectrum, labelled by origin:")
for e in spectrum_normal(T):
    print(f"  {e.value.real:+.6f}{e.value.imag:+.6f}i  |.| = {abs(e.value):.6f}  {e.kind}")

c = classify(perturb(T, seed=4, size=0.05))
print("\nafter rotating U slightly: normal =", c.is_normal, " TT* - T*T =", f"{c.residuals['TT* - T*T']:.2e}")
