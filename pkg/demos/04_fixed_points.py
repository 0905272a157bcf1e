"""Generic fixed points: enumerate them for normal elements, detect them from raw eigenvectors."""

import numpy as np

from cartanball import detect_generic, enumerate_generic, from_factors, generate, perturb, verify_fixed

T = from_factors(np.array([[0.6], [0.0]]), np.eye(2), np.eye(1))
for p in enumerate_generic(T):
    print(f"theta = {p.theta}  F = {p.F.ravel().real}  eigenvalue = {p.eigenvalues[0].real:.4f}  residual = {p.residual:.1e}")

flipped = from_factors(np.array([[0.6], [0.0]]), np.eye(2), -np.eye(1))
print("with V = -1 the detector says:", detect_generic(flipped).conclusion.value)

print("\nk  points  max |norm - 1|  max residual  detection")
for k in (1, 2, 3, 4):
    G = generate("normal", k + 2, k + 1, seed=10 + k, k=k)
    pts = enumerate_generic(G)
    r = detect_generic(G)
    print(
        f"{k}  {len(pts):6}  {max(abs(p.norm - 1) for p in pts):13.1e}  "
        f"{max(p.residual for p in pts):12.1e}  {r.conclusion.value} (count {r.count})"
    )

G = generate("normal", 4, 3, seed=20, k=2)
P = perturb(G, seed=21, size=0.1)
r = detect_generic(P)
print(f"\nperturbed element: q = {r.q}, k = {r.k}, conclusion {r.conclusion.value}")
F = enumerate_generic(G)[0].F
print(f"a fixed point of the original moves by {verify_fixed(P, F):.3f} under the perturbed element")
