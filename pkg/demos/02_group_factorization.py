"""Build group elements from (A, U, V), take them apart again, and act on the ball."""

import numpy as np

from cartanball import act, compose, factorize, from_factors, inverse, random_contraction, random_unitary, verify_relations

# The smallest interesting case: m = 2, n = 1, center [0.6; 0].
T = from_factors(np.array([[0.6], [0.0]]), np.eye(2), np.eye(1))
print("matrix of the 3x3 example:\n", T.matrix.real)
print("inverse:\n", inverse(T).matrix.real + 0.0)
print("boundary point [1; 0] is fixed:", act(T, [[1.0], [0.0]]).ravel().real)

rng = np.random.default_rng(1)
m, n = 4, 3
A, U, V = random_contraction(rng, m, n, 0.7), random_unitary(rng, m), random_unitary(rng, n)
G = from_factors(A, U, V)
rep = verify_relations(G.matrix, m, n)
print("\nsix relation residuals:")
for name, r in rep.residuals.items():
    print(f"  {name:28} {r:.2e}")

F = factorize(G)
print("factorize recovers A, U, V:", np.allclose(F.A, A), np.allclose(F.U, U), np.allclose(F.V, V))
print("act(G, 0) is the center:", np.allclose(act(G, np.zeros((m, n))), A))

H = from_factors(random_contraction(rng, m, n, 0.4), random_unitary(rng, m), random_unitary(rng, n))
X = random_contraction(rng, m, n, 0.9)
gap = np.linalg.norm(act(compose(G, H), X) - act(G, act(H, X)), 2)
print(f"action is a homomorphism: |act(GH, X) - act(G, act(H, X))| = {gap:.1e}")
