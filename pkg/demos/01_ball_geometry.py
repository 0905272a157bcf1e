"""Walk around the matrix ball: Moebius maps, distances and causal types."""

import numpy as np

from cartanball import (
    SpaceVector,
    caratheodory_distance,
    classify_vector,
    mobius_inverse,
    mobius_map,
    random_contraction,
)

rng = np.random.default_rng(0)
m, n = 3, 2

B = random_contraction(rng, m, n, 0.5)
T_B = mobius_map(B)
print("T_B(0) recovers the center:", np.allclose(T_B(np.zeros((m, n))), B))

A = random_contraction(rng, m, n, 0.8)
print("T_{-B}(T_B(A)) == A:", np.allclose(mobius_inverse(T_B)(T_B(A)), A))

# Moebius maps are isometries, so distances survive the move.
A1 = random_contraction(rng, m, n, 0.3)
A2 = random_contraction(rng, m, n, 0.7)
print(f"C_D(A1, A2)           = {caratheodory_distance(A1, A2):.12f}")
print(f"C_D(T_B A1, T_B A2)   = {caratheodory_distance(T_B(A1), T_B(A2)):.12f}")

# Radial distance from the origin is atanh of the norm.
for r in (0.1, 0.5, 0.9, 0.99):
    d = caratheodory_distance(np.zeros((2, 1)), [[r], [0.0]])
    print(f"  |A| = {r:<5} distance from 0 = {d:.6f}")

e1, zero = np.array([1.0, 0.0]), np.zeros(2)
for label, v in (("(e1, 0)", SpaceVector(e1, zero)), ("(0, e1)", SpaceVector(zero, e1)), ("(e1, e1)", SpaceVector(e1, e1))):
    print(f"{label:9} is {classify_vector(v).value}")
