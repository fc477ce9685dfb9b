"""
Binary tour encoding, feasibility, and tour costs
=================================================

Walks through the data layer: how visit orders become bitstrings, which
bitstrings are feasible, and how tour costs and one-hot constraint
penalties are evaluated.
"""

import numpy as np

from tsp_qsearch import (
    HoboLayout,
    TspInstance,
    constraint_penalties,
    decode_bitstring,
    encode_tour,
    enumerate_feasible,
    eval_tour_cost,
)

# Each city is written as a fixed-width binary code of (label - 1), and a
# tour is the concatenation of its codes in visit order.
print("tour (1,2,3) encodes to", encode_tour((1, 2, 3), 3))
print("tour (2,1,3) encodes to", encode_tour((2, 1, 3), 3))
print("tour (4,3,2,1) encodes to", encode_tour((4, 3, 2, 1), 4))

# Decoding rejects codes with no matching city and repeated codes.
print("\ndecode 000110 ->", decode_bitstring("000110", 3))
print("decode 001111 ->", decode_bitstring("001111", 3), "(code 11 has no city)")
print("decode 000011 ->", decode_bitstring("000011", 3), "(city 1 visited twice)")

# For 3 cities exactly 6 of the 64 bitstrings are feasible.
feasible = enumerate_feasible(3)
print("\nfeasible bitstrings for n=3:", ", ".join(feasible))

# The register plan: 2 bits per city, one validity ancilla per slot for
# the spare code 11, one ancilla per slot pair, and a marker qubit.
for n in (3, 4, 5):
    layout = HoboLayout.for_cities(n)
    print(
        f"n={n}: {layout.main_qubits} city qubits + {layout.valid_ancillas} validity"
        f" + {layout.unique_ancillas} uniqueness + 1 marker = {layout.width} qubits"
    )

# Tour costs use an asymmetric cost matrix; the closing leg back to the
# first city is included.
rng = np.random.default_rng(0)
matrix = rng.uniform(1.0, 9.0, size=(4, 4))
np.fill_diagonal(matrix, 0.0)
instance = TspInstance(4, matrix)
print("\ncost of (1,2,3,4):", round(eval_tour_cost(instance, (1, 2, 3, 4)), 3))
print("cost of (4,3,2,1):", round(eval_tour_cost(instance, (4, 3, 2, 1)), 3), "(asymmetric)")

# A bitstring is feasible exactly when its one-hot visit matrix has zero
# penalties: each slot one city, each city one slot.
identity = np.eye(3)
print("\npenalties for a permutation matrix:", constraint_penalties(identity))
doubled = np.zeros((3, 3))
doubled[0, 0] = doubled[0, 1] = 1.0
print("penalties with one slot visiting two cities:", constraint_penalties(doubled))
