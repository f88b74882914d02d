"""Representation counts, i-representable sums and stabilizers in small groups."""

from addcomb.group import make_group, stabilizer, subgroup_lattice
from addcomb.sums import additive_energy, i_representable, pollard_sum, rep_counts

G = make_group([5])
A = G.set([0, 1, 2])

prof = rep_counts(A, A)
print("r_{A,A} on Z_5:", prof.counts.tolist())  # [1, 2, 3, 2, 1]
for i in (1, 2, 3, 4):
    print(f"A +_{i} A =", i_representable(A, A, i).elements)

# the Pollard sum caps each count at t
print("sum_{i<=2} |A +_i A| =", pollard_sum(A, A, 2))
print("energy:", additive_energy(A, A))

# mixed-radix indexing: (1, 3) in Z_2 x Z_6 is element 9
H = make_group([2, 6])
print("index of (1, 3):", H.index((1, 3)))

Z6 = make_group([6])
print("stabilizer of {0,1,3,4}:", stabilizer(Z6.set([0, 1, 3, 4])).elements)

for K in subgroup_lattice(make_group([2, 2])):
    print("subgroup of Z_2 x Z_2:", K.elements)
