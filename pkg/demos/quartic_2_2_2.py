"""Two columns, two targets, rank two: the lone quartic q(y).

Builds the catalecticant minor, prints it, and checks it against random
attention weights and against the symbolic parametrization.
"""

from lsa_invariants import InvariantSet, SampleSpec, Shape, check_vanishing, generate, sample_weights, symbolic_zero_check
from lsa_invariants.model import mu_point_for

shape = Shape(2, 2, 2, 1)
linear = generate("symmetrization", shape)
quartic = generate("catalecticant", shape, K=(1, 2), L=(2, 1))

print("linear relations:")
for p in linear.polys:
    print("  ", p.to_text())
q = quartic.polys[0]
print(f"q(y) has {len(q)} terms of degree {q.degree()}")

w = sample_weights(SampleSpec(shape, seed=11), 0)
print("q at one sample:", q.evaluate(mu_point_for(q.variables(), w)))

both = InvariantSet(quartic.family, shape, list(linear.polys) + [q])
print(check_vanishing(both, SampleSpec(shape, seed=11), 100).to_text())
print(symbolic_zero_check(both).to_text())
