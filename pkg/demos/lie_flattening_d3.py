"""Single column, d = 3: the Lie flattening drops rank on the image."""

import random

from lsa_invariants import SampleSpec, Shape, sample_weights
from lsa_invariants.algebra import rank_rational
from lsa_invariants.model import mu_point_for
from lsa_invariants.single_column import lie_flattening, lie_maximal_minors
from lsa_invariants.verify import ambient_point

shape = Shape(3, 1, 3, 1)
M = lie_flattening(3)
print(f"M_Lie is {M.shape[0]} x {M.shape[1]}")

on_image = [rank_rational(M.evaluate(mu_point_for(M.variables(), sample_weights(SampleSpec(shape, 1), s)))) for s in range(10)]
generic = rank_rational(M.evaluate(ambient_point(M.variables(), random.Random(1))))
print("rank on the image:", sorted(set(on_image)))
print("rank at a random cubic:", generic)

minors = lie_maximal_minors(3, shape=shape)
print(f"{len(minors)} maximal minors, degrees {sorted(set(minors.degrees()))}")
