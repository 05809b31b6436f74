"""Slice quadrics restricted to a line share a root on the image.

Restricts the three slice quadrics of a random attention layer to a random
line and shows the common linear factor through the resultants.
"""

import random
from fractions import Fraction

from lsa_invariants import SampleSpec, Shape, sample_weights
from lsa_invariants.cross_column.resultants import Line, resultant_quartics
from lsa_invariants.model import mu_point_for
from lsa_invariants.verify import ambient_point

shape = Shape(3, 2, 3, 1)
rng = random.Random(5)
line = Line(*([Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(2)))
quartics = resultant_quartics(3, lines=[line], shape=shape)
print(f"{len(quartics)} quartics on the line spanned by {line.to_json()}")

w = sample_weights(SampleSpec(shape, 9, full_rank=True), 0)
on_image = [p.evaluate(mu_point_for(p.variables(), w)) for p in quartics.polys]
print("values on the image:", set(on_image))

off = ambient_point(sorted({v for p in quartics.polys for v in p.variables()}), rng)
print("nonzero values off the image:", sum(p.evaluate(off) != 0 for p in quartics.polys))
