"""Essential divisors of a toric singularity, read off from lattice points.

We take the cones <e1, e2, (1, 1, e)>, whose affine toric varieties have an
isolated singularity, and list the minimal lattice points lying over the
singular locus.  Each one is the ray of an essential divisor.
"""

from toricnash.arcorder import in_S, leq, minimal_elements
from toricnash.cones import faces, is_regular, make_cone, multiplicity

for e in (2, 3, 5):
    sigma = make_cone([(1, 0, 0), (0, 1, 0), (1, 1, e)])
    singular = [f.rays for f in faces(sigma) if not is_regular(f)]
    print(f"e = {e}: multiplicity {multiplicity(sigma)}, singular faces {singular}")
    report = minimal_elements(sigma)
    print(f"  minimal elements: {list(report.minimal_elements)}")
    print(f"  ({report.candidate_count} parallelepiped candidates, {report.s_candidate_count} over the singular locus)")

# The order on lattice points: w is above v when w - v stays in the cone.
sigma = make_cone([(1, 0, 0), (0, 1, 0), (1, 1, 3)])
print("(1,1,1) <= (2,2,3):", leq(sigma, (1, 1, 1), (2, 2, 3)))
print("(1,1,1) and (1,1,0) comparable:", leq(sigma, (1, 1, 1), (1, 1, 0)) or leq(sigma, (1, 1, 0), (1, 1, 1)))
print("(1,0,0) lies over the singular locus:", in_S(sigma, (1, 0, 0)))

# In dimension two the answer is the exceptional curves of the minimal resolution.
for n in (2, 4, 7):
    cone = make_cone([(1, 0), (1, n)])
    print(f"A_{n - 1}: {list(minimal_elements(cone).minimal_elements)}")
