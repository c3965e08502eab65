"""
Functionals from cones over convex spaces
=========================================

A functional ``G`` on ``X`` yields, for every map ``f`` from ``X`` into a
convex polytope, an element of that polytope's double dual.  Those
elements form a cone; conversely a cone determines a functional through
its leg at the unit interval.  This demo goes around that loop.
"""

from fractions import Fraction as F

from affprob import INTERVAL, FiniteSpace, Functional, Measure, Simplex, SimplexPoint, theta_mediator
from affprob.codensity import SliceObject, canonical_cone, check_cone_commutation, extreme_homs, lambda_leg
from affprob.convex import AffineMap
from affprob.equivalence import functionals_equal

space = FiniteSpace.discrete(3)
g = Functional.canonical(Measure(space, (F(1, 2), F(1, 4), F(1, 4))))

# %% Send the three points to three points of the triangle.
tri = Simplex(3)
pts = [SimplexPoint((1, 0, 0)), SimplexPoint((F(1, 2), F(1, 2), 0)), SimplexPoint((0, 0, 1))]
f = SliceObject.from_points(space, tri, pts)

# %% The leg at f is read off by evaluating at affine maps into I.
leg = lambda_leg(f, g)
for h in extreme_homs(tri):
    print(f"  leg at {h}: {leg.eval(h)}")

# %% Composing with an affine map k commutes with taking legs.
k = AffineMap(tri, INTERVAL, (0, F(1, 2), 1))
print(check_cone_commutation(k, f, g))

# %% The cone built from G gives G back through its unit-interval legs.
theta = theta_mediator(canonical_cone(lambda z: z), g, space, [(k, f)])
print("recovered G:", functionals_equal(theta, g))
