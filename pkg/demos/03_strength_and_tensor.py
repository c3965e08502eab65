"""
Pairing a measure with a point
==============================

The strength map sends ``(P, y)`` to a measure on the tensor space
``X (x) Y``.  Its marginals are ``P`` and the point mass at ``y``, and
routing a pushforward through the function space reproduces it directly.
"""

from fractions import Fraction as F

from affprob import FiniteSpace, Measure, MeasurableFn, pushforward, strength, tensor_sigma_algebra
from affprob.giry import st_map_composite
from affprob.spaces import product_sigma_algebra, projection_left, projection_right

x = FiniteSpace(3, (frozenset({0, 1}), frozenset({2})))
y = FiniteSpace.discrete(2)

# %% The tensor sigma-algebra contains every measurable rectangle; here the two coincide.
t = tensor_sigma_algebra(x, y)
print("tensor atoms: ", [sorted(a) for a in t.atoms])
print("product atoms:", [sorted(a) for a in product_sigma_algebra(x, y).atoms])

# %% Strength and its two marginals.
p = Measure(x, (F(2, 3), F(1, 3)))
tau = strength(p, 1, y)
print("tau(P, 1) on tensor atoms:", [str(m) for m in tau.masses])
print("left marginal: ", [str(m) for m in pushforward(tau, projection_left(t)).masses])
print("right marginal:", [str(m) for m in pushforward(tau, projection_right(t)).masses])

# %% Pushing forward along f directly, or via pairing with f and evaluating.
f = MeasurableFn(x, y, (0, 0, 1))
print("direct:   ", [str(m) for m in pushforward(p, f).masses])
print("composite:", [str(m) for m in st_map_composite(f, p).masses])
