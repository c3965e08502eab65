"""
Measures and the functionals that integrate against them
========================================================

A probability measure on a finite measurable space can be recovered from
the functional ``f -> int f dP`` it induces.  This walk-through builds a
small space, integrates against a measure, rebuilds the measure from the
functional and splits a [0, 1]-valued function into indicator layers.
"""

from fractions import Fraction as F

from affprob import FiniteSpace, Functional, IFunction, Measure, gamma, integrate, phi, telescoping_decompose
from affprob.spaces import indicator

# %% A four-point space whose sigma-algebra has three atoms: {0, 1}, {2}, {3}.
space = FiniteSpace(4, (frozenset({0, 1}), frozenset({2}), frozenset({3})))
print("space:", space.atoms)

# %% A measure assigns exact rational mass to each atom.
p = Measure(space, (F(1, 2), F(1, 3), F(1, 6)))
print("P on atoms:", [str(m) for m in p.masses])

# %% Functions into [0, 1] are constant on atoms, so one value per atom.
f = IFunction(space, (F(1, 4), 1, F(1, 2)))
print("int f dP =", integrate(p, f))

# %% gamma turns P into a functional; phi reads the measure back off indicators.
g = gamma(p)
print("G(f) =", g.eval(f))
print("phi(gamma(P)) == P:", phi(g) == p)

# %% A black-box functional is accepted by phi only after passing the property checks.
black_box = Functional.black_box(space, lambda h: integrate(p, h), "integral, opaque")
print("phi(black box) == P:", phi(black_box) == p)

# %% Every function is a convex mixture of indicators of its upper level sets.
d = telescoping_decompose(f)
for coef, s in d.terms:
    print(f"  {coef} * indicator{sorted(s.points)}")
print("coefficients sum to", d.coefficient_sum())

# %% Applying the functional layer by layer gives the same number.
layered = sum((c * g.eval(indicator(s)) for c, s in d.terms), F(0))
print("sum of layers =", layered)
