"""Exact-rational probability monads on finite measurable spaces.

Measures (the Giry monad), weakly averaging affine functionals (the
functional monad), the isomorphism between them, and a sampled check of
the codensity construction over convex spaces.  All arithmetic uses
:class:`fractions.Fraction`; every comparison is exact.
"""

from .numeric import HALF, ONE, ZERO, Rational, UnitRational, as_unit, cvx_combine, format_rational, parse_rational
from .spaces import (
    NATURALS,
    CountableIFunction,
    CountableSet,
    CountableSpace,
    FiniteSpace,
    IFunction,
    MeasurableFn,
    MeasurableSet,
    NotMeasurable,
    SimpleDecomposition,
    SpaceMismatch,
    TensorSizeError,
    generate_sigma_algebra,
    indicator,
    is_measurable,
    pointwise_combine,
    telescoping_decompose,
    tensor_sigma_algebra,
)
from .convex import (
    INTERVAL,
    SQUARE,
    AffineEndoI,
    AffineMap,
    ConvexSpace,
    Leaf,
    Node,
    Simplex,
    SimplexPoint,
    apply_affine,
    barycentric_to_free,
    check_axioms,
    free_to_barycentric,
)
from .giry import (
    CountableMeasure,
    Measure,
    MeasureOnMeasures,
    NotAMeasure,
    dirac,
    integral_operator,
    integrate,
    join,
    pushforward,
    st_map,
    strength,
)
from .functionals import (
    Functional,
    FunctionalOnFunctionals,
    check_affine,
    check_preserves_limits,
    check_weakly_averaging,
    lemma_basic_suite,
    t_join,
    t_pushforward,
    unit,
)
from .equivalence import NotInT, check_monad_morphism, check_naturality, gamma, giry_two_iso, phi
from .codensity import IotaElement, SliceObject, epsilon, hat, iota_arrow, lambda_leg, prime, theta_mediator

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
