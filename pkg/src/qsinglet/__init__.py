"""Exact audit of spin-singlet statistics under a deformed su(2) symmetry.

Everything is computed over the field Q(s) of rational functions in
``s = q**(1/2)``:

* :mod:`qsinglet.scalar`: Laurent polynomials and canonical rational functions
* :mod:`qsinglet.linalg`: dense exact matrices, kernels, inverses
* :mod:`qsinglet.hopf`: spin-1/2 generators, coproducts, Casimir
* :mod:`qsinglet.braiding`: R-matrices, dressing, covariance and YBE checks
* :mod:`qsinglet.states`: the invariant two-qubit state
* :mod:`qsinglet.measurement`: projectors and joint/marginal statistics
* :mod:`qsinglet.audit`: claim registry, sweeps and report rendering
* :mod:`qsinglet.numeric`: floating-point twin used for cross-checks
"""

__version__ = "0.1.0"

from .scalar import Q, S, FieldScalar, LaurentPolynomial, parse_scalar  # noqa: E402
from .linalg import Matrix, StateVector  # noqa: E402
from .hopf import Generator  # noqa: E402
from .braiding import BobRule, RSource, Site  # noqa: E402
from .measurement import BornRule, BraChoice, Convention, Ordering  # noqa: E402

__all__ = [
    "__version__",
    "Q",
    "S",
    "FieldScalar",
    "LaurentPolynomial",
    "parse_scalar",
    "Matrix",
    "StateVector",
    "Generator",
    "BobRule",
    "RSource",
    "Site",
    "BornRule",
    "BraChoice",
    "Convention",
    "Ordering",
]
