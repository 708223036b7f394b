"""Newton-Cotes quadrature with closed-form corrections for jump discontinuities."""

from .core import (
    DEFAULT_NODE_TOL,
    SampleSet,
    SingularityLocation,
    SingularitySpec,
    UniformGrid,
    locate_singularity,
    make_grid,
)
from .corrections import (
    AlphaConvention,
    CorrectionPolynomial,
    closed_form_correction,
    correct_precomputed,
    corrected_composite,
    corrected_simple,
    correction_terms,
    error_bound,
    error_constants,
    generate_correction,
    select_variant,
    taylor_jump_shift,
)
from .exceptions import *  # noqa: F401,F403
from .oracle import PiecewiseFunction, TrigPoly, exact_integral, paper_test_function, reference_integral
from .rules import RuleSpec, composite_integral, rule_weights, simple_integral

__version__ = "0.1.0"
