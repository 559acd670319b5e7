"""Exact truncated formal group law computations.

Coefficient polynomials over the Lazard ring, truncated power series,
formal group law models, Chern class calculus, graded presentations of
cobordism rings of classifying spaces and cell decompositions.
"""

from .coeff import A, M, CoeffPoly, Gen, Named, apply_hom, degree_of, poly_mul
from .series import Series, SeriesVar, compositional_inverse, express_in, substitute, var
from .fgl import FGLModel, build_model, check_axioms, formal_sum, inverse_series, n_series, specialize
from .chern import chern_class, dual_chern, p_series, parse_bundle, roots_of, sp2_series, symmetric_reduce
from .presentations import (
    GradedComponent,
    GradedPresentation,
    bq_relations,
    chow_specialize,
    graded_component,
    kunneth,
    present,
)
from .cellular import build_complex, module_presentation

__version__ = "0.1.0"
