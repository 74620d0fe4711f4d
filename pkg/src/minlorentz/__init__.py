"""Minimal Lorentz surfaces in the neutral 4-space.

Builds null curves from Weierstrass data, synthesises minimal surfaces from
pairs of them, evaluates the Gauss and normal curvature through independent
formula paths, and verifies numerically that the curvature pair solves the
system of natural PDEs in canonical coordinates.
"""

from .algebra import DVec4, Double, Vec4, det4, inner, wedge_inner
from .curvature import (CurvaturePair, curvature_canonical,
                        curvature_from_jets, curvature_from_triples,
                        discriminant_identity_check)
from .funcs import ExprFn, Fn1, TableFn, differentiate, parse
from .nullcurve import (CanonicalPair, CurveJet, WeierstrassTriple,
                        alpha_pp_sq, alpha_prime, curve_jet, enneper_curve,
                        enneper_triple, integrate_curve, is_nondegenerate,
                        natural_parameter, reparametrize_natural,
                        triple_from_jet)
from .motions import (Mat2, Mobius, Motion4, apply_motion,
                      mobius_pair_from_spinors, motion_from_spinors,
                      spinor_matrix, transform_triple)
from .pdeverify import (ResidualReport, ScalarGrid, hyperbolic_laplacian,
                        natural_eq_residuals, verify_surface)
from .equivalence import (Quadruple, mobius_apply_quadruple, same_solution,
                          solution_fields)
from .surface import (MinimalSurface, SurfaceType, classify, gauss_map,
                      induced_E, position, sample_grid)

__version__ = "0.1.0"
