"""Simultaneous zeros of quaternion polynomials by a Weierstrass-type iteration."""

from .classify import (ClassifiedRoot, ZeroKind, classify_zero, group_spheres,
                       quadratic_zero_structure, refine_sphere, swap_adjacent_factors)
from .errors import (ClassCollision, CountMismatch, DegreeZero, DiagnosticConflict, DomainError,
                     NotAZero, NotConverged, ParseError, PreconditionViolation, QuatRootsError,
                     RealityViolation, TooManyCollisions, ZeroDivision)
from .hpoly import (HPoly, RealPoly, char_poly, conj_poly, divide_by_real_quadratic,
                    eval_left_product, evaluate, from_factors, monicize, p_times_pbar, star_mul)
from .init import InitPlan, make_initial_points, root_norm_bound
from .quaternion import ClassKey, Quaternion, class_key, conj, inverse, mul, norm, similar
from .solver import IterationRecord, SolveOutcome, SolverConfig, residuals, rho_estimate, solve

__version__ = "0.1.0"
