"""Quaternionic Weierstrass iteration.

The iteration approximates the factor terms ``x_i`` of a factorization
``P = (x - x_n) * ... * (x - x_1)``.  For each ``i`` the correction is

    z_i <- z_i - W_i(z_i) * Q_i(z_i)^-1,    W_i = conj(L_i) * P * conj(R_i)

where ``L_i`` is the product of the factors with index above ``i``, ``R_i``
the product of the factors below ``i`` and ``Q_i`` the (real) product of the
characteristic polynomials of all iterates but the ``i``-th.  The roots are
recovered from the factor terms by ``zeta_i = similar(conj(R_i)(z_i), z_i)``.

Indices are zero-based throughout: ``z[0]`` is the rightmost factor term.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (ClassCollision, DomainError, NotConverged, PreconditionViolation,
                     TooManyCollisions, ZeroDivision)
from .hpoly import (HPoly, RealPoly, char_poly, conj_poly, evaluate, factor_terms_from_zeros,
                    monicize, star_mul)
from .quaternion import ONE, Quaternion, inverse, mul, norm, similar

_EPS = sys.float_info.epsilon
MAX_PERTURBATIONS = 10
FREEZE = 2.0

SEQUENTIAL = "sequential"
PARALLEL = "parallel"


@dataclass(frozen=True)
class SolverConfig:
    mode: str = SEQUENTIAL
    eps_increment: float = 1e-12
    eps_residual: float = 1e-12
    kmax: int = 100
    class_collision_tol: float = 1e-13
    perturb_scale: float = 1e-6
    rng_seed: int = 0
    # "both": increment and residual must be small; "residual": residual only
    stopping: str = "both"
    # compare |P(zeta)| against eps_residual * max(1, sum |a_k| |zeta|^k)
    relative_residual: bool = True
    # when a sweep leaves every iterate unchanged, fit the real quadratic
    # divisor of any cluster of congruent roots and restart from it
    refine_spheres: bool = True
    sphere_tol: float = 1e-5

    def __post_init__(self):
        if self.mode not in (SEQUENTIAL, PARALLEL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.stopping not in ("both", "residual"):
            raise ValueError(f"unknown stopping rule {self.stopping!r}")
        for name in ("eps_increment", "eps_residual", "class_collision_tol", "perturb_scale",
                     "sphere_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if int(self.kmax) < 1:
            raise ValueError("kmax must be at least 1")
        if int(self.rng_seed) < 0:
            raise ValueError("rng_seed must be unsigned")


@dataclass
class IterationRecord:
    k: int
    z: tuple
    zeta: tuple
    residuals: tuple
    # None at k = 0, where there is no previous iterate
    increments: Optional[tuple]
    max_increment: Optional[float]
    max_residual: float
    # max_i |P(zeta_i)| / max(1, sum_k |a_k| |zeta_i|^k)
    max_scaled_residual: float = 0.0
    per_root_error: Optional[list] = None
    error: Optional[float] = None
    rho: Optional[float] = None


@dataclass
class SolveOutcome:
    converged: bool
    iterations: int
    factor_terms: list
    roots: list
    trace: list = field(default_factory=list)
    perturbations: int = 0
    mode: str = SEQUENTIAL
    spheres_refined: int = 0
    # a sweep changed nothing and no refinement applied, so further sweeps were pointless
    stagnated: bool = False


# building blocks --------------------------------------------------------------

def _linear(q: Quaternion) -> HPoly:
    return HPoly._raw([-q, ONE])


def build_L(i: int, z: Sequence[Quaternion]) -> HPoly:
    """``(x - z[n-1]) * ... * (x - z[i+1])``; the constant 1 when ``i`` is the last index."""
    n = len(z)
    if not 0 <= i < n:
        raise IndexError(i)
    out = HPoly._raw([ONE])
    for j in range(i + 1, n):
        out = star_mul(_linear(z[j]), out)
    return out


def build_R(i: int, z_updated: Sequence[Quaternion]) -> HPoly:
    """``(x - z[i-1]) * ... * (x - z[0])``; the constant 1 for ``i = 0``."""
    if i < 0 or i > len(z_updated):
        raise IndexError(i)
    out = HPoly._raw([ONE])
    for j in range(i):
        out = star_mul(_linear(z_updated[j]), out)
    return out


def build_Q(i: int, z_updated: Sequence[Quaternion], z_current: Sequence[Quaternion]) -> RealPoly:
    """Product of characteristic polynomials of ``z_updated[:i]`` and ``z_current[i+1:]``."""
    out = RealPoly([1.0])
    for j in range(i):
        out = out * char_poly(z_updated[j])
    for j in range(i + 1, len(z_current)):
        out = out * char_poly(z_current[j])
    return out


def correction_polynomial(p: HPoly, L: HPoly, R: HPoly) -> HPoly:
    """``conj(L) * p * conj(R)``."""
    return star_mul(star_mul(conj_poly(L), p), conj_poly(R))


def _correct(i, p, L, R, Q, zi, cfg):
    W = correction_polynomial(p, L, R)
    num = evaluate(W, zi)
    # rounding-level numerator: zi is already a factor term to working precision
    if norm(num) <= FREEZE * len(W.coeffs) * _EPS * W.eval_bound(zi):
        return zi
    den = Q(zi)
    den_norm = norm(den)
    if den_norm < cfg.class_collision_tol * Q.eval_bound(zi) or den_norm == 0.0:
        raise ClassCollision(i, den_norm)
    return zi - mul(num, inverse(den))


def recover_root(R: HPoly, zi: Quaternion, i: int = 0) -> Quaternion:
    """``conj(R)(zi) zi conj(R)(zi)^-1``; ``zi`` itself when ``R`` is constant."""
    if len(R.coeffs) == 1:
        return zi
    h = evaluate(conj_poly(R), zi)
    try:
        return similar(h, zi)
    except ZeroDivision:
        raise ClassCollision(i, norm(h)) from None


def step_sequential(p: HPoly, z: Sequence[Quaternion], cfg: SolverConfig):
    """One single-step sweep; later corrections use the iterates already updated."""
    n = len(z)
    Ls = _suffix_products(z)
    z_new, zeta_new = [], []
    R = HPoly._raw([ONE])
    for i in range(n):
        Q = build_Q(i, z_new, z)
        zi = _correct(i, p, Ls[i], R, Q, z[i], cfg)
        z_new.append(zi)
        zeta_new.append(recover_root(R, zi, i))
        R = star_mul(_linear(zi), R)
    return z_new, zeta_new


def step_parallel(p: HPoly, z: Sequence[Quaternion], cfg: SolverConfig):
    """One total-step sweep; every correction uses only the previous iterates."""
    n = len(z)
    Ls = _suffix_products(z)
    z_new = []
    R = HPoly._raw([ONE])
    for i in range(n):
        Q = build_Q(i, z, z)
        z_new.append(_correct(i, p, Ls[i], R, Q, z[i], cfg))
        R = star_mul(_linear(z[i]), R)
    # roots come from the new factor terms, as in the single-step sweep
    return z_new, roots_from_terms(z_new)


def roots_from_terms(z: Sequence[Quaternion]) -> list:
    """Roots ``zeta_i = similar(conj(R_i)(z_i), z_i)`` of ``(x - z[n-1]) * ... * (x - z[0])``."""
    zeta = []
    R = HPoly._raw([ONE])
    for i, zi in enumerate(z):
        zeta.append(recover_root(R, zi, i))
        R = star_mul(_linear(zi), R)
    return zeta


def _suffix_products(z):
    n = len(z)
    Ls = [None] * n
    L = HPoly._raw([ONE])
    for i in range(n - 1, -1, -1):
        Ls[i] = L
        L = star_mul(L, _linear(z[i]))
    return Ls


# driver ----------------------------------------------------------------------

def residuals(p: HPoly, zeta: Sequence[Quaternion]) -> list:
    return [norm(evaluate(p, q)) for q in zeta]


def rho_estimate(errors: Sequence[float]) -> list:
    """Computational order of convergence ``log e_k / log e_{k-1}`` for ``k >= 1``."""
    for e in errors:
        if not 0.0 < e < 1.0:
            raise DomainError(f"errors must lie in (0, 1) for the order estimate, got {e!r}")
    return [math.log(errors[k]) / math.log(errors[k - 1]) for k in range(1, len(errors))]


def rho_or_none(current: Optional[float], previous: Optional[float]) -> Optional[float]:
    """Single order estimate, or None where the logarithm ratio is undefined."""
    if current is None or previous is None:
        return None
    if not (0.0 < current < 1.0 and 0.0 < previous < 1.0):
        return None
    return math.log(current) / math.log(previous)


def default_stop(record: IterationRecord, cfg: SolverConfig) -> bool:
    res = record.max_scaled_residual if cfg.relative_residual else record.max_residual
    if cfg.stopping == "residual":
        return res < cfg.eps_residual
    return (record.max_increment is not None and record.max_increment < cfg.eps_increment
            and res < cfg.eps_residual)


def _record(k, p, z, zeta, prev_zeta):
    res = tuple(residuals(p, zeta))
    scaled = max(r / max(1.0, p.eval_bound(q)) for r, q in zip(res, zeta))
    if prev_zeta is None:
        inc = None
        max_inc = None
    else:
        inc = tuple(norm(a - b) for a, b in zip(zeta, prev_zeta))
        max_inc = max(inc)
    return IterationRecord(k=k, z=tuple(z), zeta=tuple(zeta), residuals=res,
                           increments=inc, max_increment=max_inc, max_residual=max(res),
                           max_scaled_residual=scaled)


def solve(p: HPoly, cfg: Optional[SolverConfig] = None, z0: Optional[Sequence] = None,
          stop: Optional[Callable[[IterationRecord], bool]] = None,
          strict: bool = False) -> SolveOutcome:
    """Run the Weierstrass iteration until the stopping rule holds or ``kmax`` is hit.

    ``stop`` replaces the default increment/residual rule (used by the
    known-root test harness).  With ``strict=True`` a run that exhausts
    ``kmax`` raises :class:`NotConverged` instead of returning quietly.
    """
    from .classify import polish_spheres
    from .init import initial_points_for, perturb

    cfg = cfg or SolverConfig()
    if p.is_zero() or p.degree < 1:
        raise PreconditionViolation("polynomial must have degree >= 1")
    p = monicize(p)
    n = p.degree
    if z0 is None:
        z = list(initial_points_for(p, cfg.rng_seed))
    else:
        z = [Quaternion.coerce(q) for q in z0]
        if len(z) != n:
            raise PreconditionViolation(f"need {n} starting values, got {len(z)}")
    step = step_sequential if cfg.mode == SEQUENTIAL else step_parallel
    is_done = stop or (lambda rec: default_stop(rec, cfg))

    try:
        zeta0 = roots_from_terms(z)
    except ClassCollision:
        zeta0 = list(z)
    trace = [_record(0, p, z, zeta0, None)]
    perturbations = 0
    refined = 0
    stagnated = False
    converged = False
    k = 0
    while k < cfg.kmax:
        try:
            z_new, zeta_new = step(p, z, cfg)
        except ClassCollision as exc:
            perturbations += 1
            if perturbations > MAX_PERTURBATIONS:
                raise TooManyCollisions(
                    f"more than {MAX_PERTURBATIONS} class collisions; last: {exc}") from exc
            z[exc.index] = perturb(z[exc.index], cfg.perturb_scale, cfg.rng_seed, perturbations)
            continue
        k += 1
        rec = _record(k, p, z_new, zeta_new, trace[-1].zeta)
        rec.rho = rho_or_none(rec.max_increment, trace[-1].max_increment)
        trace.append(rec)
        z = list(z_new)
        if is_done(rec):
            converged = True
            break
        if rec.max_increment == 0.0:
            polished, count = (polish_spheres(p, rec.zeta, cfg.sphere_tol)
                               if cfg.refine_spheres else (None, 0))
            if count == 0:
                stagnated = True
                break
            refined += count
            z = factor_terms_from_zeros(polished)

    last = trace[-1]
    outcome = SolveOutcome(converged=converged, iterations=k, factor_terms=list(last.z),
                           roots=list(last.zeta), trace=trace, perturbations=perturbations,
                           mode=cfg.mode, spheres_refined=refined, stagnated=stagnated)
    if strict and not converged:
        raise NotConverged(outcome)
    return outcome
