"""Characterization of computed zeros: isolated, spherical or multiple.

A non-real zero ``q`` is spherical when its whole congruence class consists of
zeros.  Two equivalent tests are used together: ``p(conj(q)) = 0`` and
divisibility of ``p`` by the characteristic polynomial of ``q``.

The module also holds a refinement step for spheres.  The Weierstrass
iteration can only pin down a sphere's class to roughly the square root of
machine precision, because both the correction numerator and the product of
characteristic polynomials vanish on it.  Fitting the real quadratic divisor
directly is well conditioned, so :func:`refine_sphere` does that.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DiagnosticConflict, NotAZero, PreconditionViolation
from .hpoly import HPoly, RealPoly, char_poly, divide_by_real_quadratic, evaluate
from .quaternion import ClassKey, Quaternion, class_key, conj, inverse, mul, norm, same_class

ISOLATED = "isolated"
SPHERICAL = "spherical"
MULTIPLE = "multiple_isolated"

DEFAULT_TOL = 1e-8
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class ZeroKind:
    tag: str
    multiplicity: int = 1
    sphere: Optional[ClassKey] = None

    def __post_init__(self):
        if self.tag not in (ISOLATED, SPHERICAL, MULTIPLE):
            raise ValueError(f"unknown zero kind {self.tag!r}")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if (self.tag == SPHERICAL) != (self.sphere is not None):
            raise ValueError("a sphere key is required for spherical zeros and only for them")
        if self.tag != MULTIPLE and self.multiplicity != 1:
            raise ValueError("only multiple_isolated zeros carry a multiplicity above one")


@dataclass(frozen=True)
class ClassifiedRoot:
    value: Quaternion
    kind: ZeroKind
    residual: float

    def __post_init__(self):
        if not self.residual >= 0:
            raise ValueError("residual must be non-negative")


def _threshold(p: HPoly, q: Quaternion, tol: float) -> float:
    # tol relative to the size the terms of p(q) can reach
    return tol * max(1.0, p.eval_bound(q))


def classify_zero(p: HPoly, q, tol: float = DEFAULT_TOL) -> ZeroKind:
    """Classify an approximate zero ``q`` of ``p``."""
    q = Quaternion.coerce(q)
    limit = _threshold(p, q, tol)
    if norm(evaluate(p, q)) > limit:
        raise NotAZero(f"|p(q)| = {norm(evaluate(p, q)):.3e} exceeds {limit:.3e}")
    if q.vector_norm() <= tol:
        return ZeroKind(ISOLATED)
    by_conj = norm(evaluate(p, conj(q))) <= limit
    if p.degree < 2:
        by_division = False
    else:
        _, rem = divide_by_real_quadratic(p, char_poly(q))
        by_division = max((norm(c) for c in rem.coeffs), default=0.0) <= limit
    if by_conj != by_division:
        raise DiagnosticConflict(
            f"conjugate test says {'spherical' if by_conj else 'isolated'}, "
            f"division test says {'spherical' if by_division else 'isolated'} at q = {q}")
    if by_conj:
        return ZeroKind(SPHERICAL, sphere=class_key(q))
    return ZeroKind(ISOLATED)


def _clusters(keys, tol):
    # single-linkage grouping by class key; deterministic for a given order
    parent = list(range(len(keys)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            if abs(keys[a].re - keys[b].re) <= tol and abs(keys[a].norm - keys[b].norm) <= tol:
                parent[find(b)] = find(a)
    groups = {}
    for a in range(len(keys)):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def _all_coincide(points, tol):
    return all(norm(a - b) <= tol for i, a in enumerate(points) for b in points[i + 1:])


def group_spheres(roots: Sequence, p: HPoly, tol: float = DEFAULT_TOL) -> list:
    """Classify every root, grouping the ones that share a congruence class.

    The result is in input order.  Singletons go through :func:`classify_zero`;
    a cluster whose members coincide is a multiple isolated zero, and any
    other cluster is classified from its members (expected spherical).
    """
    roots = [Quaternion.coerce(r) for r in roots]
    keys = [class_key(r) for r in roots]
    out = [None] * len(roots)
    for group in _clusters(keys, tol):
        members = [roots[a] for a in group]
        if len(group) == 1:
            kinds = [classify_zero(p, members[0], tol)]
        elif _all_coincide(members, tol):
            for q in members:
                # still has to be a zero
                classify_zero(p, q, tol)
            kinds = [ZeroKind(MULTIPLE, multiplicity=len(group))] * len(group)
        else:
            kinds = [classify_zero(p, q, tol) for q in members]
            if all(k.tag == SPHERICAL for k in kinds):
                # one shared key for the whole sphere
                shared = ClassKey(sum(k.re for k in (keys[a] for a in group)) / len(group),
                                  sum(k.norm for k in (keys[a] for a in group)) / len(group))
                kinds = [ZeroKind(SPHERICAL, sphere=shared)] * len(group)
        for a, kind in zip(group, kinds):
            out[a] = ClassifiedRoot(roots[a], kind, norm(evaluate(p, roots[a])))
    return out


def sphere_summary(classified: Sequence[ClassifiedRoot]) -> list:
    """Distinct sphere keys with the indices of their representative points."""
    spheres = {}
    for idx, c in enumerate(classified):
        if c.kind.tag == SPHERICAL:
            spheres.setdefault(c.kind.sphere, []).append(idx)
    return [{"key": key, "members": members} for key, members in spheres.items()]


# quadratic factor structure ---------------------------------------------------

def swap_adjacent_factors(x1, x2):
    """Rewrite ``(x - x2) * (x - x1)`` as ``(x - y2) * (x - y1)`` with the roles exchanged.

    Returns ``(y1, y2)``; ``y1`` is the new rightmost term and lies in the class of ``x2``.
    """
    x1 = Quaternion.coerce(x1)
    x2 = Quaternion.coerce(x2)
    h = conj(x2) - x1
    if not any(h):
        return x2, x1
    hi = inverse(h)
    return mul(mul(hi, x2), h), mul(mul(hi, x1), h)


@dataclass(frozen=True)
class QuadraticStructure:
    kind: ZeroKind
    witness: Quaternion


def quadratic_zero_structure(x1, x2, tol: float = 1e-12) -> QuadraticStructure:
    """Zero set of ``(x - x2) * (x - x1)`` for congruent, non-real ``x1`` and ``x2``."""
    x1 = Quaternion.coerce(x1)
    x2 = Quaternion.coerce(x2)
    if x1.is_real(tol) or x2.is_real(tol):
        raise PreconditionViolation("both factor terms must be non-real")
    if not same_class(x1, x2, tol):
        raise PreconditionViolation(f"{x1} and {x2} lie in different congruence classes")
    if norm(x1 - conj(x2)) <= tol:
        return QuadraticStructure(ZeroKind(SPHERICAL, sphere=class_key(x1)), x1)
    # every other pair in one class has x1 as its only zero
    return QuadraticStructure(ZeroKind(MULTIPLE, multiplicity=2), x1)


# sphere refinement -------------------------------------------------------------

def _flat(p: HPoly, length: int) -> np.ndarray:
    out = np.zeros(4 * length)
    for k, c in enumerate(p.coeffs):
        out[4 * k:4 * k + 4] = c
    return out


def _shift(p: HPoly) -> HPoly:
    return HPoly._raw([Quaternion(0.0)] + list(p.coeffs))


def refine_sphere(p: HPoly, q, window: float = 1e-4, max_steps: int = 20) -> Optional[RealPoly]:
    """Fit a real divisor ``x^2 - s x + t`` of ``p`` starting from the class of ``q``.

    Gauss-Newton on the eight real equations ``remainder = 0`` in the two
    unknowns ``(s, t)``.  Returns the divisor, or None when ``p`` has no
    real quadratic divisor within ``window`` (scaled by ``max(1, |q|)``) of
    the class of ``q``, for example at a double isolated root.
    """
    q = Quaternion.coerce(q)
    n = p.degree
    if n < 2:
        return None
    c = char_poly(q)
    s, t = -c.coeffs[1], c.coeffs[0]
    best = None
    for _ in range(max_steps):
        c = RealPoly((t, -s, 1.0))
        quot, rem = divide_by_real_quadratic(p, c)
        r = _flat(rem, 2)
        size = float(np.linalg.norm(r))
        if best is not None and size >= best[0]:
            break
        best = (size, s, t)
        if size == 0.0:
            break
        # d rem / d s = rem(x * quot), d rem / d t = -rem(quot)
        _, ds = divide_by_real_quadratic(_shift(quot), c)
        _, dt = divide_by_real_quadratic(quot, c)
        jac = np.column_stack([_flat(ds, 2), -_flat(dt, 2)])
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        s, t = s + float(step[0]), t + float(step[1])
    size, s, t = best
    if t - s * s / 4.0 <= 0.0:
        return None
    radius = math.sqrt(t)
    start = class_key(q)
    if max(abs(s / 2.0 - start.re), abs(radius - start.norm)) > window * max(1.0, start.norm):
        return None
    # the remainder of an exact divisor is pure rounding
    if size > 64 * n * _EPS * p.eval_bound(Quaternion(radius)):
        return None
    return RealPoly((t, -s, 1.0))


def project_to_class(q, c: RealPoly) -> Quaternion:
    """Move ``q`` onto the zero sphere of ``c`` keeping its imaginary direction."""
    q = Quaternion.coerce(q)
    t, minus_s = c.coeffs[0], c.coeffs[1]
    re = -minus_s / 2.0
    rad = math.sqrt(max(t - re * re, 0.0))
    v = q.vector_norm()
    if v == 0.0:
        return Quaternion(re, rad)
    f = rad / v
    return Quaternion(re, q[1] * f, q[2] * f, q[3] * f)


def polish_spheres(p: HPoly, roots: Sequence, tol: float = 1e-5):
    """Refine every cluster of distinct congruent roots onto the exact sphere.

    Returns ``(new_roots, count)`` where ``count`` is the number of spheres
    refined.  Clusters without a real quadratic divisor are left alone.
    """
    roots = [Quaternion.coerce(r) for r in roots]
    keys = [class_key(r) for r in roots]
    count = 0
    for group in _clusters(keys, tol):
        members = [roots[a] for a in group]
        if len(group) < 2 or _all_coincide(members, tol):
            continue
        centre = members[0]
        c = refine_sphere(p, centre)
        if c is None:
            continue
        for a in group:
            roots[a] = project_to_class(roots[a], c)
        count += 1
    return roots, count
