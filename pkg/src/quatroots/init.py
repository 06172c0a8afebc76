"""Initial approximations for the Weierstrass iteration.

Starting values must lie in pairwise distinct congruence classes.  They are
placed on a deterministic grid of (real part, norm) pairs inside an inclusion
radius for the zeros; only the imaginary directions are random.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hpoly import HPoly, p_times_pbar
from .quaternion import Quaternion, class_key


@dataclass(frozen=True)
class InitPlan:
    radius: float
    points: tuple
    seed: int

    @property
    def separation(self) -> float:
        return self.radius / (4 * len(self.points))


def root_norm_bound(p: HPoly) -> float:
    """Cauchy bound ``1 + max |c_k|`` of the real polynomial ``p * conj(p)``.

    The zeros of ``p * conj(p)`` have the same moduli as the zeros of ``p``,
    so the bound also covers every quaternionic zero.  ``p`` must be monic.
    """
    r = p_times_pbar(p)
    lead = r.coeffs[-1]
    return 1.0 + max(abs(c / lead) for c in r.coeffs[:-1])


def _unit_vectors(rng, count):
    out = []
    for _ in range(count):
        v = rng.standard_normal(3)
        n = math.sqrt(float(v @ v))
        while n < 1e-8:
            v = rng.standard_normal(3)
            n = math.sqrt(float(v @ v))
        out.append(v / n)
    return out


def make_initial_points(n: int, radius: float, seed: int) -> list:
    if n < 1 or not radius > 0:
        raise ValueError("need n >= 1 and radius > 0")
    rng = np.random.default_rng(seed)
    dirs = _unit_vectors(rng, n)
    points = []
    for m in range(1, n + 1):
        r = radius * m / (n + 1)
        # fraction of r taken by the real part, spread over (-0.8, 0.8)
        t = 0.0 if n == 1 else -0.8 + 1.6 * (m - 1) / (n - 1)
        re = r * t
        v = math.sqrt(max(r * r - re * re, 0.0))
        d = dirs[m - 1]
        points.append(Quaternion(re, v * d[0], v * d[1], v * d[2]))
    return points


def plan(p: HPoly, seed: int = 0) -> InitPlan:
    radius = root_norm_bound(p)
    return InitPlan(radius=radius, points=tuple(make_initial_points(p.degree, radius, seed)),
                    seed=seed)


def initial_points_for(p: HPoly, seed: int = 0) -> list:
    return list(plan(p, seed).points)


def perturb(q: Quaternion, scale: float, seed: int, counter: int) -> Quaternion:
    """``q + scale * u`` with ``u`` a unit pure-imaginary direction fixed by (seed, counter)."""
    if not scale > 0:
        raise ValueError("scale must be positive")
    u = _unit_vectors(np.random.default_rng([seed, counter]), 1)[0]
    return Quaternion(q[0], q[1] + scale * u[0], q[2] + scale * u[1], q[3] + scale * u[2])


def min_class_gap(points) -> float:
    keys = [class_key(q) for q in points]
    return min((a.distance(b) for i, a in enumerate(keys) for b in keys[i + 1:]), default=math.inf)
