"""Example polynomials and random instance families shared by the tests."""

import math

import numpy as np

from quatroots.hpoly import HPoly, factor_terms_from_zeros, from_factors
from quatroots.quaternion import Quaternion, class_key

Q = Quaternion

# sextic with only simple zeros, given by its factor terms (rightmost first)
SEXTIC_TERMS = [Q(1, -1), Q(2, 0, -1), Q(1), Q(2), Q(-1, 0, 0, -1), Q(0, -2)]
SEXTIC_ROOTS = [Q(1, -1), Q(1), Q(-1, -29 / 39, 14 / 39, -22 / 39), Q(2),
                Q(0, -224 / 113, 0, -30 / 113), Q(2, -2 / 3, -1 / 3, 2 / 3)]
# initial distances from the converged terms, one per root
SEXTIC_OFFSETS = [0.27, 0.06, 0.45, 0.02, 0.08, 0.33]

# quartic with the sphere [i] and two isolated zeros
QUARTIC = HPoly([Q(1, -1, 1, 1), Q(-1, 1), Q(2, -1, 1, 1), Q(-1, 1), Q(1)])
QUARTIC_ISOLATED = [Q(0, -1, 0, 1), Q(1, 0, -1)]
# two sphere points of a converged run, then the isolated zeros
QUARTIC_REFERENCE_ZEROS = [Q(0, 0.099934477851162, -0.917198737816235, -0.385693629043728),
                           Q(0, -0.799427021998164, -0.519295977566198, -0.302073044449043),
                           Q(1, 0, -1), Q(0, -1, 0, 1)]
QUARTIC_OFFSETS = [1.3e-2, 7.1e-2, 7.6e-2, 1.3e-1]
QUARTIC_KEY_ROOTS = [Q(0, 1), Q(0, 0, 1), Q(1, 0, -1), Q(0, -1, 0, 1)]

# cubic (x - i) * (x + 1 + k) * (x + 1 + k)
DOUBLE_TERMS = [Q(-1, 0, 0, -1), Q(-1, 0, 0, -1), Q(0, 1)]
DOUBLE_ROOT = Q(-1, 0, 0, -1)
DOUBLE_SIMPLE = Q(0, -3 / 13, -4 / 13, -12 / 13)


def sextic():
    return from_factors(SEXTIC_TERMS)


def cubic_double():
    return from_factors(DOUBLE_TERMS)


def offset_starts(terms, offsets, seed=0):
    """``terms[i]`` moved by ``offsets[i]`` in a seeded direction of R^4."""
    rng = np.random.default_rng(seed)
    out = []
    for t, o, v in zip(terms, offsets, rng.standard_normal((len(terms), 4))):
        v = v / np.linalg.norm(v) * o
        out.append(Q(t[0] + v[0], t[1] + v[1], t[2] + v[2], t[3] + v[3]))
    return out


def sextic_starts(seed=0):
    # near the factorization a converged run ends at
    return offset_starts(factor_terms_from_zeros(SEXTIC_ROOTS), SEXTIC_OFFSETS, seed)


def quartic_starts(seed=0):
    return offset_starts(factor_terms_from_zeros(QUARTIC_REFERENCE_ZEROS), QUARTIC_OFFSETS, seed)


def random_terms(rng, n, radius=3.0, gap=0.5):
    """``n`` factor terms with norm <= radius and pairwise class-key gaps >= gap."""
    terms = []
    while len(terms) < n:
        v = rng.uniform(-radius, radius, 4)
        if np.linalg.norm(v) > radius:
            continue
        q = Q(*v)
        if all(class_key(q).distance(class_key(t)) >= gap for t in terms):
            terms.append(q)
    return terms


def robustness_family(seed=0, count=100, max_degree=5):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_degree + 1))
        out.append(random_terms(rng, n))
    return out


def key_error(a, b):
    ka, kb = class_key(a), class_key(b)
    return max(abs(ka.re - kb.re), abs(ka.norm - kb.norm))


SQRT2 = math.sqrt(2.0)


def ball_offsets(rng, n, radius):
    """Distances of ``n`` points drawn uniformly from the 4-ball of ``radius``."""
    return list(radius * rng.uniform(0.0, 1.0, n) ** 0.25)
