"""Unilateral left polynomials over the quaternions and real polynomials.

Coefficients are stored ascending by degree.  Only exact zeros are trimmed
from the top so the degree never changes silently because of rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionViolation, RealityViolation
from .quaternion import ONE, ZERO, Quaternion, conj, inverse, mul, norm, similar

REALITY_TOL = 1e-10


def _trim(coeffs):
    end = len(coeffs)
    while end and not any(coeffs[end - 1]):
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class HPoly:
    """``a_n x^n + ... + a_1 x + a_0`` with quaternion coefficients on the left."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([Quaternion.coerce(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs) -> "HPoly":
        # coeffs are already Quaternions
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", _trim(coeffs))
        return p

    @classmethod
    def linear(cls, root) -> "HPoly":
        """``x - root``."""
        return cls((-Quaternion.coerce(root), ONE))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Quaternion:
        return self.coeffs[-1]

    def scale(self) -> float:
        """Largest coefficient norm (1.0 for the zero polynomial)."""
        return max((norm(c) for c in self.coeffs), default=1.0) or 1.0

    def eval_bound(self, q: Quaternion) -> float:
        """``sum |a_k| |q|^k``, an upper bound on ``|P(q)|`` used to scale tolerances."""
        r = norm(q)
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * r + norm(c)
        return total

    def __add__(self, other):
        return add(self, _as_hpoly(other))

    def __sub__(self, other):
        return add(self, -_as_hpoly(other))

    def __neg__(self):
        return HPoly._raw([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return HPoly._raw([c * other for c in self.coeffs])
        return star_mul(self, _as_hpoly(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        # quaternion constant on the left
        return star_mul(_as_hpoly(other), self)

    def __call__(self, q) -> Quaternion:
        return evaluate(self, Quaternion.coerce(q))

    def conj(self) -> "HPoly":
        return conj_poly(self)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if any(c):
                terms.append(f"({c})" + ("" if k == 0 else "x" if k == 1 else f"x^{k}"))
        return " + ".join(terms)


@dataclass(frozen=True)
class RealPoly:
    """Polynomial with real coefficients; it commutes with every HPoly."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[float] = ()):
        cs = [float(c) for c in coeffs]
        while cs and cs[-1] == 0.0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    def __mul__(self, other: "RealPoly") -> "RealPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RealPoly()
        out = [0.0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RealPoly(out)

    def __call__(self, q) -> Quaternion:
        # real coefficients commute with q, so plain Horner is valid on either side
        q = Quaternion.coerce(q)
        r = ZERO
        for c in reversed(self.coeffs):
            r = mul(r, q) + c
        return r

    def eval_bound(self, q: Quaternion) -> float:
        r = norm(q)
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * r + abs(c)
        return total

    def to_hpoly(self) -> HPoly:
        return HPoly(self.coeffs)


def _as_hpoly(value) -> HPoly:
    if isinstance(value, HPoly):
        return value
    if isinstance(value, RealPoly):
        return value.to_hpoly()
    return HPoly([value])


def add(p: HPoly, q: HPoly) -> HPoly:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return HPoly._raw(out)


def star_mul(p: HPoly, q: HPoly) -> HPoly:
    """Ring product: ``c_k = sum_j a_j b_{k-j}`` keeping the quaternion order."""
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return HPoly()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + mul(ai, bj)
    return HPoly._raw(out)


def conj_poly(p: HPoly) -> HPoly:
    return HPoly._raw([conj(c) for c in p.coeffs])


def evaluate(p: HPoly, q: Quaternion) -> Quaternion:
    """``a_n q^n + ... + a_0`` by the recurrence ``r <- r*q + a_k``."""
    r = ZERO
    for c in reversed(p.coeffs):
        r = mul(r, q) + c
    return r


def eval_left_product(left: HPoly, right: HPoly, q: Quaternion) -> Quaternion:
    """Value of ``(left * right)(q)`` without forming the product."""
    h = evaluate(right, q)
    if not any(h):
        return ZERO
    return mul(evaluate(left, similar(h, q)), h)


def char_poly(q: Quaternion) -> RealPoly:
    """``x^2 - 2 Re(q) x + |q|^2``, whose zero set is the congruence class of q."""
    n2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]
    return RealPoly((n2, -2.0 * q[0], 1.0))


def real_part(p: HPoly, tol: float = REALITY_TOL) -> RealPoly:
    """Project a polynomial that should be real; raise if it is not, relative to its scale."""
    scale = p.scale()
    worst = max((abs(c[1]) + abs(c[2]) + abs(c[3]) for c in p.coeffs), default=0.0)
    if worst > tol * scale:
        raise RealityViolation(f"imaginary residue {worst:.3e} exceeds {tol:g} x scale {scale:.3e}")
    return RealPoly(c[0] for c in p.coeffs)


def p_times_pbar(p: HPoly) -> RealPoly:
    return real_part(star_mul(p, conj_poly(p)))


def from_factors(terms: Sequence) -> HPoly:
    """``(x - t_n) * ... * (x - t_1)``; ``terms[0]`` is the rightmost factor."""
    if not terms:
        raise PreconditionViolation("need at least one factor term")
    p = HPoly._raw([ONE])
    for t in terms:
        p = star_mul(HPoly.linear(t), p)
    return p


def factor_terms_from_zeros(zeros: Sequence) -> list:
    """Factor terms ``y`` with ``(x - y_n) * ... * (x - y_1)`` vanishing at the given zeros.

    ``y_1 = zeros[0]`` and ``y_i = similar(R_i(zeta_i), zeta_i)`` with ``R_i`` the
    product of the factors already built.  Assumes the zeros lie in distinct
    congruence classes.
    """
    terms = []
    R = HPoly._raw([ONE])
    for zeta in zeros:
        zeta = Quaternion.coerce(zeta)
        h = evaluate(R, zeta)
        y = zeta if len(R.coeffs) == 1 else similar(h, zeta)
        terms.append(y)
        R = star_mul(HPoly.linear(y), R)
    return terms


def monicize(p: HPoly) -> HPoly:
    """Left-multiply by the inverse leading coefficient; the zero set is unchanged."""
    if p.is_zero():
        raise PreconditionViolation("cannot monicize the zero polynomial")
    lead = p.leading()
    if lead == ONE:
        return p
    a = inverse(lead)
    out = [mul(a, c) for c in p.coeffs[:-1]]
    out.append(ONE)
    return HPoly._raw(out)


def divide_by_real_quadratic(p: HPoly, c: RealPoly):
    """Return ``(quotient, remainder)`` with ``p = quotient * c + remainder``.

    ``c`` must be a monic real quadratic; because it is real, ordinary long
    division applies coefficient by coefficient.
    """
    if len(c.coeffs) != 3 or c.coeffs[2] != 1.0:
        raise PreconditionViolation("divisor must be a monic real quadratic")
    c0, c1 = c.coeffs[0], c.coeffs[1]
    rem = list(p.coeffs)
    n = len(rem) - 1
    if n < 2:
        return HPoly(), HPoly._raw(rem)
    quot = [ZERO] * (n - 1)
    for k in range(n, 1, -1):
        t = rem[k]
        quot[k - 2] = t
        rem[k] = ZERO
        rem[k - 1] = rem[k - 1] - t * c1
        rem[k - 2] = rem[k - 2] - t * c0
    return HPoly._raw(quot), HPoly._raw(rem[:2])


def divide_by_linear_right(p: HPoly, q: Quaternion):
    """Right division by ``x - q``: ``p = quotient * (x - q) + remainder``, remainder ``= p(q)``."""
    a = p.coeffs
    n = len(a) - 1
    if n < 1:
        return HPoly(), HPoly._raw(a)
    b = [ZERO] * n
    b[n - 1] = a[n]
    for k in range(n - 1, 0, -1):
        b[k - 1] = a[k] + mul(b[k], q)
    rem = a[0] + mul(b[0], q)
    return HPoly._raw(b), HPoly._raw([rem])
