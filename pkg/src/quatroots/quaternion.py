"""Floating-point quaternion algebra.

Components are ordered ``(w, x, y, z)`` on the basis ``(1, i, j, k)`` with
``i*i = j*j = k*k = -1`` and ``i*j = -j*i = k``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import ZeroDivision

INVERSE_FLOOR = 1e-300


class _Components(NamedTuple):
    w: float
    x: float
    y: float
    z: float


class Quaternion(_Components):
    """Immutable quaternion value. Operators implement the Hamilton algebra."""

    __slots__ = ()

    def __new__(cls, w=0.0, x=0.0, y=0.0, z=0.0):
        w, x, y, z = float(w), float(x), float(y), float(z)
        if not (math.isfinite(w) and math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError(f"non-finite quaternion component in {(w, x, y, z)}")
        return tuple.__new__(cls, (w, x, y, z))

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Accept a Quaternion, a real number, a complex number or a 4-sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float)):
            return cls(value)
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        w, x, y, z = value
        return cls(w, x, y, z)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Quaternion):
            other = Quaternion.coerce(other)
        return Quaternion(self[0] + other[0], self[1] + other[1],
                          self[2] + other[2], self[3] + other[3])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Quaternion):
            other = Quaternion.coerce(other)
        return Quaternion(self[0] - other[0], self[1] - other[1],
                          self[2] - other[2], self[3] - other[3])

    def __rsub__(self, other):
        return Quaternion.coerce(other) - self

    def __neg__(self):
        return Quaternion(-self[0], -self[1], -self[2], -self[3])

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self[0] * other, self[1] * other, self[2] * other, self[3] * other)
        return mul(self, Quaternion.coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return mul(Quaternion.coerce(other), self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self[0] / other, self[1] / other, self[2] / other, self[3] / other)
        raise TypeError("quaternion division is ambiguous; use inverse() on the side you mean")

    def __abs__(self):
        return norm(self)

    def __repr__(self):
        return f"Quaternion({self[0]!r}, {self[1]!r}, {self[2]!r}, {self[3]!r})"

    def __str__(self):
        return f"{self[0]:+.6g}{self[1]:+.6g}i{self[2]:+.6g}j{self[3]:+.6g}k"

    # parts ----------------------------------------------------------------

    @property
    def real(self) -> float:
        return self[0]

    @property
    def vector(self) -> "Quaternion":
        return Quaternion(0.0, self[1], self[2], self[3])

    def vector_norm(self) -> float:
        return math.hypot(self[1], self[2], self[3])

    def is_real(self, tol: float = 0.0) -> bool:
        return self.vector_norm() <= tol

    def conj(self) -> "Quaternion":
        return conj(self)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def norm(self) -> float:
        return norm(self)


ZERO = Quaternion(0.0)
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class ClassKey(NamedTuple):
    """``(Re q, |q|)``; equal keys mean congruent quaternions."""

    re: float
    norm: float

    def distance(self, other: "ClassKey") -> float:
        return math.hypot(self.re - other.re, self.norm - other.norm)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a*b``."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return Quaternion(
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q[0], -q[1], -q[2], -q[3])


def norm(q: Quaternion) -> float:
    # hypot avoids underflow and overflow in the squares
    return math.hypot(q[0], q[1], q[2], q[3])


def inverse(q: Quaternion) -> Quaternion:
    """``conj(q) / |q|**2``; raises :class:`ZeroDivision` below the inverse floor."""
    n = norm(q)
    if n < INVERSE_FLOOR:
        raise ZeroDivision(f"cannot invert quaternion of norm {n!r}")
    if not 1e-140 < n < 1e140:
        # |q|**2 would underflow or overflow: divide by n twice instead
        return Quaternion(q[0] / n / n, -q[1] / n / n, -q[2] / n / n, -q[3] / n / n)
    n2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]
    return Quaternion(q[0] / n2, -q[1] / n2, -q[2] / n2, -q[3] / n2)


def similar(h: Quaternion, q: Quaternion) -> Quaternion:
    """Similarity transform ``h q h^-1``."""
    return mul(mul(h, q), inverse(h))


def class_key(q: Quaternion) -> ClassKey:
    return ClassKey(q[0], norm(q))


def same_class(a: Quaternion, b: Quaternion, tol: float) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return abs(a[0] - b[0]) <= tol and abs(norm(a) - norm(b)) <= tol
