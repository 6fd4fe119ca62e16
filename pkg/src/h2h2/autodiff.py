"""Forward-mode automatic differentiation scalars.

``Dual`` carries a value plus a gradient with respect to a fixed set of seed
variables; ``HyperDual`` additionally carries the full symmetric Hessian.
Evaluating a chart on ``hyperdual_variables(u)`` therefore produces exact
first and second derivatives in a single pass, with no truncation error.

Plain floats pass through every function here unchanged, so chart code can be
written once and evaluated at scalar, dual, or hyper-dual arguments.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

Scalar = Union[int, float, "Dual", "HyperDual"]

_NUMBER = (int, float, np.integer, np.floating)


class Dual:
    """First-order forward-mode scalar: value plus gradient vector."""

    __slots__ = ("val", "d")

    def __init__(self, val: float, d):
        self.val = float(val)
        self.d = np.asarray(d, dtype=float)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.d!r})"

    def __neg__(self):
        return Dual(-self.val, -self.d)

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.d + other.d)
        if isinstance(other, _NUMBER):
            return Dual(self.val + other, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.d - other.d)
        if isinstance(other, _NUMBER):
            return Dual(self.val - other, self.d)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _NUMBER):
            return Dual(other - self.val, -self.d)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val, self.val * other.d + other.val * self.d)
        if isinstance(other, _NUMBER):
            return Dual(self.val * other, self.d * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return self * other._reciprocal()
        if isinstance(other, _NUMBER):
            return Dual(self.val / other, self.d / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMBER):
            return self._reciprocal() * other
        return NotImplemented

    def _reciprocal(self):
        iv = 1.0 / self.val
        return Dual(iv, -iv * iv * self.d)

    def __pow__(self, n):
        if not isinstance(n, _NUMBER):
            return NotImplemented
        f = self.val ** n
        return Dual(f, n * self.val ** (n - 1) * self.d)


class HyperDual:
    """Second-order forward-mode scalar: value, gradient, and Hessian."""

    __slots__ = ("val", "d", "dd")

    def __init__(self, val: float, d, dd):
        self.val = float(val)
        self.d = np.asarray(d, dtype=float)
        self.dd = np.asarray(dd, dtype=float)

    def __repr__(self):
        return f"HyperDual({self.val!r}, {self.d!r}, {self.dd!r})"

    def __neg__(self):
        return HyperDual(-self.val, -self.d, -self.dd)

    def __add__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.val + other.val, self.d + other.d, self.dd + other.dd)
        if isinstance(other, _NUMBER):
            return HyperDual(self.val + other, self.d, self.dd)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HyperDual):
            return HyperDual(self.val - other.val, self.d - other.d, self.dd - other.dd)
        if isinstance(other, _NUMBER):
            return HyperDual(self.val - other, self.d, self.dd)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _NUMBER):
            return HyperDual(other - self.val, -self.d, -self.dd)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HyperDual):
            cross = np.outer(self.d, other.d)
            return HyperDual(
                self.val * other.val,
                self.val * other.d + other.val * self.d,
                self.val * other.dd + other.val * self.dd + cross + cross.T,
            )
        if isinstance(other, _NUMBER):
            return HyperDual(self.val * other, self.d * other, self.dd * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HyperDual):
            return self * other._reciprocal()
        if isinstance(other, _NUMBER):
            return HyperDual(self.val / other, self.d / other, self.dd / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMBER):
            return self._reciprocal() * other
        return NotImplemented

    def _reciprocal(self):
        v = self.val
        return _lift(self, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))

    def __pow__(self, n):
        if not isinstance(n, _NUMBER):
            return NotImplemented
        v = self.val
        return _lift(self, v ** n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))


def _lift(x: HyperDual, f: float, fp: float, fpp: float) -> HyperDual:
    return HyperDual(f, fp * x.d, fpp * np.outer(x.d, x.d) + fp * x.dd)


def value(x: Scalar) -> float:
    """Plain float value of a scalar of any differentiation order."""
    if isinstance(x, (Dual, HyperDual)):
        return x.val
    return float(x)


def compose_jet(f0: float, f1: float, f2: float, x: Scalar) -> Scalar:
    """Chain rule through a scalar argument for a function known by its jet.

    Given f(x0)=f0, f'(x0)=f1, f''(x0)=f2 at x0=value(x), returns f(x) in the
    same differentiation order as x.  Used to push chart coordinates through
    quantities (such as integrated curves) whose derivatives are known from
    structure rather than from elementary arithmetic.
    """
    if isinstance(x, HyperDual):
        return HyperDual(f0, f1 * x.d, f2 * np.outer(x.d, x.d) + f1 * x.dd)
    if isinstance(x, Dual):
        return Dual(f0, f1 * x.d)
    return f0


def _unary(x: Scalar, f: float, fp: float, fpp: float) -> Scalar:
    if isinstance(x, HyperDual):
        return _lift(x, f, fp, fpp)
    if isinstance(x, Dual):
        return Dual(f, fp * x.d)
    return f


def sqrt(x: Scalar) -> Scalar:
    v = value(x)
    s = math.sqrt(v)
    return _unary(x, s, 0.5 / s, -0.25 / (s * v))


def exp(x: Scalar) -> Scalar:
    e = math.exp(value(x))
    return _unary(x, e, e, e)


def log(x: Scalar) -> Scalar:
    v = value(x)
    return _unary(x, math.log(v), 1.0 / v, -1.0 / (v * v))


def sin(x: Scalar) -> Scalar:
    v = value(x)
    s, c = math.sin(v), math.cos(v)
    return _unary(x, s, c, -s)


def cos(x: Scalar) -> Scalar:
    v = value(x)
    s, c = math.sin(v), math.cos(v)
    return _unary(x, c, -s, -c)


def sinh(x: Scalar) -> Scalar:
    v = value(x)
    s, c = math.sinh(v), math.cosh(v)
    return _unary(x, s, c, s)


def cosh(x: Scalar) -> Scalar:
    v = value(x)
    s, c = math.sinh(v), math.cosh(v)
    return _unary(x, c, s, c)


def tanh(x: Scalar) -> Scalar:
    t = math.tanh(value(x))
    sech2 = 1.0 - t * t
    return _unary(x, t, sech2, -2.0 * t * sech2)


def dual_variables(u: Sequence[float]) -> list[Dual]:
    """Seed one Dual per coordinate, gradients set to the standard basis."""
    n = len(u)
    eye = np.eye(n)
    return [Dual(u[i], eye[i]) for i in range(n)]


def hyperdual_variables(u: Sequence[float]) -> list[HyperDual]:
    """Seed one HyperDual per coordinate; Hessians start at zero."""
    n = len(u)
    eye = np.eye(n)
    z = np.zeros((n, n))
    return [HyperDual(u[i], eye[i], z) for i in range(n)]
