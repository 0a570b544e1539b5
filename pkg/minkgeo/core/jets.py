"""Truncated Taylor arithmetic (jets) in one and two variables.

A jet stores normalized Taylor coefficients of a function around a point.
Coefficient arrays carry the degree axes first and the value shape last, so a
scalar jet can multiply a vector jet and numpy broadcasting applies to the
trailing axes. Coefficients may be real or complex.
"""

from __future__ import annotations

import math
from typing import Any, Callable, List, Sequence, Tuple, Union

import numpy as np

Scalar = Union[int, float, complex, np.number]


class _Taylor:
    """Arithmetic shared by univariate and bivariate truncated expansions."""

    __slots__ = ("coeffs",)
    __array_ufunc__ = None

    _lead = 1

    def __init__(self, coeffs: Any) -> None:
        self.coeffs = np.asarray(coeffs)
        if self.coeffs.dtype.kind not in "fc":
            self.coeffs = self.coeffs.astype(float)

    # ---------- structure ----------
    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.coeffs.shape[self._lead:]

    @property
    def value(self) -> Any:
        return self.coeffs[(0,) * self._lead]

    def __getitem__(self, index: Any) -> "_Taylor":
        return type(self)(self.coeffs[(slice(None),) * self._lead + (index,)])

    def __float__(self) -> float:
        return float(np.real(self.value))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, value={self.value!r})"

    def _constant(self, value: Any) -> np.ndarray:
        value = np.asarray(value)
        dtype = np.result_type(value, self.coeffs, float)
        out = np.zeros((self.order + 1,) * self._lead + value.shape, dtype=dtype)
        out[(0,) * self._lead] = value
        return out

    def _coeffs_of(self, other: Any) -> np.ndarray:
        if isinstance(other, type(self)):
            if other.order != self.order:
                raise ValueError(
                    f"jet orders differ: {self.order} and {other.order}"
                )
            return other.coeffs
        if isinstance(other, _Taylor):
            return NotImplemented
        arr = np.asarray(other)
        if arr.dtype == object:
            return NotImplemented
        return self._constant(arr)

    def _aligned(self, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        lead = self._lead
        nd = max(a.ndim, b.ndim) - lead

        def pad(x: np.ndarray) -> np.ndarray:
            extra = nd - (x.ndim - lead)
            return x.reshape(x.shape[:lead] + (1,) * extra + x.shape[lead:])

        return pad(a), pad(b)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # ---------- arithmetic ----------
    def __add__(self, other: Any) -> "_Taylor":
        b = self._coeffs_of(other)
        if b is NotImplemented:
            return NotImplemented
        a, b = self._aligned(self.coeffs, b)
        return type(self)(a + b)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "_Taylor":
        b = self._coeffs_of(other)
        if b is NotImplemented:
            return NotImplemented
        a, b = self._aligned(self.coeffs, b)
        return type(self)(a - b)

    def __rsub__(self, other: Any) -> "_Taylor":
        return (-self).__add__(other)

    def __neg__(self) -> "_Taylor":
        return type(self)(-self.coeffs)

    def __pos__(self) -> "_Taylor":
        return self

    def __mul__(self, other: Any) -> "_Taylor":
        if not isinstance(other, _Taylor):
            arr = np.asarray(other)
            if arr.dtype != object and arr.ndim == 0:
                return type(self)(self.coeffs * arr)
        b = self._coeffs_of(other)
        if b is NotImplemented:
            return NotImplemented
        return type(self)(self._mul(self.coeffs, b))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "_Taylor":
        if isinstance(other, _Taylor):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other))

    def __rtruediv__(self, other: Any) -> "_Taylor":
        return self.reciprocal() * other

    def __pow__(self, power: Any) -> "_Taylor":
        if isinstance(power, _Taylor):
            return (power * self.log()).exp()
        if isinstance(power, (int, np.integer)):
            if power == 0:
                return type(self)(self._constant(np.ones_like(self.value)))
            if power < 0:
                return (self ** (-power)).reciprocal()
            result = self
            for _ in range(int(power) - 1):
                result = result * self
            return result
        p = float(power)
        a0 = self.value
        derivs = []
        falling = 1.0
        for k in range(self.order + 1):
            derivs.append(falling * np.power(a0, p - k))
            falling *= p - k
        return self._series(derivs)

    def __rpow__(self, base: Any) -> "_Taylor":
        return (self * np.log(base)).exp()

    # ---------- composition ----------
    def _delta(self) -> "_Taylor":
        c = self.coeffs.copy()
        c[(0,) * self._lead] = 0
        return type(self)(c)

    def _series(self, derivs: Sequence[Any]) -> "_Taylor":
        """Compose with a function given by its derivatives at the value."""
        delta = self._delta()
        out = type(self)(self._constant(derivs[0]))
        power = None
        for k in range(1, self.order + 1):
            power = delta if power is None else power * delta
            out = out + power * (np.asarray(derivs[k]) / math.factorial(k))
        return out

    def compose(self, series: Any) -> "_Taylor":
        """Evaluate the Taylor series ``series`` (coefficients around ``self.value``)."""
        series = np.asarray(series)
        delta = self._delta()
        out = type(self)(self._constant(series[0]))
        power = None
        for k in range(1, min(len(series), self.order + 1)):
            power = delta if power is None else power * delta
            out = out + type(self)(np.multiply.outer(power.coeffs, series[k]))
        return out

    def truncate(self, order: int) -> "_Taylor":
        """The same expansion cut down to a lower order."""
        return type(self)(self.coeffs[(slice(order + 1),) * self._lead])

    def contract(self, weights: Any) -> "_Taylor":
        """Weighted sum over the last value axis."""
        return type(self)(self.coeffs @ np.asarray(weights))

    # ---------- elementary functions ----------
    def reciprocal(self) -> "_Taylor":
        a0 = self.value
        derivs = [
            (-1) ** k * math.factorial(k) / np.power(a0, k + 1)
            for k in range(self.order + 1)
        ]
        return self._series(derivs)

    def exp(self) -> "_Taylor":
        e = np.exp(self.value)
        return self._series([e] * (self.order + 1))

    def log(self) -> "_Taylor":
        a0 = self.value
        derivs: List[Any] = [np.log(a0)]
        for k in range(1, self.order + 1):
            derivs.append((-1) ** (k - 1) * math.factorial(k - 1) / np.power(a0, k))
        return self._series(derivs)

    def sqrt(self) -> "_Taylor":
        return self ** 0.5

    def _cyclic(self, cycle: Sequence[Any]) -> "_Taylor":
        return self._series([cycle[k % len(cycle)] for k in range(self.order + 1)])

    def sin(self) -> "_Taylor":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._cyclic([s, c, -s, -c])

    def cos(self) -> "_Taylor":
        s, c = np.sin(self.value), np.cos(self.value)
        return self._cyclic([c, -s, -c, s])

    def sinh(self) -> "_Taylor":
        s, c = np.sinh(self.value), np.cosh(self.value)
        return self._cyclic([s, c])

    def cosh(self) -> "_Taylor":
        s, c = np.sinh(self.value), np.cosh(self.value)
        return self._cyclic([c, s])

    def tanh(self) -> "_Taylor":
        return self.sinh() / self.cosh()

    def conjugate(self) -> "_Taylor":
        return type(self)(np.conj(self.coeffs))

    @property
    def real(self) -> "_Taylor":
        return type(self)(np.real(self.coeffs))

    @property
    def imag(self) -> "_Taylor":
        return type(self)(np.imag(self.coeffs))


class Jet(_Taylor):
    """Univariate jet: ``coeffs[k]`` is the k-th normalized Taylor coefficient."""

    __slots__ = ()
    _lead = 1

    @classmethod
    def variable(cls, t0: Scalar, order: int) -> "Jet":
        c = np.zeros(order + 1, dtype=np.result_type(t0, float))
        c[0] = t0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: Any, order: int) -> "Jet":
        value = np.asarray(value)
        c = np.zeros((order + 1,) + value.shape, dtype=np.result_type(value, float))
        c[0] = value
        return cls(c)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        order = a.shape[0] - 1
        shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
        out = np.zeros((order + 1,) + shape, dtype=np.result_type(a, b))
        for k in range(order + 1):
            for i in range(k + 1):
                out[k] = out[k] + a[i] * b[k - i]
        return out

    def derivative(self, k: int) -> Any:
        """The k-th derivative at the expansion point."""
        return self.coeffs[k] * math.factorial(k)

    def derivatives(self) -> np.ndarray:
        factorials = np.array([math.factorial(k) for k in range(self.order + 1)])
        return self.coeffs * factorials.reshape((-1,) + (1,) * len(self.shape))

    def differentiate(self) -> "Jet":
        """Jet of the derivative, one order lower."""
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * len(self.shape))
        return Jet(self.coeffs[1:] * k)

    def antiderivative(self, integrand: "Jet", constant: Any) -> "Jet":
        """Jet of F(self) where F' has jet ``integrand`` and F(self.value) = constant.

        ``self`` must be a coordinate variable (unit linear part, no higher terms).
        """
        if self.order >= 1 and (
            not np.isclose(self.coeffs[1], 1.0) or np.any(self.coeffs[2:] != 0)
        ):
            raise ValueError("antiderivative needs a coordinate variable jet")
        out = np.zeros(
            integrand.coeffs.shape, dtype=np.result_type(integrand.coeffs, constant)
        )
        out[0] = constant
        for k in range(self.order):
            out[k + 1] = integrand.coeffs[k] / (k + 1)
        return Jet(out)


class Jet2(_Taylor):
    """Bivariate jet truncated at total degree ``order``.

    ``coeffs[i, j]`` multiplies du**i dv**j; entries with i + j > order stay zero.
    """

    __slots__ = ()
    _lead = 2

    @classmethod
    def variables(cls, u0: Scalar, v0: Scalar, order: int = 2) -> Tuple["Jet2", "Jet2"]:
        dtype = np.result_type(u0, v0, float)
        cu = np.zeros((order + 1, order + 1), dtype=dtype)
        cv = np.zeros((order + 1, order + 1), dtype=dtype)
        cu[0, 0], cv[0, 0] = u0, v0
        if order >= 1:
            cu[1, 0] = 1.0
            cv[0, 1] = 1.0
        return cls(cu), cls(cv)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        order = a.shape[0] - 1
        shape = np.broadcast_shapes(a.shape[2:], b.shape[2:])
        out = np.zeros((order + 1, order + 1) + shape, dtype=np.result_type(a, b))
        for i in range(order + 1):
            for j in range(order + 1 - i):
                acc = out[i, j]
                for p in range(i + 1):
                    for q in range(j + 1):
                        acc = acc + a[p, q] * b[i - p, j - q]
                out[i, j] = acc
        return out

    def partial(self, i: int, j: int) -> Any:
        """The mixed partial d^(i+j)/du^i dv^j at the expansion point."""
        return self.coeffs[i, j] * math.factorial(i) * math.factorial(j)

    def d_du(self) -> "Jet2":
        order = self.order
        out = np.zeros((order, order) + self.shape, dtype=self.coeffs.dtype)
        for i in range(order):
            for j in range(order - i):
                out[i, j] = (i + 1) * self.coeffs[i + 1, j]
        return Jet2(out)

    def d_dv(self) -> "Jet2":
        order = self.order
        out = np.zeros((order, order) + self.shape, dtype=self.coeffs.dtype)
        for i in range(order):
            for j in range(order - i):
                out[i, j] = (j + 1) * self.coeffs[i, j + 1]
        return Jet2(out)

    def antiderivative(self, integrand: "Jet2", constant: Any) -> "Jet2":
        """Jet of F(self) for a coordinate variable ``self`` (u or v)."""
        c = self.coeffs
        if self.order >= 1 and np.isclose(c[1, 0], 1.0) and c[0, 1] == 0:
            axis = 0
        elif self.order >= 1 and np.isclose(c[0, 1], 1.0) and c[1, 0] == 0:
            axis = 1
        else:
            raise ValueError("antiderivative needs a coordinate variable jet")
        order = self.order
        out = np.zeros(
            integrand.coeffs.shape, dtype=np.result_type(integrand.coeffs, constant)
        )
        out[0, 0] = constant
        for k in range(order):
            if axis == 0:
                out[k + 1, 0] = integrand.coeffs[k, 0] / (k + 1)
            else:
                out[0, k + 1] = integrand.coeffs[0, k] / (k + 1)
        return Jet2(out)


def is_jet(x: Any) -> bool:
    return isinstance(x, _Taylor)


def _lift(name: str, fallback: Callable[[Any], Any]) -> Callable[[Any], Any]:
    def fn(x: Any) -> Any:
        method = getattr(x, name, None)
        if method is not None and not isinstance(x, (np.ndarray, np.generic)):
            return method()
        return fallback(x)

    fn.__name__ = name
    fn.__doc__ = f"{name} of a number, array, jet or split-complex value."
    return fn


sin = _lift("sin", np.sin)
cos = _lift("cos", np.cos)
sinh = _lift("sinh", np.sinh)
cosh = _lift("cosh", np.cosh)
tanh = _lift("tanh", np.tanh)
exp = _lift("exp", np.exp)
log = _lift("log", np.log)
sqrt = _lift("sqrt", np.sqrt)


def vector(*components: Any) -> Any:
    """Stack scalar components into a vector value (jet if any component is one)."""
    template = next((c for c in components if isinstance(c, _Taylor)), None)
    if template is None:
        arrays = np.broadcast_arrays(*[np.asarray(c) for c in components])
        return np.stack(arrays, axis=-1).astype(np.result_type(*arrays, float))
    cls = type(template)
    parts = []
    for c in components:
        if isinstance(c, _Taylor):
            parts.append(c.coeffs)
        else:
            parts.append(template._constant(c))
    dtype = np.result_type(*parts)
    return cls(np.stack([p.astype(dtype) for p in parts], axis=-1))


def value_of(x: Any) -> Any:
    """Plain value of a jet, or the input itself."""
    return x.value if isinstance(x, _Taylor) else x
