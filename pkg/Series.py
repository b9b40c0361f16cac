from fractions import Fraction
from math import factorial

from Helpers import (
    InsufficientOrderError,
    NotDeltaError,
    NotInvertibleError,
    OrderUnderflowError,
)
from Kernel import Polynomial, falling_factorial


class FormalPowerSeries:
    """
    Power series in t known exactly through t^trunc_order.
    Binary operations keep the smaller of the two orders.
    """

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs, trunc_order=None):
        values = [Fraction(c) for c in coeffs]
        if trunc_order is None:
            trunc_order = len(values) - 1
        if trunc_order < 0:
            raise InsufficientOrderError("insufficient order: series needs trunc_order >= 0")
        values = values[: trunc_order + 1]
        values += [Fraction(0)] * (trunc_order + 1 - len(values))
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "trunc_order", trunc_order)

    def __setattr__(self, name, value):
        raise AttributeError("FormalPowerSeries is immutable")

    @classmethod
    def zero(cls, order: int):
        return cls((), order)

    @classmethod
    def one(cls, order: int):
        return cls((1,), order)

    @classmethod
    def constant(cls, value, order: int):
        return cls((value,), order)

    @classmethod
    def t(cls, order: int):
        return cls((0, 1), order)

    @classmethod
    def monomial(cls, k: int, order: int, value=1):
        return cls([0] * k + [value], order)

    @classmethod
    def from_function(cls, coefficient, order: int):
        """Series with coefficient(n) at t^n."""
        return cls([coefficient(n) for n in range(order + 1)], order)

    @classmethod
    def from_egf(cls, value, order: int):
        """Series sum value(n) t^n / n!."""
        return cls([Fraction(value(n)) / factorial(n) for n in range(order + 1)], order)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int):
        return cls(p.coeffs, order)

    @classmethod
    def exp_series(cls, order: int, a=1):
        """e^{a t}"""
        a = Fraction(a)
        return cls.from_egf(lambda n: a ** n, order)

    @classmethod
    def log1p_series(cls, order: int):
        """log(1 + t)"""
        return cls.from_function(lambda n: Fraction((-1) ** (n - 1), n) if n else 0, order)

    # ------------------------------------------------------------------ access

    def coefficient(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.trunc_order:
            raise InsufficientOrderError(
                f"insufficient order: coefficient {n} requested from a series of order {self.trunc_order}"
            )
        return self.coeffs[n]

    def egf_coefficient(self, n: int) -> Fraction:
        return self.coefficient(n) * factorial(n)

    def egf_coefficients(self):
        return [self.egf_coefficient(n) for n in range(self.trunc_order + 1)]

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def is_delta(self) -> bool:
        return self.trunc_order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    def truncate(self, order: int):
        if order > self.trunc_order:
            raise InsufficientOrderError(
                f"insufficient order: cannot extend order {self.trunc_order} to {order}"
            )
        return FormalPowerSeries(self.coeffs, order)

    def agrees_with(self, other) -> bool:
        """Equal on the common order."""
        n = min(self.trunc_order, other.trunc_order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __eq__(self, other):
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return self.trunc_order == other.trunc_order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.trunc_order))

    def __repr__(self):
        terms = " + ".join(f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c != 0) or "0"
        return f"FormalPowerSeries({terms} + O(t^{self.trunc_order + 1}))"

    # -------------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, FormalPowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return FormalPowerSeries.constant(other, self.trunc_order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.trunc_order, other.trunc_order)
        return FormalPowerSeries((self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return FormalPowerSeries((-c for c in self.coeffs), self.trunc_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FormalPowerSeries((c * other for c in self.coeffs), self.trunc_order)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = min(self.trunc_order, other.trunc_order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return FormalPowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotInvertibleError("Division of a series by zero")
            return self * (Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        vb = other.valuation()
        if vb is None:
            raise NotInvertibleError("Division by a series that vanishes to its order")
        va = self.valuation()
        if va is not None and vb > va:
            raise OrderUnderflowError(
                f"order underflow: numerator order {va} is below denominator order {vb}"
            )
        n = min(self.trunc_order, other.trunc_order) - vb
        if n < 0:
            raise OrderUnderflowError("order underflow: nothing left after the valuation shift")
        num = self.coeffs[vb:]
        den = other.coeffs[vb:]
        inv_lead = 1 / den[0]
        out = []
        for i in range(n + 1):
            acc = num[i]
            for j in range(1, i + 1):
                acc -= den[j] * out[i - j]
            out.append(acc * inv_lead)
        return FormalPowerSeries(out, n)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.coeffs[0] == 0:
            raise NotInvertibleError("Series with zero constant term has no multiplicative inverse")
        return FormalPowerSeries.one(self.trunc_order) / self

    def pow_int(self, e: int):
        if e < 0:
            return self.inverse().pow_int(-e)
        result = FormalPowerSeries.one(self.trunc_order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __pow__(self, e):
        if isinstance(e, int):
            return self.pow_int(e)
        return self.pow_rational(e)

    def scale(self, a):
        """f(a t)"""
        a = Fraction(a)
        return FormalPowerSeries((c * a ** i for i, c in enumerate(self.coeffs)), self.trunc_order)

    # ------------------------------------------------------------ calculus ops

    def derivative(self):
        if self.trunc_order == 0:
            raise InsufficientOrderError("insufficient order: derivative of an order-0 truncation")
        return FormalPowerSeries(
            (i * c for i, c in enumerate(self.coeffs) if i > 0), self.trunc_order - 1
        )

    def integral(self):
        return FormalPowerSeries(
            [0] + [c / (i + 1) for i, c in enumerate(self.coeffs)], self.trunc_order + 1
        )

    def compose(self, inner):
        """self(inner(t)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise NotDeltaError("inner not delta: composition needs a zero constant term")
        n = min(self.trunc_order, inner.trunc_order)
        inner = inner.truncate(n)
        result = FormalPowerSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    __call__ = compose

    def revert(self):
        """Compositional inverse by Newton iteration on f(g) = t."""
        if not self.is_delta():
            raise NotDeltaError("Reversion needs a delta series (zero constant, nonzero linear term)")
        n = self.trunc_order
        t = FormalPowerSeries.t(n)
        fprime = self.derivative()
        # f'(g) is only needed through order n - 2
        fprime = FormalPowerSeries(fprime.coeffs, n)
        g = t / self.coeffs[1]
        for _ in range(n + 1):
            step = (self.compose(g) - t) / fprime.compose(g)
            if step.valuation() is None:
                break
            g = g - step
        return g

    def exp(self):
        if self.coeffs[0] != 0:
            raise NotDeltaError("exp needs a series with zero constant term")
        n = self.trunc_order
        out = [Fraction(1)]
        for m in range(1, n + 1):
            acc = sum((k * self.coeffs[k] * out[m - k] for k in range(1, m + 1)), Fraction(0))
            out.append(acc / m)
        return FormalPowerSeries(out, n)

    def log(self):
        if self.coeffs[0] != 1:
            raise NotInvertibleError("log needs a series with constant term 1")
        n = self.trunc_order
        out = [Fraction(0)]
        for m in range(1, n + 1):
            acc = m * self.coeffs[m]
            for k in range(1, m):
                acc -= k * out[k] * self.coeffs[m - k]
            out.append(acc / m)
        return FormalPowerSeries(out, n)

    def pow_rational(self, e):
        if self.coeffs[0] != 1:
            raise NotInvertibleError("Rational powers need a series with constant term 1")
        return (self.log() * Fraction(e)).exp()


def sqrt_t_squared_plus_four(order: int) -> FormalPowerSeries:
    """sqrt(t^2 + 4), always as 2 (1 + t^2/4)^{1/2}."""
    inner = FormalPowerSeries((1, 0, Fraction(1, 4)), order)
    return inner.pow_rational(Fraction(1, 2)) * 2


def central_delta(order: int) -> FormalPowerSeries:
    """e^{t/2} - e^{-t/2}"""
    half = Fraction(1, 2)
    return FormalPowerSeries.from_egf(lambda n: half ** n * (1 - (-1) ** n), order)


def central_delta_inverse(order: int) -> FormalPowerSeries:
    """log(1 + (t/2)(t + sqrt(t^2 + 4))) = 2 log((t + sqrt(t^2 + 4)) / 2)"""
    t = FormalPowerSeries.t(order)
    return (1 + t * (t + sqrt_t_squared_plus_four(order)) / 2).log()


def scaled_central_delta(lam, order: int) -> FormalPowerSeries:
    """(e^{lam t/2} - e^{-lam t/2}) / lam, regular at lam = 0."""
    lam = Fraction(lam)

    def coefficient(n):
        if n % 2 == 0:
            return 0
        return 2 * lam ** (n - 1) / (2 ** n * factorial(n))

    return FormalPowerSeries.from_function(coefficient, order)


def scaled_central_delta_inverse(lam, order: int) -> FormalPowerSeries:
    """Compositional inverse of scaled_central_delta: c(lam t) / lam."""
    lam = Fraction(lam)
    base = central_delta_inverse(order)
    return FormalPowerSeries(
        (c * lam ** (i - 1) if i else 0 for i, c in enumerate(base.coeffs)), order
    )


def expm1_lambda(lam, order: int) -> FormalPowerSeries:
    """(e^{lam t} - 1) / lam"""
    lam = Fraction(lam)
    return FormalPowerSeries.from_egf(lambda n: lam ** (n - 1) if n else 0, order)


def log1p_lambda(lam, order: int) -> FormalPowerSeries:
    """(1/lam) log(1 + lam t)"""
    lam = Fraction(lam)
    return FormalPowerSeries.from_function(
        lambda n: (-lam) ** (n - 1) / n if n else 0, order
    )


def degenerate_exp(lam, order: int) -> FormalPowerSeries:
    """e_lam(t) = (1 + lam t)^{1/lam}"""
    lam = Fraction(lam)
    return FormalPowerSeries.from_egf(lambda n: falling_factorial(n, lam)(1), order)


def degenerate_log(lam, order: int) -> FormalPowerSeries:
    """log_lam(1 + t) = ((1 + t)^lam - 1) / lam"""
    lam = Fraction(lam)
    return FormalPowerSeries.from_egf(
        lambda n: falling_factorial(n - 1)(lam - 1) if n else 0, order
    )


class PolynomialSeries:
    """Power series in t whose coefficients are polynomials in x."""

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs, trunc_order=None):
        values = [c if isinstance(c, Polynomial) else Polynomial.constant(c) for c in coeffs]
        if trunc_order is None:
            trunc_order = len(values) - 1
        values = values[: trunc_order + 1]
        values += [Polynomial()] * (trunc_order + 1 - len(values))
        object.__setattr__(self, "coeffs", tuple(values))
        object.__setattr__(self, "trunc_order", trunc_order)

    def __setattr__(self, name, value):
        raise AttributeError("PolynomialSeries is immutable")

    @classmethod
    def from_series(cls, series: FormalPowerSeries, weight=None):
        """sum c_n weight(n) t^n; weight defaults to 1."""
        coeffs = []
        for n, c in enumerate(series.coeffs):
            term = Polynomial.constant(c)
            if weight is not None:
                term = weight(n) * c
            coeffs.append(term)
        return cls(coeffs, series.trunc_order)

    def coefficient(self, n: int) -> Polynomial:
        if n > self.trunc_order:
            raise InsufficientOrderError(
                f"insufficient order: coefficient {n} requested from a series of order {self.trunc_order}"
            )
        return self.coeffs[n]

    def egf_coefficient(self, n: int) -> Polynomial:
        return self.coefficient(n) * factorial(n)

    def __add__(self, other):
        n = min(self.trunc_order, other.trunc_order)
        return PolynomialSeries((self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n)

    def __sub__(self, other):
        n = min(self.trunc_order, other.trunc_order)
        return PolynomialSeries((self.coeffs[i] - other.coeffs[i] for i in range(n + 1)), n)

    def __mul__(self, other):
        if isinstance(other, FormalPowerSeries):
            other = PolynomialSeries.from_series(other)
        if isinstance(other, (int, Fraction, Polynomial)):
            return PolynomialSeries((c * other for c in self.coeffs), self.trunc_order)
        n = min(self.trunc_order, other.trunc_order)
        out = [Polynomial()] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return PolynomialSeries(out, n)

    __rmul__ = __mul__

    def geometric(self):
        """1 / (1 - self) for a series with zero constant term."""
        if not self.coeffs[0].is_zero():
            raise NotDeltaError("inner not delta: geometric series needs a zero constant term")
        n = self.trunc_order
        result = PolynomialSeries((Polynomial.constant(1),), n)
        power = result
        for _ in range(n):
            power = power * self
            result = result + power
        return result
