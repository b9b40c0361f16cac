from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from Helpers import IndexRangeError, NotInvertibleError

ExactRational = Fraction

NEG_INF = float("-inf")


class Polynomial:
    """
    Dense univariate polynomial over the rationals, little-endian.
    The zero polynomial has no coefficients and degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def monomial(cls, n: int, value=1):
        if n < 0:
            raise IndexRangeError(f"Negative monomial degree {n}")
        return cls([0] * n + [value])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coefficient(i) + other.coefficient(i) for i in range(size))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

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
            return Polynomial(c * other for c in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if scalar == 0:
            raise NotInvertibleError("Division of a polynomial by zero")
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise IndexRangeError(f"Polynomial power needs a nonnegative integer, got {exponent}")
        result = Polynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, value):
        # Horner; a Polynomial argument means composition
        if isinstance(value, Polynomial):
            result = Polynomial()
            for c in reversed(self.coeffs):
                result = result * value + c
            return result
        value = Fraction(value)
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def derivative(self):
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def derivative_k(self, k: int):
        p = self
        for _ in range(k):
            if p.is_zero():
                break
            p = p.derivative()
        return p

    def shift(self, a):
        """p(x + a)"""
        return self(X + Fraction(a))

    def dilate(self, a):
        """p(a x)"""
        a = Fraction(a)
        return Polynomial(c * a ** i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


X = Polynomial((0, 1))


def poly_eval(p: Polynomial, value) -> Fraction:
    return p(value)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _factorial_type(n: int, step: Fraction) -> Polynomial:
    if n < 0:
        raise IndexRangeError(f"Factorial degree must be nonnegative, got {n}")
    result = Polynomial.constant(1)
    for i in range(n):
        result = result * Polynomial((-i * step, 1))
    return result


@lru_cache(maxsize=1024)
def falling_factorial(n: int, lam=Fraction(1)) -> Polynomial:
    """(x)_{n,lam} = x(x - lam)...(x - (n-1)lam)"""
    return _factorial_type(n, Fraction(lam))


@lru_cache(maxsize=1024)
def rising_factorial(n: int, lam=Fraction(1)) -> Polynomial:
    """<x>_{n,lam} = x(x + lam)...(x + (n-1)lam)"""
    return _factorial_type(n, -Fraction(lam))


@lru_cache(maxsize=1024)
def central_factorial(n: int, lam=Fraction(1)) -> Polynomial:
    """x^{[n,lam]} = x (x + (n/2 - 1)lam)_{n-1,lam}"""
    if n < 0:
        raise IndexRangeError(f"Factorial degree must be nonnegative, got {n}")
    if n == 0:
        return Polynomial.constant(1)
    lam = Fraction(lam)
    shift = (Fraction(n, 2) - 1) * lam
    return X * falling_factorial(n - 1, lam)(X + shift)


def poly_binomial(arg: Polynomial, n: int) -> Polynomial:
    """C(arg, n) as a polynomial in x, for a polynomial argument."""
    return falling_factorial(n)(arg) / factorial(n)


def expand_in_basis(p: Polynomial, basis):
    """
    Coefficients c_k with p = sum c_k basis[k], where deg basis[k] = k.
    Top-down triangular solve over the rationals.
    """
    if p.degree >= len(basis):
        raise IndexRangeError(f"Degree {p.degree} exceeds basis size {len(basis)}")
    coeffs = [Fraction(0)] * len(basis)
    remainder = p
    for k in range(len(basis) - 1, -1, -1):
        b = basis[k]
        if b.degree != k:
            raise NotInvertibleError(f"Basis element {k} has degree {b.degree}")
        c = remainder.coefficient(k) / b.leading
        if c:
            coeffs[k] = c
            remainder = remainder - b * c
    return coeffs


def conversion_triangle(source, target, max_n: int):
    """Rows n = 0..max_n of source(n) expanded in target(0..n)."""
    basis = [target(k) for k in range(max_n + 1)]
    return [expand_in_basis(source(n), basis[: n + 1]) for n in range(max_n + 1)]
