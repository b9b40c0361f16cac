import re
import random
from fractions import Fraction


class UmbralError(ValueError):
    """Base class for every error raised by the library."""


class OrderUnderflowError(UmbralError):
    pass


class NotDeltaError(UmbralError):
    pass


class NotInvertibleError(UmbralError):
    pass


class InsufficientOrderError(UmbralError):
    pass


class IndexRangeError(UmbralError):
    pass


class ParameterError(UmbralError):
    pass


class NoShefferPairError(UmbralError):
    pass


class NotAssociatedError(UmbralError):
    pass


class OracleLimitError(UmbralError):
    pass


class FrobeniusHypothesisError(UmbralError):
    pass


class SymmetryPreconditionError(UmbralError):
    pass


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def is_valid_rational(text: str) -> bool:
    if text is None or len(text) > 255:
        return False
    match = _RATIONAL_RE.match(text)
    return bool(match) and (match.group(2) is None or int(match.group(2)) != 0)


def parse_rational(text) -> Fraction:
    """
    Parse "p/q" (or a bare integer "p") into an exact Fraction.
    Floats are refused: "0.5" is not accepted, write "1/2".
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not is_valid_rational(text):
        raise ParameterError(f"Invalid rational '{text}', expected p/q")
    match = _RATIONAL_RE.match(text)
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    return Fraction(num, den)


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_rational_vector(rng: random.Random, length: int, bound: int = 9):
    return [random_rational(rng, bound) for _ in range(length)]


def random_nonzero_rational(rng: random.Random, bound: int = 9) -> Fraction:
    value = Fraction(0)
    while value == 0:
        value = random_rational(rng, bound)
    return value
