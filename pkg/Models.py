from fractions import Fraction
from threading import Lock
from typing import TYPE_CHECKING, Callable, Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from Helpers import IndexRangeError, format_rational
from Kernel import Polynomial

if TYPE_CHECKING:
    from Umbral import ShefferPair


def format_value(value) -> str:
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    return str(value)


class Failure(BaseModel):
    n: int
    k: Optional[int] = None
    expected: str
    got: str


class Check(BaseModel):
    identity_id: str
    n_range: Tuple[int, int]
    status: Literal["pass", "fail", "skipped"]
    reason: Optional[str] = None
    first_failure: Optional[Failure] = None

    @classmethod
    def compare(cls, identity_id: str, n_range, comparisons: Iterable) -> "Check":
        """
        Consume (n, k, expected, got) tuples; the first mismatch makes
        the check fail and stops the iteration.
        """
        for n, k, expected, got in comparisons:
            if expected != got:
                failure = Failure(n=n, k=k, expected=format_value(expected), got=format_value(got))
                return cls(identity_id=identity_id, n_range=tuple(n_range), status="fail",
                           first_failure=failure)
        return cls(identity_id=identity_id, n_range=tuple(n_range), status="pass")

    @classmethod
    def skipped(cls, identity_id: str, n_range, reason: str) -> "Check":
        return cls(identity_id=identity_id, n_range=tuple(n_range), status="skipped", reason=reason)

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class Report(BaseModel):
    suite: str
    family: str
    checks: List[Check] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(check.failed for check in self.checks)

    def failures(self) -> List[Check]:
        return [check for check in self.checks if check.failed]

    def to_dict(self) -> dict:
        data = self.model_dump()
        data["passed"] = self.passed
        return data


def _freeze_params(params) -> Tuple[Tuple[str, Fraction], ...]:
    if not params:
        return ()
    items = params.items() if isinstance(params, dict) else params
    return tuple(sorted((str(name), Fraction(value)) for name, value in items))


class Triangle:
    """Immutable lower-triangular table of rationals, rows 0..max_n."""

    def __init__(self, name: str, rows, params=None):
        self.name = name
        self.params = _freeze_params(params)
        self.rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        for n, row in enumerate(self.rows):
            if len(row) != n + 1:
                raise IndexRangeError(f"Row {n} of {name} has {len(row)} entries, expected {n + 1}")

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def entry(self, n: int, k: int) -> Fraction:
        if n < 0 or n > self.max_n or k < 0 or k > n:
            raise IndexRangeError(f"({n}, {k}) is outside triangle {self.name} of size {self.max_n}")
        return self.rows[n][k]

    def get(self, n: int, k: int) -> Fraction:
        """Entry with the convention that anything off the triangle is 0."""
        if 0 <= n <= self.max_n and 0 <= k <= n:
            return self.rows[n][k]
        return Fraction(0)

    def items(self):
        for n, row in enumerate(self.rows):
            for k, value in enumerate(row):
                yield n, k, value

    def param_dict(self) -> Dict[str, str]:
        return {name: format_rational(value) for name, value in self.params}

    def __eq__(self, other):
        if not isinstance(other, Triangle):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Triangle({self.name}, max_n={self.max_n})"


class AssociatedTriangle(Triangle):
    def __init__(self, family_id: str, kind: Literal["first", "second"], rows, params=None):
        super().__init__(f"S{1 if kind == 'first' else 2}({family_id})", rows, params)
        self.family_id = family_id
        self.kind = kind


class EulerianTable(Triangle):
    def __init__(self, family_id: str, rows, params=None):
        super().__init__(f"A({family_id})", rows, params)
        self.family_id = family_id

    def polynomial(self, n: int) -> Polynomial:
        return Polynomial(self.rows[n])

    @property
    def polynomials(self) -> List[Polynomial]:
        return [self.polynomial(n) for n in range(self.max_n + 1)]


class ScalarSequence:
    def __init__(self, name: str, values, params=None):
        self.name = name
        self.params = _freeze_params(params)
        self.values = tuple(Fraction(v) for v in values)

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"ScalarSequence({self.name}, {[format_rational(v) for v in self.values]})"


Oracle = Callable[[int, int], Fraction]


class PolynomialFamily:
    """
    A polynomial sequence p_0, p_1, ... with deg p_n = n and p_0 = 1,
    optionally Sheffer for a pair (g, f), with closed-form oracles for its
    associated Stirling numbers.
    """

    def __init__(self, family_id: str, generator: Callable[[int], Polynomial], params=None,
                 sheffer: Optional["ShefferPair"] = None,
                 s2_oracles: Optional[Dict[str, Oracle]] = None,
                 s1_oracles: Optional[Dict[str, Oracle]] = None):
        self.id = family_id
        self.params = _freeze_params(params)
        self.sheffer = sheffer
        self.s2_oracles = dict(s2_oracles or {})
        self.s1_oracles = dict(s1_oracles or {})
        self._generator = generator
        self._cache: Dict[int, Polynomial] = {}
        self._lock = Lock()

    def param(self, name: str) -> Fraction:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        inner = ",".join(f"{name}={format_rational(value)}" for name, value in self.params)
        return f"{self.id}[{inner}]"

    def p(self, n: int) -> Polynomial:
        if n < 0:
            raise IndexRangeError(f"Family index must be nonnegative, got {n}")
        with self._lock:
            cached = self._cache.get(n)
        if cached is not None:
            return cached
        value = self._generator(n)
        if value.degree != n:
            raise IndexRangeError(f"{self.label}: p_{n} has degree {value.degree}")
        with self._lock:
            self._cache[n] = value
        return value

    def polys(self, max_n: int) -> List[Polynomial]:
        return [self.p(n) for n in range(max_n + 1)]

    @property
    def has_sheffer(self) -> bool:
        return self.sheffer is not None

    def vanishes_at_zero(self, max_n: int) -> bool:
        """p_n(0) = 0 for 1 <= n <= max_n."""
        return all(self.p(n).coefficient(0) == 0 for n in range(1, max_n + 1))

    def __eq__(self, other):
        if not isinstance(other, PolynomialFamily):
            return NotImplemented
        return (self.id, self.params) == (other.id, other.params)

    def __hash__(self):
        return hash((self.id, self.params))

    def __repr__(self):
        return f"PolynomialFamily({self.label})"
