"""Exact matrix evaluation over Q and over prime fields F_p (p odd).

sigma_t of an n x n matrix is the sum of its principal t x t minors;
each minor goes through fraction-free Bareiss elimination with row
pivoting, which stays exact over both fields.  Truncation for t > n is
automatic (there are no t x t minors).

EvalContext binds letter indices to matrices and evaluates sigma-ring
polynomials, caching word products and minor sums per assignment.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

from .ring import SigmaPoly
from .words import Word

_checked_primes: set[int] = set()


def _check_prime(p: int) -> int:
    if p in _checked_primes:
        return p
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    _checked_primes.add(p)
    return p


class Fp:
    """Element of F_p, p an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        _check_prime(p)
        if isinstance(v, Fp):
            if v.p != p:
                raise ValueError("mixed characteristics")
            v = v.v
        elif isinstance(v, Fraction):
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            v = v.numerator * pow(v.denominator, -1, p)
        object.__setattr__(self, "v", int(v) % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp is immutable")

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, (int, Fraction)):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Fp(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * pow(o.v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o / self

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, k: int):
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            try:
                other = Fp(other, self.p)
            except ZeroDivisionError:
                return False
        return isinstance(other, Fp) and other.p == self.p and other.v == self.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


# A field is either the string "Q" or an odd prime p.


def field_of(spec) -> object:
    if spec == "Q" or spec is None:
        return "Q"
    return _check_prime(int(spec))


def as_element(value, field):
    if field == "Q":
        if isinstance(value, Fp):
            raise ValueError("cannot map a modular value into Q")
        return Fraction(value)
    return Fp(value, field)


class ExactMatrix:
    __slots__ = ("n", "rows", "field")

    def __init__(self, rows, field="Q"):
        field = field_of(field)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        clean = [[as_element(v, field) for v in r] for r in rows]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", clean)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int, field="Q") -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zero(cls, n: int, field="Q") -> "ExactMatrix":
        return cls([[0] * n for _ in range(n)], field)

    def _like(self, rows) -> "ExactMatrix":
        return ExactMatrix(rows, self.field)

    def _zero_el(self):
        return as_element(0, self.field)

    def _one_el(self):
        return as_element(1, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.n != other.n or self.field != other.field:
            raise ValueError("shape or field mismatch")
        return self._like(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = as_element(c, self.field)
        return self._like([[c * v for v in r] for r in self.rows])

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.n != other.n or self.field != other.field:
            raise ValueError("shape or field mismatch")
        n = self.n
        cols = list(zip(*other.rows))
        return self._like(
            [[sum((a * b for a, b in zip(row, col)), self._zero_el()) for col in cols]
             for row in self.rows]
        )

    @property
    def T(self) -> "ExactMatrix":
        return self._like([list(col) for col in zip(*self.rows)])

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), self._zero_el())

    def entry(self, i: int, j: int):
        """1-based access."""
        return self.rows[i - 1][j - 1]

    def det(self):
        """Bareiss fraction-free elimination with row pivoting."""
        n = self.n
        if n == 0:
            return self._one_el()
        m = [row[:] for row in self.rows]
        sign = 1
        prev = self._one_el()
        for k in range(n - 1):
            if not m[k][k]:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return self._zero_el()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
                m[i][k] = self._zero_el()
            prev = m[k][k]
        return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]

    def principal_minor(self, rows: tuple[int, ...]):
        sub = [[self.rows[i][j] for j in rows] for i in rows]
        return ExactMatrix(sub, self.field).det()

    def sigma(self, t: int):
        """Sum of principal t x t minors; 1 for t = 0, 0 for t > n."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        if t == 0:
            return self._one_el()
        if t > self.n:
            return self._zero_el()
        total = self._zero_el()
        for rows in combinations(range(self.n), t):
            total = total + self.principal_minor(rows)
        return total

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self.rows)
        tag = "Q" if self.field == "Q" else f"F{self.field}"
        return f"ExactMatrix<{tag}>[{body}]"


def random_matrix(n: int, seed: int, bound: int = 9, field="Q") -> ExactMatrix:
    """Entries drawn row-major via randint(-bound, bound); the same seed
    gives the same integers over Q and over any F_p."""
    rng = random.Random(seed)
    return ExactMatrix(
        [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], field
    )


def random_symmetric(n: int, seed: int, bound: int = 9, field="Q") -> ExactMatrix:
    """Upper triangle (diagonal included) drawn row-major, then mirrored."""
    rng = random.Random(seed)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-bound, bound)
            rows[i][j] = v
            rows[j][i] = v
    return ExactMatrix(rows, field)


class EvalContext:
    """Evaluation of sigma-ring polynomials at a matrix assignment."""

    def __init__(self, assignment: dict[int, ExactMatrix]):
        if not assignment:
            raise ValueError("empty assignment")
        sizes = {m.n for m in assignment.values()}
        fields = {m.field for m in assignment.values()}
        if len(sizes) != 1 or len(fields) != 1:
            raise ValueError("assignment matrices must share size and field")
        self.assignment = dict(assignment)
        self.n = sizes.pop()
        self.field = fields.pop()
        self._words: dict[tuple, ExactMatrix] = {}
        self._sigmas: dict[tuple, object] = {}

    def word_matrix(self, w: Word) -> ExactMatrix:
        key = w.key()
        hit = self._words.get(key)
        if hit is not None:
            return hit
        out = None
        for lt in w:
            m = self.assignment.get(lt.index)
            if m is None:
                raise ValueError(f"no matrix for letter index {lt.index}")
            if lt.transposed:
                m = m.T
            out = m if out is None else out * m
        self._words[key] = out
        return out

    def sigma(self, t: int, w: Word):
        key = (t, w.key())
        hit = self._sigmas.get(key)
        if hit is None:
            hit = self._sigmas[key] = self.word_matrix(w).sigma(t)
        return hit

    def eval_poly(self, p: SigmaPoly):
        total = as_element(0, self.field)
        for mono, coeff in p.monomials.items():
            term = as_element(coeff, self.field)
            for g in mono:
                term = term * self.sigma(g.t, g.cycle)
            total = total + term
        return total


# ---------------------------------------------------------------------------
# JSON: {"n": 3, "field": "Q", "entries": [["1/2", "0", "3"], ...]} or
#       {"n": 3, "field": "Fp", "p": 5, "entries": [...]}.
# ---------------------------------------------------------------------------


def matrix_json_obj(m: ExactMatrix) -> dict:
    obj = {"n": m.n, "field": "Q" if m.field == "Q" else "Fp"}
    if m.field != "Q":
        obj["p"] = m.field
    obj["entries"] = [[str(v) for v in row] for row in m.rows]
    return obj


def matrix_from_json_obj(obj: dict) -> ExactMatrix:
    field = "Q" if obj["field"] == "Q" else int(obj["p"])
    entries = [[Fraction(v) for v in row] for row in obj["entries"]]
    m = ExactMatrix(entries, field)
    if m.n != obj["n"]:
        raise ValueError("declared size does not match entries")
    return m


def matrix_json(m: ExactMatrix) -> str:
    return json.dumps(matrix_json_obj(m))
