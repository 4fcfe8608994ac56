"""Exact arithmetic in cyclotomic fields, exact dense linear algebra, and the
numerical embedding used by the monodromy engine.

An ``ExactScalar`` is an element of Q(zeta_N) stored as its coordinates in the
power basis modulo the N-th cyclotomic polynomial.  Mixed-conductor operations
promote both operands to the lcm of the conductors; no attempt is made to
shrink an element back to a smaller subfield.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
from sympy import Poly, Rational, Symbol, cyclotomic_poly, factorint, sympify, totient
from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_rem, dup_sub
from sympy.polys.densebasic import dup_inflate, dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.polyerrors import NotInvertible

from .exceptions import DivisionByZeroError

logger = logging.getLogger(__name__)

_Z = Symbol('z')

DEFAULT_PRECISION = 64


def _lcm(a, b):
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _modulus(conductor):
    coeffs = Poly(cyclotomic_poly(conductor, _Z), _Z).all_coeffs()
    return tuple(QQ(int(c)) for c in coeffs)


@lru_cache(maxsize=None)
def _degree(conductor):
    return int(totient(conductor))


def _mobius(n):
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def _normalized_traces(conductor):
    """Tr(zeta_N^j) / phi(N) for j < phi(N); independent of the ambient conductor."""
    phi = _degree(conductor)
    out = []
    for j in range(phi):
        g = gcd(j, conductor)
        total = sum(_mobius(conductor // d) * d for d in range(1, g + 1) if g % d == 0)
        out.append(QQ(total, phi))
    return tuple(out)


def _qq(value):
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return QQ.from_sympy(Rational(value.strip()))
        except (TypeError, ValueError, SyntaxError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class ExactScalar:
    """Element of Q(zeta_N).  Immutable."""

    __slots__ = ('_rep', '_conductor')

    def __init__(self, coeffs=(), conductor=1):
        if conductor < 1:
            raise ValueError("conductor must be positive")
        rep = dup_strip([_qq(c) for c in reversed(list(coeffs))])
        if len(rep) > _degree(conductor):
            rep = dup_rem(rep, list(_modulus(conductor)), QQ)
        self._rep = tuple(rep)
        self._conductor = conductor

    @classmethod
    def _make(cls, rep, conductor):
        obj = object.__new__(cls)
        obj._rep = tuple(rep)
        obj._conductor = conductor
        return obj

    # ---------------- Construction ----------------

    @classmethod
    def rational(cls, numerator, denominator=1):
        if denominator == 0:
            raise DivisionByZeroError("rational with zero denominator")
        value = QQ(numerator, denominator) if isinstance(numerator, int) else _qq(numerator) / _qq(denominator)
        return cls._make((value,) if value else (), 1)

    @classmethod
    def root_of_unity(cls, conductor, power=1):
        power %= conductor
        coeffs = [0] * power + [1]
        return cls(coeffs, conductor)

    @classmethod
    def parse(cls, text):
        """Inverse of ``str``: "p/q", "p", or "c0 + c1*z + ...; N"."""
        if isinstance(text, ExactScalar):
            return text
        if not isinstance(text, str):
            return coerce(text)
        if ';' not in text:
            return cls.rational(_qq(text))
        expr, _, conductor = text.rpartition(';')
        try:
            conductor = int(conductor.strip())
            poly = Poly(sympify(expr, locals={'z': _Z}), _Z, domain='QQ')
        except (TypeError, ValueError, SyntaxError) as exc:
            raise ValueError(f"not a cyclotomic scalar: {text!r}") from exc
        if conductor < 1:
            raise ValueError(f"not a cyclotomic scalar: {text!r}")
        coeffs = [QQ.from_sympy(c) for c in reversed(poly.all_coeffs())]
        return cls(coeffs, conductor)

    # ---------------- Accessors ----------------

    @property
    def conductor(self):
        return self._conductor

    @property
    def coeffs(self):
        """Power-basis coordinates, lowest degree first, length phi(N)."""
        low = list(reversed(self._rep))
        return tuple(low + [QQ(0)] * (_degree(self._conductor) - len(low)))

    def is_zero(self):
        return not self._rep

    def is_rational(self):
        return len(self._rep) <= 1

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        q = self._rep[0] if self._rep else QQ(0)
        return Fraction(int(q.numerator), int(q.denominator))

    def is_integer(self):
        return self.is_rational() and self.as_fraction().denominator == 1

    def promote(self, conductor):
        if conductor % self._conductor:
            raise ValueError(f"conductor {conductor} is not a multiple of {self._conductor}")
        return ExactScalar._make(self._lift(conductor), conductor)

    def _lift(self, conductor):
        if conductor == self._conductor or len(self._rep) <= 1:
            return self._rep
        rep = dup_inflate(list(self._rep), conductor // self._conductor, QQ)
        return tuple(dup_rem(rep, list(_modulus(conductor)), QQ))

    def _align(self, other):
        if self._conductor == other._conductor:
            return self._rep, other._rep, self._conductor
        conductor = _lcm(self._conductor, other._conductor)
        return self._lift(conductor), other._lift(conductor), conductor

    def normalized_trace(self):
        traces = _normalized_traces(self._conductor)
        return sum((c * t for c, t in zip(self.coeffs, traces)), QQ(0))

    def conjugate(self):
        if self.is_rational():
            return self
        n = self._conductor
        image = [QQ(0)] * n
        for j, c in enumerate(reversed(self._rep)):
            image[(-j) % n] += c
        return ExactScalar(image, n)

    def inverse(self):
        if not self._rep:
            raise DivisionByZeroError("division by zero in a cyclotomic field")
        if len(self._rep) == 1:
            return ExactScalar._make((QQ(1) / self._rep[0],), self._conductor)
        try:
            rep = dup_invert(list(self._rep), list(_modulus(self._conductor)), QQ)
        except NotInvertible as exc:  # pragma: no cover - Phi_N is irreducible
            raise DivisionByZeroError(str(exc)) from exc
        return ExactScalar._make(dup_strip(rep), self._conductor)

    # ---------------- Arithmetic ----------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other._rep:
            return self
        if not self._rep:
            return other
        a, b, n = self._align(other)
        return ExactScalar._make(dup_add(list(a), list(b), QQ), n)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._make(dup_neg(list(self._rep), QQ), self._conductor)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, n = self._align(other)
        return ExactScalar._make(dup_sub(list(a), list(b), QQ), n)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self._rep or not other._rep:
            return ZERO
        a, b, n = self._align(other)
        if len(a) == 1 and len(b) == 1:
            return ExactScalar._make((a[0] * b[0],), n)
        rep = dup_mul(list(a), list(b), QQ)
        if len(rep) > _degree(n):
            rep = dup_rem(rep, list(_modulus(n)), QQ)
        return ExactScalar._make(rep, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, _ = self._align(other)
        return a == b

    def __hash__(self):
        if len(self._rep) <= 1:
            return hash(self._rep[0] if self._rep else QQ(0))
        return hash(self.normalized_trace())

    def __bool__(self):
        return bool(self._rep)

    def __str__(self):
        if self.is_rational():
            return _format_rational(self._rep[0] if self._rep else QQ(0))
        terms = []
        for j, c in enumerate(self.coeffs):
            coefficient = _format_rational(c)
            if j == 0:
                terms.append(coefficient)
            elif j == 1:
                terms.append(f"{coefficient}*z")
            else:
                terms.append(f"{coefficient}*z^{j}")
        return f"{' + '.join(terms)}; {self._conductor}"

    def __repr__(self):
        return f"ExactScalar('{self}')"


ZERO = ExactScalar._make((), 1)
ONE = ExactScalar._make((QQ(1),), 1)


def coerce(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, str):
        return ExactScalar.parse(value)
    return ExactScalar.rational(_qq(value))


def _coerce_or_none(value):
    if isinstance(value, ExactScalar):
        return value
    try:
        return coerce(value)
    except (TypeError, ValueError):
        return None


def cyclotomic_arith(a, b, op):
    """Exact a op b for op in '+', '-', '*', '/'; the result lives in conductor lcm(N_a, N_b)."""
    a, b = coerce(a), coerce(b)
    if op == '+':
        return a + b
    if op in ('-', '−'):
        return a - b
    if op in ('*', '×'):
        return a * b
    if op in ('/', '÷'):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cos_2pi(j, m):
    """cos(2*pi*j/m) as an element of Q(zeta_lcm(m, 4))."""
    conductor = _lcm(m, 4)
    z = ExactScalar.root_of_unity(m, j)
    return ((z + z.conjugate()) / 2).promote(conductor)


def sin_2pi(j, m):
    conductor = _lcm(m, 4)
    z = ExactScalar.root_of_unity(m, j)
    i = ExactScalar.root_of_unity(4)
    return ((z - z.conjugate()) / (2 * i)).promote(conductor)


def to_complex(a, precision=DEFAULT_PRECISION):
    """Embed a into C sending zeta_N to exp(2*pi*i/N); error below 2**(1 - precision)."""
    a = coerce(a)
    with mpmath.workprec(precision + 16):
        if a.is_rational():
            q = a.as_fraction()
            value = mpmath.mpc(mpmath.mpf(q.numerator) / q.denominator, 0)
        else:
            zeta = mpmath.expjpi(mpmath.mpf(2) / a.conductor)
            value = mpmath.mpc(0)
            for c in reversed(a.coeffs):
                value = value * zeta + mpmath.mpf(int(c.numerator)) / int(c.denominator)
    return value


class ExactMatrix:
    """Dense matrix of ExactScalars.  Immutable."""

    __slots__ = ('_data', 'rows', 'cols')

    def __init__(self, data, cols=None):
        rows = tuple(tuple(coerce(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise ValueError("ragged matrix")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def _make(cls, rows, cols):
        obj = object.__new__(cls)
        obj._data = tuple(tuple(r) for r in rows)
        obj.rows = len(obj._data)
        obj.cols = cols
        return obj

    @classmethod
    def zeros(cls, rows, cols):
        return cls._make([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls._make([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(coerce(x) for x in c) for c in columns]
        return cls._make([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def vstack(cls, blocks, cols):
        data = []
        for block in blocks:
            if block.cols != cols:
                raise ValueError("column mismatch in vstack")
            data.extend(block._data)
        return cls._make(data, cols)

    # ---------------- Access ----------------

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(row[j] for row in self._data)

    def tolist(self):
        return [list(row) for row in self._data]

    def is_zero(self):
        return all(x.is_zero() for row in self._data for x in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in row] for row in self._data]})"

    # ---------------- Arithmetic ----------------

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix._make(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix._make([[-a for a in r] for r in self._data], self.cols)

    def scale(self, c):
        c = coerce(c)
        if c.is_zero():
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._make([[c * a for a in r] for r in self._data], self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        right = other._data
        out = []
        for row in self._data:
            acc = [ZERO] * other.cols
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in enumerate(right[k]):
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix._make(out, other.cols)

    def apply(self, vector):
        return tuple(
            sum((a * v for a, v in zip(row, vector) if not a.is_zero() and not v.is_zero()), ZERO)
            for row in self._data)

    def kron(self, other):
        out = []
        for row in self._data:
            for orow in other._data:
                out.append([a * b for a in row for b in orow])
        return ExactMatrix._make(out, self.cols * other.cols)

    def transpose(self):
        return ExactMatrix._make(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def trace(self):
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def select_columns(self, indices):
        return ExactMatrix._make([[row[j] for j in indices] for row in self._data], len(indices))

    # ---------------- Elimination ----------------

    def rank(self):
        """Fraction-free (Bareiss) elimination."""
        m = [list(r) for r in self._data]
        rank = 0
        previous = ONE
        for c in range(self.cols):
            pivot = next((i for i in range(rank, self.rows) if not m[i][c].is_zero()), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            p = m[rank][c]
            top = m[rank]
            for i in range(rank + 1, self.rows):
                row = m[i]
                a = row[c]
                for j in range(c + 1, self.cols):
                    value = p * row[j]
                    if not a.is_zero() and not top[j].is_zero():
                        value = value - a * top[j]
                    row[j] = value / previous
                row[c] = ZERO
            previous = p
            rank += 1
            if rank == self.rows:
                break
        return rank

    def rref(self):
        """Reduced row echelon form over the field; returns (rows, pivot columns)."""
        m = [list(r) for r in self._data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if not m[i][c].is_zero()), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = m[r][c].inverse()
            m[r] = [x * inv for x in m[r]]
            top = m[r]
            for i in range(self.rows):
                if i == r or m[i][c].is_zero():
                    continue
                factor = m[i][c]
                m[i] = [x - factor * y if not y.is_zero() else x for x, y in zip(m[i], top)]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m[:r], pivots

    def determinant(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self._data]
        det = ONE
        for c in range(self.cols):
            pivot = next((i for i in range(c, self.rows) if not m[i][c].is_zero()), None)
            if pivot is None:
                return ZERO
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            p = m[c][c]
            det = det * p
            inv = p.inverse()
            for i in range(c + 1, self.rows):
                if m[i][c].is_zero():
                    continue
                factor = m[i][c] * inv
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]
        return det

    def row_basis(self):
        reduced, _ = self.rref()
        return ExactMatrix._make(reduced, self.cols)

    def kernel(self):
        """Basis of {v : M v = 0} as a list of column tuples."""
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for row, p in zip(reduced, pivots):
                v[p] = -row[f]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs):
        """Exact solution of M x = rhs, or None when the system is inconsistent."""
        augmented = ExactMatrix._make(
            [list(row) + [coerce(b)] for row, b in zip(self._data, rhs)], self.cols + 1)
        reduced, pivots = augmented.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for row, p in zip(reduced, pivots):
            x[p] = row[self.cols]
        return tuple(x)

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        n = self.rows
        augmented = ExactMatrix._make(
            [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(self._data)],
            2 * n)
        reduced, pivots = augmented.rref()
        if pivots[:n] != list(range(n)) or len(reduced) < n:
            raise DivisionByZeroError("matrix is singular")
        return ExactMatrix._make([row[n:] for row in reduced], n)

    # ---------------- Export ----------------

    def to_complex(self, precision=DEFAULT_PRECISION):
        out = mpmath.matrix(self.rows, self.cols)
        for i, row in enumerate(self._data):
            for j, x in enumerate(row):
                if not x.is_zero():
                    out[i, j] = to_complex(x, precision)
        return out

    def to_strings(self):
        return [[str(x) for x in row] for row in self._data]


def exact_rank(matrix):
    return matrix.rank()
