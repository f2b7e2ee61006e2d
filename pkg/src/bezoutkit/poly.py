"""Sparse multivariate polynomials with exact rational coefficients.

Every polynomial lives in a ring ``Q[x1..xn, y1..yn]`` described by a
:class:`RingContext`.  The y-block exists for Bézoutian computations; user
input only ever mentions the x-block.  Monomials are exponent tuples of
length ``2n`` (x-block first), coefficients are ``int`` when integral and
:class:`fractions.Fraction` otherwise, and zero coefficients are never stored.

The canonical term order is graded reverse lexicographic with
``x1 > ... > xn > y1 > ... > yn``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from operator import add
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import InexactDivision, NonSquareMatrix, RingMismatch

Monomial = tuple  # tuple[int, ...] of length 2n
Scalar = Union[int, Fraction]
Coefficient = Union[int, Fraction]


def _norm(c) -> Coefficient:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def to_fraction(c) -> Fraction:
    """Coerce an exact rational (int, Fraction, or ``"a/b"`` string) to Fraction."""
    if isinstance(c, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.strip())
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def degrevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class RingContext:
    """Variable context for ``Q[x, y]`` with blocks of equal length ``n``."""

    n: int
    x_names: tuple
    y_names: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ring dimension n must be >= 1")
        if len(self.x_names) != self.n or len(self.y_names) != self.n:
            raise ValueError("x-block and y-block must both have n names")
        names = self.x_names + self.y_names
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")

    @staticmethod
    @lru_cache(maxsize=None)
    def standard(n: int) -> "RingContext":
        return RingContext(
            n,
            tuple(f"x{i}" for i in range(1, n + 1)),
            tuple(f"y{i}" for i in range(1, n + 1)),
        )

    @staticmethod
    def with_x_names(x_names: Sequence[str]) -> "RingContext":
        n = len(x_names)
        return RingContext(n, tuple(x_names), tuple(f"y{i}" for i in range(1, n + 1)))

    @property
    def names(self) -> tuple:
        return self.x_names + self.y_names

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def index(self, var) -> int:
        """Position of a variable given by name or index."""
        if isinstance(var, int):
            if not 0 <= var < 2 * self.n:
                raise IndexError(f"variable index {var} out of range")
            return var
        try:
            return self._index_map()[var]
        except KeyError:
            raise KeyError(f"{var!r} is not a variable of this ring") from None

    def _index_map(self) -> dict:
        return _name_index(self.names)

    def unit(self, i: int) -> Monomial:
        e = [0] * (2 * self.n)
        e[i] = 1
        return tuple(e)

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * (2 * self.n)


@lru_cache(maxsize=None)
def _name_index(names: tuple) -> dict:
    return {name: i for i, name in enumerate(names)}


def _check_ring(a: RingContext, b: RingContext) -> None:
    if a is not b and a != b:
        raise RingMismatch(f"ring mismatch: {a.names} vs {b.names}")


class Polynomial:
    """Immutable sparse polynomial over Q.

    Construct from a mapping ``{exponent tuple: coefficient}``; zero
    coefficients are dropped.  Arithmetic operators accept other polynomials
    of the same ring as well as ints and Fractions.
    """

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping | None = None):
        self.ring = ring
        clean = {}
        if terms:
            width = 2 * ring.n
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != width or any(e < 0 for e in m):
                    raise ValueError(f"bad monomial {m} for ring of {width} variables")
                c = _norm(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingContext, terms: dict) -> "Polynomial":
        # terms must already be normalized and free of zeros
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    # constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring: RingContext) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: RingContext, c) -> "Polynomial":
        c = _norm(c)
        return cls._raw(ring, {ring.one_monomial: c} if c else {})

    @classmethod
    def one(cls, ring: RingContext) -> "Polynomial":
        return cls.constant(ring, 1)

    @classmethod
    def variable(cls, ring: RingContext, var) -> "Polynomial":
        return cls._raw(ring, {ring.unit(ring.index(var)): 1})

    @classmethod
    def monomial(cls, ring: RingContext, m: Monomial, c=1) -> "Polynomial":
        return cls(ring, {m: c})

    # inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the term map, iterated in descending degrevlex order."""
        return dict(self.items())

    def items(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(
                self._terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True
            )
        return list(self._sorted)

    def monomials(self) -> list:
        return [m for m, _ in self.items()]

    def coefficient(self, m: Monomial) -> Fraction:
        return Fraction(self._terms.get(tuple(m), 0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self._terms.get(self.ring.one_monomial, 0))

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(m) for m in self._terms), default=-1)

    def support(self) -> set:
        """Indices of variables occurring in the polynomial."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def uses_only(self, indices: Iterable[int]) -> bool:
        return self.support() <= set(indices)

    def leading_term(self, key: Callable = degrevlex_key) -> tuple:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=key)
        return m, Fraction(self._terms[m])

    # comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.ring, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_ring(self.ring, other.ring)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.ring, other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial._raw(self.ring, _add_terms(self._terms, other._terms, 1))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial._raw(self.ring, _add_terms(self._terms, other._terms, -1))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial._raw(self.ring, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        return pow_(self, e)

    def scale(self, c) -> "Polynomial":
        c = _norm(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring, {m: _norm(v * c) for m, v in self._terms.items()}
        )

    def shift(self, m: Monomial, c=1) -> "Polynomial":
        """Multiply by the term ``c * x^m``."""
        c = _norm(c)
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring,
            {tuple(map(add, k, m)): _norm(v * c) for k, v in self._terms.items()},
        )

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        from .parse import render_polynomial

        return render_polynomial(self)


def _add_terms(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign > 0 else -c)
        if v:
            out[m] = _norm(v)
        else:
            out.pop(m, None)
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = tuple(map(add, ma, mb))
            out[m] = get(m, 0) + ca * cb
    return {m: _norm(c) for m, c in out.items() if c}


# Spec-level operations -----------------------------------------------------


def arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    """Exact ring arithmetic, ``op`` one of ``"add"``, ``"sub"``, ``"mul"``."""
    _check_ring(p.ring, q.ring)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def pow_(p: Polynomial, e: int) -> Polynomial:
    """``p`` raised to a non-negative integer power by repeated squaring."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = Polynomial.one(p.ring)
    base = p
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def substitute(p: Polynomial, mapping: Mapping) -> Polynomial:
    """Simultaneously replace variables by polynomials.

    ``mapping`` keys are variable names or indices; values are polynomials in
    ``p``'s ring or exact scalars.  Unmapped variables are left alone.
    """
    ring = p.ring
    images = {}
    for var, img in mapping.items():
        i = ring.index(var)
        if isinstance(img, Polynomial):
            _check_ring(ring, img.ring)
        else:
            img = Polynomial.constant(ring, to_fraction(img))
        images[i] = img
    if not images:
        return p

    renaming = _as_renaming(images)
    if renaming is not None:
        out = {}
        for m, c in p._terms.items():
            e = list(m)
            for i in renaming:
                e[i] = 0
            for i, j in renaming.items():
                e[j] += m[i]
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(ring, {m: _norm(c) for m, c in out.items() if c})

    powers: dict = {}
    result: dict = {}
    for m, c in p._terms.items():
        fixed = tuple(0 if i in images else e for i, e in enumerate(m))
        acc = Polynomial.constant(ring, c)
        for i, img in images.items():
            if m[i]:
                key = (i, m[i])
                if key not in powers:
                    powers[key] = pow_(img, m[i])
                acc = acc * powers[key]
        for k, v in acc._terms.items():
            mk = tuple(map(add, k, fixed))
            result[mk] = result.get(mk, 0) + v
    return Polynomial._raw(ring, {m: _norm(c) for m, c in result.items() if c})


def _as_renaming(images: dict) -> dict | None:
    # {i: j} when every image is the bare variable x_j and the map is injective
    out = {}
    for i, img in images.items():
        if len(img._terms) != 1:
            return None
        (m, c), = img._terms.items()
        if c != 1 or sum(m) != 1:
            return None
        out[i] = m.index(1)
    if len(set(out.values())) != len(out):
        return None
    return out


def partial_derivative(p: Polynomial, var) -> Polynomial:
    i = p.ring.index(var)
    out = {}
    for m, c in p._terms.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = _norm(c * e)
    return Polynomial._raw(p.ring, out)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_quotient(num: Polynomial, den: Polynomial) -> Polynomial:
    """Return ``r`` with ``r * den == num``; raise InexactDivision otherwise."""
    _check_ring(num.ring, den.ring)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if den.is_constant():
        return num.scale(Fraction(1) / den.constant_value())

    lm_den, lc_den = den.leading_term()
    tail = [(m, c) for m, c in den._terms.items() if m != lm_den]
    rem = dict(num._terms)
    heap = [(_neg_key(m), m) for m in rem]
    heapq.heapify(heap)
    quotient = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.pop(m, 0)
        if not c:
            continue
        if not _divides(lm_den, m):
            raise InexactDivision(f"{den} does not divide {num}")
        t = tuple(x - y for x, y in zip(m, lm_den))
        qc = _norm(Fraction(c) / lc_den)
        quotient[t] = qc
        for mt, ct in tail:
            mm = tuple(map(add, mt, t))
            if mm in rem:
                v = rem[mm] - qc * ct
                if v:
                    rem[mm] = _norm(v)
                else:
                    del rem[mm]
            else:
                rem[mm] = _norm(-qc * ct)
                heapq.heappush(heap, (_neg_key(mm), mm))
    return Polynomial._raw(num.ring, quotient)


def _neg_key(m: Monomial) -> tuple:
    return (-sum(m),) + tuple(reversed(m))


def is_constant_poly(p: Polynomial) -> bool:
    return p.is_constant()


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    """Exact value of ``p`` at a point given over all ``2n`` variables."""
    if len(point) != p.ring.nvars:
        raise ValueError(f"point must have {p.ring.nvars} coordinates")
    pt = [to_fraction(v) for v in point]
    total = Fraction(0)
    for m, c in p._terms.items():
        v = Fraction(c)
        for x, e in zip(pt, m):
            if e:
                v *= x**e
        total += v
    return total


# Polynomial matrices ---------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        ring = self.entries[0].ring
        for e in self.entries[1:]:
            _check_ring(ring, e.ring)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("rows must be non-empty and of equal length")
        return cls(len(rows), len(rows[0]), tuple(e for r in rows for e in r))

    @property
    def ring(self) -> RingContext:
        return self.entries[0].ring

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        return [
            list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)
        ]


def determinant(M: PolyMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion up to 3x3, Bareiss above."""
    if M.rows != M.cols:
        raise NonSquareMatrix(f"determinant of a {M.rows}x{M.cols} matrix")
    rows = M.to_rows()
    if M.rows <= 3:
        return _cofactor(rows)
    return _bareiss(rows)


def _cofactor(a: list) -> Polynomial:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = Polynomial.zero(a[0][0].ring)
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _bareiss(a: list) -> Polynomial:
    n = len(a)
    a = [list(r) for r in a]
    ring = a[0][0].ring
    sign = 1
    prev = Polynomial.one(ring)
    for k in range(n - 1):
        if a[k][k].is_zero():
            candidates = [i for i in range(k + 1, n) if not a[i][k].is_zero()]
            if not candidates:
                return Polynomial.zero(ring)
            pivot = min(candidates, key=lambda i: len(a[i][k]))
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_quotient(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


@dataclass(frozen=True)
class PolySystem:
    """A polynomial map ``f = (f1, ..., fn)`` in the x-block of ``ring``."""

    ring: RingContext
    polys: tuple

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if len(self.polys) != self.ring.n:
            raise ValueError(
                f"a map of A^{self.ring.n} needs {self.ring.n} components, "
                f"got {len(self.polys)}"
            )
        xs = set(range(self.ring.n))
        for p in self.polys:
            _check_ring(self.ring, p.ring)
            if not p.uses_only(xs):
                raise ValueError(f"component {p} uses y-block variables")

    @property
    def n(self) -> int:
        return self.ring.n

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, i: int) -> Polynomial:
        return self.polys[i]

    def translate(self, q: Sequence) -> "PolySystem":
        """The system ``f - q``."""
        q = as_point(self.ring, q)
        return PolySystem(self.ring, tuple(p - c for p, c in zip(self.polys, q)))

    def in_y(self) -> tuple:
        """Components with every x_i renamed to y_i."""
        n = self.ring.n
        ren = {i: Polynomial.variable(self.ring, n + i) for i in range(n)}
        return tuple(substitute(p, ren) for p in self.polys)


def as_point(ring: RingContext, coords: Sequence | None) -> tuple:
    """Validate a rational point of A^n; ``None`` means the origin."""
    if coords is None:
        return (Fraction(0),) * ring.n
    coords = tuple(to_fraction(c) for c in coords)
    if len(coords) != ring.n:
        raise ValueError(f"point must have {ring.n} coordinates, got {len(coords)}")
    return coords


def x_variables(ring: RingContext) -> list:
    return [Polynomial.variable(ring, i) for i in range(ring.n)]


def y_variables(ring: RingContext) -> list:
    return [Polynomial.variable(ring, ring.n + i) for i in range(ring.n)]
