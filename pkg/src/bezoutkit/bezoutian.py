"""Multivariate Bézoutians, Jacobians and reduced Bézoutians.

For ``f = (f1, ..., fn)`` the entry ``Delta[i][j]`` is the divided difference

    (f_i(y1..y_{j-1}, x_j..x_n) - f_i(y1..y_j, x_{j+1}..x_n)) / (x_j - y_j)

and the Bézoutian is ``det(Delta)`` in ``Q[x, y]``.  Reducing it modulo
``(f(x) - q, f(y) - q)`` gives the reduced Bézoutian at ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotFiniteFibers, UnitIdeal
from .groebner import (
    Block,
    GroebnerBasis,
    MonomialOrder,
    QuotientBasis,
    buchberger,
    fiber_basis,
    ideal_of_fiber,
    is_unit_ideal,
    normal_form,
    rename_to_y,
    standard_monomials,
    union_basis,
)
from .poly import (
    PolyMatrix,
    Polynomial,
    PolySystem,
    as_point,
    determinant,
    exact_quotient,
    partial_derivative,
    substitute,
)

__all__ = [
    "BezoutianReport",
    "CoefficientMatrix",
    "bezoutian",
    "coefficient_matrix",
    "delta_matrix",
    "delta_specialize",
    "jacobian",
    "jacobian_matrix",
    "rational_determinant",
    "reduced_bezoutian",
]


def _staircase(f: PolySystem, j: int) -> dict:
    # x_k -> y_k for every k < j
    ring = f.ring
    return {k: Polynomial.variable(ring, ring.n + k) for k in range(j)}


def delta_matrix(f: PolySystem) -> PolyMatrix:
    ring = f.ring
    n = ring.n
    rows = [[None] * n for _ in range(n)]
    for j in range(n):
        before = _staircase(f, j)
        after = _staircase(f, j + 1)
        divisor = Polynomial.variable(ring, j) - Polynomial.variable(ring, n + j)
        for i, fi in enumerate(f.polys):
            diff = substitute(fi, before) - substitute(fi, after)
            rows[i][j] = exact_quotient(diff, divisor)
    return PolyMatrix.from_rows(rows)


def bezoutian(f: PolySystem) -> Polynomial:
    return determinant(delta_matrix(f))


def delta_specialize(p: Polynomial) -> Polynomial:
    """Substitute ``y_i -> x_i`` for every i."""
    ring = p.ring
    n = ring.n
    return substitute(p, {n + i: Polynomial.variable(ring, i) for i in range(n)})


def jacobian_matrix(f: PolySystem) -> PolyMatrix:
    return PolyMatrix.from_rows(
        [[partial_derivative(fi, j) for j in range(f.n)] for fi in f.polys]
    )


def jacobian(f: PolySystem) -> Polynomial:
    return determinant(jacobian_matrix(f))


@dataclass(frozen=True)
class BezoutianReport:
    """Everything computed about ``f`` at a rational point ``q``.

    ``reduced_constant_value`` is set exactly when ``reduced_is_constant``.
    A unit ideal (empty fiber) counts as constant with value 0.
    """

    point: tuple
    bezoutian: Polynomial
    jacobian: Polynomial
    reduced_bezoutian: Polynomial
    reduced_is_constant: bool
    reduced_constant_value: Fraction | None
    ideal_is_unit: bool
    quotient_dimension_x: int | float
    basis: GroebnerBasis


def _block_bases(f: PolySystem, q, order: MonomialOrder):
    """Gröbner bases of (f(x) - q) and (f(y) - q)."""
    gx = fiber_basis(f, q, order)
    qb = standard_monomials(gx)
    if not qb.is_finite:
        raise NotFiniteFibers(
            "the ideal (f - q) is not zero-dimensional; the fiber is not finite"
        )
    if order is MonomialOrder.LEX:
        gy = buchberger([p - c for p, c in zip(f.in_y(), q)], order, Block.Y)
    else:
        # degrevlex restricted to the y-block is degrevlex on the renamed x-block
        gy = rename_to_y(gx)
    return gx, gy, qb


def reduced_bezoutian(
    f: PolySystem,
    q: Sequence | None = None,
    *,
    bez: Polynomial | None = None,
    jac: Polynomial | None = None,
    order: MonomialOrder = MonomialOrder.DEGREVLEX,
) -> BezoutianReport:
    """Reduce ``Béz(f)`` modulo ``(f(x) - q, f(y) - q)``.

    ``Béz(f - q) = Béz(f)``, so the determinant is computed once and may be
    passed in as ``bez`` when sweeping over many points.  The ideal in
    ``Q[x, y]`` is assembled from the x-block basis and its y-renamed copy.

    Raises NotFiniteFibers if ``(f - q)`` is neither zero-dimensional nor the
    unit ideal.
    """
    q = as_point(f.ring, q)
    if bez is None:
        bez = bezoutian(f)
    if jac is None:
        jac = jacobian(f)
    gx, gy, qb = _block_bases(f, q, order)
    gb = union_basis(gx, gy)
    unit = is_unit_ideal(gb)
    if unit:
        reduced = Polynomial.zero(f.ring)
        constant, value = True, Fraction(0)
    else:
        reduced = normal_form(bez, gb)
        constant = reduced.is_constant()
        value = reduced.constant_value() if constant else None
    return BezoutianReport(
        point=q,
        bezoutian=bez,
        jacobian=jac,
        reduced_bezoutian=reduced,
        reduced_is_constant=constant,
        reduced_constant_value=value,
        ideal_is_unit=unit,
        quotient_dimension_x=qb.dimension,
        basis=gb,
    )


def reduced_bezoutian_direct(
    f: PolySystem,
    q: Sequence | None = None,
    *,
    bez: Polynomial | None = None,
    order: MonomialOrder = MonomialOrder.BLOCK,
) -> tuple:
    """Cross-check route: one Buchberger run on all 2n generators at once.

    Returns ``(basis, normal form, quotient basis of Q[x, y]/I)``.
    """
    q = as_point(f.ring, q)
    if bez is None:
        bez = bezoutian(f)
    gens = ideal_of_fiber(f, q) + [p - c for p, c in zip(f.in_y(), q)]
    gb = buchberger(gens, order, Block.BOTH)
    qb = standard_monomials(gb)
    nf = Polynomial.zero(f.ring) if is_unit_ideal(gb) else normal_form(bez, gb)
    return gb, nf, qb


@dataclass(frozen=True)
class CoefficientMatrix:
    """``B[i][j]`` with reduced Bézoutian ``= sum B[i][j] c_i(x) c_j(y)``.

    ``x_basis`` holds the standard monomials ``c_i`` in the x-block and
    ``y_basis`` the same monomials written in the y-block.
    """

    x_basis: QuotientBasis
    y_basis: QuotientBasis
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.entries)

    def determinant(self) -> Fraction:
        return rational_determinant(self.entries)

    def expand(self, ring) -> Polynomial:
        terms = {}
        for i, cx in enumerate(self.x_basis.monomials):
            for j, cy in enumerate(self.y_basis.monomials):
                b = self.entries[i][j]
                if b:
                    terms[tuple(a + c for a, c in zip(cx, cy))] = b
        return Polynomial(ring, terms)


def coefficient_matrix(
    f: PolySystem,
    q: Sequence | None = None,
    *,
    report: BezoutianReport | None = None,
) -> CoefficientMatrix:
    """Expand the reduced Bézoutian over the tensor basis ``c_i(x) c_j(y)``."""
    if report is None:
        report = reduced_bezoutian(f, q)
    if report.ideal_is_unit:
        raise UnitIdeal("the quotient ring is zero; there is no basis to expand over")
    n = f.ring.n
    xb = standard_monomials(GroebnerBasis(
        tuple(g for g in report.basis.generators if g.uses_only(range(n))),
        report.basis.order,
        f.ring,
        Block.X,
    ))
    monos = xb.monomials
    yb = QuotientBasis(tuple(m[n:] + m[:n] for m in monos), xb.dimension)
    index = {m: i for i, m in enumerate(monos)}
    size = len(monos)
    B = [[Fraction(0)] * size for _ in range(size)]
    for m, c in report.reduced_bezoutian.items():
        i = index[m[:n] + (0,) * n]
        j = index[m[n:] + (0,) * n]
        B[i][j] = Fraction(c)
    return CoefficientMatrix(xb, yb, tuple(tuple(r) for r in B))


def rational_determinant(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    a = [[Fraction(v) for v in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] / a[k][k]
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    return det
