import random
from fractions import Fraction

import pytest

from bezoutkit.bezoutian import (
    bezoutian,
    coefficient_matrix,
    delta_matrix,
    delta_specialize,
    jacobian,
    rational_determinant,
    reduced_bezoutian,
    reduced_bezoutian_direct,
)
from bezoutkit.errors import NotFiniteFibers, UnitIdeal
from bezoutkit.groebner import normal_form
from bezoutkit.parse import parse_polynomial
from bezoutkit.poly import Polynomial, PolySystem, RingContext

from corpus import (
    NONCONJUGATE,
    IDENTITY2,
    IDENTITY3,
    NONFINITE,
    SQUARING,
    TRIANGULAR,
    UNIVARIATE_SQUARE,
    finite_instances,
    system,
)
from oracles import bezoutian_oracle, delta_matrix_oracle, from_sympy, jacobian_oracle, random_system

R1 = RingContext.standard(1)
R2 = RingContext.standard(2)
R3 = RingContext.standard(3)

SQUARING_BEZ = (
    "x1*x2*x3 + x2*x3*y1 + x1*x3*y2 + x1*x2*y3 + x3*y1*y2 + x2*y1*y3 + x1*y2*y3 + y1*y2*y3"
)


def P(text, ring):
    return parse_polynomial(text, ring)


def linear_system(M):
    n = len(M)
    ring = RingContext.standard(n)
    polys = tuple(
        Polynomial(ring, {ring.unit(j): Fraction(a) for j, a in enumerate(row) if a}) for row in M
    )
    return PolySystem(ring, polys)


class TestDeltaMatrix:
    def test_univariate_square(self):
        assert delta_matrix(system(UNIVARIATE_SQUARE)).to_rows() == [[P("x1 + y1", R1)]]

    def test_identity(self):
        assert delta_matrix(system(IDENTITY2)).to_rows() == [[1, 0], [0, 1]]

    def test_triangular(self):
        assert delta_matrix(system(TRIANGULAR)).to_rows() == [
            [1, P("x2^2 + x2*y2 + y2^2", R2)],
            [0, 1],
        ]

    def test_matches_sympy_division(self):
        rng = random.Random(7)
        for _ in range(20):
            f = random_system(rng, rng.randint(1, 3))
            M = delta_matrix_oracle(f)
            expected = [[from_sympy(M[i, j], f.ring) for j in range(f.n)] for i in range(f.n)]
            assert delta_matrix(f).to_rows() == expected


class TestBezoutian:
    def test_squaring(self):
        assert bezoutian(system(SQUARING)) == P(SQUARING_BEZ, R3)

    def test_identity(self):
        assert bezoutian(system(IDENTITY3)) == 1

    def test_triangular(self):
        assert bezoutian(system(TRIANGULAR)) == 1

    def test_nonconjugate_not_constant(self):
        assert not bezoutian(system(NONCONJUGATE)).is_constant()

    def test_matches_sympy_determinant(self):
        rng = random.Random(8)
        for _ in range(15):
            f = random_system(rng, rng.randint(1, 3))
            assert bezoutian(f) == bezoutian_oracle(f)


class TestDeltaSpecialize:
    def test_sum(self):
        assert delta_specialize(P("x1 + y1", R1)) == P("2*x1", R1)

    def test_squaring(self):
        assert delta_specialize(P(SQUARING_BEZ, R3)) == P("8*x1*x2*x3", R3)

    def test_fixes_x_only(self):
        p = P("x1^2*x2 - 3*x2 + 1/5", R2)
        assert delta_specialize(p) == p


class TestJacobian:
    def test_examples(self):
        assert jacobian(system(SQUARING)) == P("8*x1*x2*x3", R3)
        assert jacobian(system(IDENTITY3)) == 1
        assert jacobian(system(TRIANGULAR)) == 1
        assert jacobian(system(NONCONJUGATE)) == 1

    def test_matches_sympy(self):
        rng = random.Random(9)
        for _ in range(15):
            f = random_system(rng, rng.randint(1, 3))
            assert jacobian(f) == jacobian_oracle(f)


class TestReducedBezoutian:
    def test_squaring_at_origin(self):
        f = system(SQUARING)
        report = reduced_bezoutian(f, (0, 0, 0))
        assert report.reduced_bezoutian == P(SQUARING_BEZ, R3)
        assert not report.reduced_is_constant
        assert report.reduced_constant_value is None
        assert report.quotient_dimension_x == 8

    def test_identity(self):
        for q in [(0, 0), (3, -1), (Fraction(1, 2), 7)]:
            report = reduced_bezoutian(system(IDENTITY2), q)
            assert report.reduced_bezoutian == 1
            assert report.reduced_is_constant and report.reduced_constant_value == 1

    def test_nonconjugate_origin(self):
        report = reduced_bezoutian(system(NONCONJUGATE), (0, 0, 0))
        assert report.reduced_is_constant
        assert report.reduced_constant_value == 1
        assert report.reduced_bezoutian == 1

    def test_unit_ideal_is_constant_zero(self):
        report = reduced_bezoutian(system(NONFINITE), (1, 0))
        assert report.ideal_is_unit
        assert report.reduced_bezoutian.is_zero()
        assert report.reduced_is_constant and report.reduced_constant_value == 0
        assert report.quotient_dimension_x == 0

    def test_not_finite(self):
        with pytest.raises(NotFiniteFibers):
            reduced_bezoutian(system(NONFINITE), (0, 0))

    def test_normal_form_oracle(self):
        # the stored basis really reduces Béz to the reported remainder
        for name, f, q, dim in finite_instances():
            report = reduced_bezoutian(f, q)
            assert normal_form(report.bezoutian, report.basis) == report.reduced_bezoutian, name

    def test_direct_route_agrees(self):
        for name, f, q, dim in finite_instances():
            report = reduced_bezoutian(f, q)
            gb, nf, qb = reduced_bezoutian_direct(f, q, bez=report.bezoutian)
            assert nf == report.reduced_bezoutian, name
            assert qb.dimension == report.quotient_dimension_x ** 2, name


class TestCoefficientMatrix:
    def test_squaring_antidiagonal(self):
        cm = coefficient_matrix(system(SQUARING), (0, 0, 0))
        assert cm.size == 8
        monos = cm.x_basis.monomials
        for i, a in enumerate(monos):
            for j, b in enumerate(monos):
                complementary = all(u + v == 1 for u, v in zip(a[:3], b[:3]))
                assert cm.entries[i][j] == (1 if complementary else 0)
        assert cm.determinant() != 0

    def test_identity(self):
        cm = coefficient_matrix(system(IDENTITY2), (1, 1))
        assert cm.entries == ((1,),)

    def test_univariate_square(self):
        cm = coefficient_matrix(system(UNIVARIATE_SQUARE), (0,))
        assert cm.x_basis.monomials == ((0, 0), (1, 0))
        assert cm.y_basis.monomials == ((0, 0), (0, 1))
        assert cm.entries == ((0, 1), (1, 0))

    def test_unit_ideal(self):
        with pytest.raises(UnitIdeal):
            coefficient_matrix(system(NONFINITE), (1, 0))

    def test_not_finite(self):
        with pytest.raises(NotFiniteFibers):
            coefficient_matrix(system(NONFINITE), (0, 0))


class TestProperties:
    def test_delta_of_bezoutian_is_jacobian(self):
        rng = random.Random(2024)
        for k in range(100):
            f = random_system(rng, 1 + k % 3, max_degree=3)
            assert delta_specialize(bezoutian(f)) == jacobian(f)

    def test_translation_invariance(self):
        rng = random.Random(17)
        for _ in range(25):
            f = random_system(rng, rng.randint(1, 3))
            q = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(f.n)]
            assert bezoutian(f.translate(q)) == bezoutian(f)

    def test_constant_implies_dimension_at_most_one(self):
        for name, f, q, dim in finite_instances():
            report = reduced_bezoutian(f, q)
            if report.reduced_is_constant:
                assert report.quotient_dimension_x <= 1, name
        rng = random.Random(31)
        seen = 0
        while seen < 30:
            f = random_system(rng, 2, max_degree=2, coeff=3)
            q = [rng.randint(-2, 2) for _ in range(2)]
            try:
                report = reduced_bezoutian(f, q)
            except NotFiniteFibers:
                continue
            seen += 1
            if report.reduced_is_constant:
                assert report.quotient_dimension_x <= 1

    def test_coefficient_matrix_nonsingular_and_reconstructs(self):
        for name, f, q, dim in finite_instances(include_unit=False):
            report = reduced_bezoutian(f, q)
            cm = coefficient_matrix(f, report=report)
            assert cm.size == dim, name
            assert cm.determinant() != 0, name
            assert cm.expand(f.ring) == report.reduced_bezoutian, name

    def test_coefficient_matrix_random_instances(self):
        rng = random.Random(43)
        checked = 0
        while checked < 20:
            f = random_system(rng, 2, max_degree=2, coeff=3)
            q = [rng.randint(-2, 2) for _ in range(2)]
            try:
                report = reduced_bezoutian(f, q)
            except NotFiniteFibers:
                continue
            if report.ideal_is_unit:
                continue
            checked += 1
            cm = coefficient_matrix(f, report=report)
            assert cm.expand(f.ring) == report.reduced_bezoutian
            assert cm.determinant() != 0

    def test_linear_maps(self):
        rng = random.Random(12)
        for n in (2, 2, 2, 3, 3, 3):
            while True:
                M = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
                det = rational_determinant(M)
                if det:
                    break
            assert bezoutian(linear_system(M)) == det


def test_rational_determinant():
    assert rational_determinant([[0, 1], [1, 0]]) == -1
    assert rational_determinant([[2, 4], [1, 2]]) == 0
    assert rational_determinant([[Fraction(1, 2), 0, 0], [5, 3, 0], [1, 1, 4]]) == 6
