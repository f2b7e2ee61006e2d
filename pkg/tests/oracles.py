"""Independent reference computations used by the tests.

These go through sympy (expansion, division, determinants, Gröbner bases)
or brute force, never through bezoutkit's own algorithms.
"""

import itertools
import random
from fractions import Fraction

import sympy

from bezoutkit.poly import Polynomial, PolySystem, RingContext


def symbols(ring):
    return sympy.symbols(" ".join(ring.names))


def to_sympy(p: Polynomial):
    syms = symbols(p.ring)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, ring) -> Polynomial:
    syms = symbols(ring)
    poly = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    return Polynomial(
        ring,
        {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in poly.terms()},
    )


def delta_matrix_oracle(f: PolySystem):
    """Divided differences via sympy polynomial division."""
    ring = f.ring
    n = ring.n
    syms = symbols(ring)
    xs, ys = syms[:n], syms[n:]
    rows = []
    for fi in f.polys:
        e = to_sympy(fi)
        row = []
        for j in range(n):
            before = e.subs({xs[k]: ys[k] for k in range(j)}, simultaneous=True)
            after = e.subs({xs[k]: ys[k] for k in range(j + 1)}, simultaneous=True)
            q, r = sympy.div(sympy.expand(before - after), xs[j] - ys[j], *syms)
            assert r == 0
            row.append(sympy.expand(q))
        rows.append(row)
    return sympy.Matrix(rows)


def bezoutian_oracle(f: PolySystem) -> Polynomial:
    M = delta_matrix_oracle(f)
    return from_sympy(M.det(method="berkowitz"), f.ring)


def jacobian_oracle(f: PolySystem) -> Polynomial:
    syms = symbols(f.ring)[: f.n]
    F = sympy.Matrix([to_sympy(p) for p in f.polys])
    return from_sympy(F.jacobian(syms).det(method="berkowitz"), f.ring)


def cofactor_det(rows):
    """Plain Laplace expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def groebner_oracle(polys, ring, order="grevlex"):
    """Reduced Gröbner basis from sympy, as bezoutkit polynomials (monic)."""
    syms = symbols(ring)
    used = sorted({i for p in polys for i in p.support()})
    gens = [syms[i] for i in used] or [syms[0]]
    G = sympy.groebner([to_sympy(p) for p in polys], *gens, order=order, domain="QQ")
    out = []
    for g in G.exprs:
        poly = sympy.Poly(g, *gens, domain="QQ")
        lc = poly.LC(order=order)
        out.append(from_sympy(sympy.expand(g / lc), ring))
    return out


def rational_fiber(f: PolySystem, q, bound=4, denominators=(1, 2)):
    """Brute-force rational points ``p`` with ``f(p) = q`` on a small grid."""
    values = sorted({Fraction(a, d) for d in denominators for a in range(-bound * d, bound * d + 1)})
    n = f.n
    found = []
    for pt in itertools.product(values, repeat=n):
        full = list(pt) + [0] * n
        if all(_eval(p, full) == Fraction(c) for p, c in zip(f.polys, q)):
            found.append(pt)
    return found


def _eval(p, pt):
    total = Fraction(0)
    for m, c in p.terms.items():
        v = Fraction(c)
        for x, e in zip(pt, m):
            if e:
                v *= x**e
        total += v
    return total


def random_polynomial(rng: random.Random, ring, *, n_vars, max_degree, coeff=5, max_terms=4, block=0):
    """Random polynomial in variables ``block .. block + n_vars - 1``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.nvars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            e[block + rng.randrange(n_vars)] += 1
        c = rng.randint(-coeff, coeff)
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Polynomial(ring, terms)


def random_system(rng: random.Random, n, max_degree=3, coeff=5):
    """Random system whose components each have 2-5 nonconstant terms plus a constant."""
    ring = RingContext.standard(n)
    polys = []
    for _ in range(n):
        terms = {}
        for _ in range(rng.randint(2, 5)):
            e = [0] * ring.nvars
            for _ in range(rng.randint(1, max_degree)):
                e[rng.randrange(n)] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + rng.randint(-coeff, coeff)
        terms[(0,) * ring.nvars] = rng.randint(-coeff, coeff)
        polys.append(Polynomial(ring, terms))
    return PolySystem(ring, tuple(polys))
