"""Buchberger's algorithm, normal forms and standard monomials.

Bases are computed over Q with the normal selection strategy (smallest lcm
degree first) plus Buchberger's coprime and chain criteria, then minimised
and inter-reduced into the unique reduced Gröbner basis.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from operator import add
from typing import Iterable, Sequence

from .poly import Polynomial, PolySystem, RingContext, _check_ring, _norm, as_point

INFINITE = math.inf


class MonomialOrder(Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"
    BLOCK = "block"  # x-block beats y-block; degrevlex inside each block

    def key(self, n: int):
        """Sort key on 2n-exponent tuples; larger key = larger monomial."""
        if self is MonomialOrder.DEGREVLEX:
            return _degrevlex
        if self is MonomialOrder.LEX:
            return _lex

        def block(m):
            return _degrevlex(m[:n]) + _degrevlex(m[n:])

        return block


def _degrevlex(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


def _lex(m):
    return m


def _negate(key):
    return tuple(-v for v in key)


class Block(Enum):
    """Which variables a basis is restricted to."""

    X = "x"
    Y = "y"
    BOTH = "both"

    def indices(self, n: int) -> range:
        if self is Block.X:
            return range(0, n)
        if self is Block.Y:
            return range(n, 2 * n)
        return range(0, 2 * n)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial."""

    generators: tuple
    order: MonomialOrder
    ring: RingContext
    block: Block

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def leading_monomials(self) -> list:
        key = self.order.key(self.ring.n)
        return [g.leading_term(key)[0] for g in self.generators]


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of a quotient ring.

    ``monomials`` is ``None`` and ``dimension`` is :data:`INFINITE` when the
    ideal is not zero-dimensional in the basis' variable block.
    """

    monomials: tuple | None
    dimension: float | int

    @property
    def is_finite(self) -> bool:
        return self.monomials is not None


# Internal polynomial representation: (leading monomial, {monomial: coeff}) --


class _GBPoly:
    __slots__ = ("lm", "terms", "tail")

    def __init__(self, terms: dict, key):
        lm = max(terms, key=key)
        lc = terms[lm]
        if lc != 1:
            inv = Fraction(1) / lc
            terms = {m: _norm(c * inv) for m, c in terms.items()}
        self.lm = lm
        self.terms = terms
        self.tail = [(m, c) for m, c in terms.items() if m != lm]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _reduce(terms: dict, basis: Sequence[_GBPoly], key, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by ``basis`` (monic)."""
    rem = dict(terms)
    heap = [(_negate(key(m)), m) for m in rem]
    heapq.heapify(heap)
    out = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.pop(m, 0)
        if not c:
            continue
        g = next((g for g in basis if _divides(g.lm, m)), None)
        if g is None:
            out[m] = c
            if not full:
                # top-reduction only: everything below stays as is
                out.update(rem)
                return out
            continue
        shift = tuple(x - y for x, y in zip(m, g.lm))
        for mt, ct in g.tail:
            mm = tuple(map(add, mt, shift))
            if mm in rem:
                v = rem[mm] - c * ct
                if v:
                    rem[mm] = _norm(v)
                else:
                    del rem[mm]
            else:
                rem[mm] = _norm(-c * ct)
                heapq.heappush(heap, (_negate(key(mm)), mm))
    return out


def _spoly(f: _GBPoly, g: _GBPoly) -> dict:
    lcm = _lcm(f.lm, g.lm)
    sf = tuple(x - y for x, y in zip(lcm, f.lm))
    sg = tuple(x - y for x, y in zip(lcm, g.lm))
    out = {}
    for m, c in f.tail:
        mm = tuple(map(add, m, sf))
        out[mm] = out.get(mm, 0) + c
    for m, c in g.tail:
        mm = tuple(map(add, m, sg))
        out[mm] = out.get(mm, 0) - c
    return {m: _norm(c) for m, c in out.items() if c}


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> Polynomial:
    """The S-polynomial of two nonzero polynomials (normalised to monic inputs)."""
    _check_ring(f.ring, g.ring)
    key = order.key(f.ring.n)
    return Polynomial._raw(f.ring, _spoly(_GBPoly(f._terms, key), _GBPoly(g._terms, key)))


def _block_of(polys: Iterable[Polynomial], ring: RingContext) -> Block:
    n = ring.n
    used = set()
    for p in polys:
        used |= p.support()
    if used and min(used) >= n:
        return Block.Y
    if all(i < n for i in used):
        return Block.X
    return Block.BOTH


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder = MonomialOrder.DEGREVLEX,
    block: Block | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    ``block`` records which variables the ideal is considered in (it drives
    zero-dimensionality in :func:`standard_monomials`); it is inferred from
    the generators when omitted.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens[1:]:
        _check_ring(ring, g.ring)
    if block is None:
        block = _block_of(gens, ring)
    key = order.key(ring.n)
    one = ring.one_monomial

    def unit_basis():
        return GroebnerBasis((Polynomial.one(ring),), order, ring, block)

    G: list = []
    pairs: set = set()

    def add_poly(terms: dict) -> bool:
        h = _GBPoly(terms, key)
        if h.lm == one:
            return True
        idx = len(G)
        G.append(h)
        for i in range(idx):
            pairs.add((i, idx))
        return False

    # inter-reduce the input a little so duplicates and constants show up early
    for p in sorted((p for p in gens if not p.is_zero()), key=lambda p: key(p.leading_term(key)[0])):
        r = _reduce(p._terms, G, key)
        if r and add_poly(r):
            return unit_basis()
    if not G:
        return GroebnerBasis((), order, ring, block)

    def select():
        best = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]].lm, G[ij[1]].lm)), _negate(key(_lcm(G[ij[0]].lm, G[ij[1]].lm))), ij))
        pairs.discard(best)
        return best

    while pairs:
        i, j = select()
        fi, fj = G[i], G[j]
        # coprime leading monomials: S-polynomial reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue
        if _chain_criterion(i, j, G, pairs):
            continue
        r = _reduce(_spoly(fi, fj), G, key)
        if r and add_poly(r):
            return unit_basis()

    return GroebnerBasis(tuple(_finalize(G, key, ring)), order, ring, block)


def _chain_criterion(i: int, j: int, G: list, pairs: set) -> bool:
    lcm = _lcm(G[i].lm, G[j].lm)
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not _divides(G[k].lm, lcm):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def _finalize(G: list, key, ring: RingContext) -> list:
    # minimal basis: drop elements whose leading monomial another one divides
    minimal = []
    for idx, g in enumerate(G):
        redundant = any(
            _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx)
            for jdx, h in enumerate(G)
            if jdx != idx
        )
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce(dict(g.tail), others, key)
        tail[g.lm] = 1
        reduced.append(_GBPoly(tail, key))
    reduced.sort(key=lambda g: key(g.lm))
    return [Polynomial._raw(ring, g.terms) for g in reduced]


def _as_gbpolys(gb: GroebnerBasis) -> list:
    key = gb.order.key(gb.ring.n)
    return [_GBPoly(g._terms, key) for g in gb.generators]


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``p`` modulo the ideal of ``gb``."""
    _check_ring(p.ring, gb.ring)
    key = gb.order.key(gb.ring.n)
    return Polynomial._raw(p.ring, _reduce(p._terms, _as_gbpolys(gb), key))


def is_unit_ideal(gb: GroebnerBasis) -> bool:
    return len(gb.generators) == 1 and gb.generators[0] == 1


def is_groebner(gb: GroebnerBasis) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    key = gb.order.key(gb.ring.n)
    polys = _as_gbpolys(gb)
    for f, g in itertools.combinations(polys, 2):
        if _reduce(_spoly(f, g), polys, key):
            return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    key = gb.order.key(gb.ring.n)
    polys = _as_gbpolys(gb)
    for g, original in zip(polys, gb.generators):
        if original.leading_term(key)[1] != 1:
            return False
        for h in polys:
            if h is not g and any(_divides(h.lm, m) for m in g.terms):
                return False
    return True


def standard_monomials(gb: GroebnerBasis) -> QuotientBasis:
    """Monomials of ``gb``'s block divisible by no leading monomial.

    Listed by increasing degree and, within a degree, in decreasing order.
    """
    ring = gb.ring
    if is_unit_ideal(gb):
        return QuotientBasis((), 0)
    variables = list(gb.block.indices(ring.n))
    lms = gb.leading_monomials()
    bounds = {}
    for v in variables:
        pure = [m[v] for m in lms if m[v] and sum(m) == m[v]]
        if not pure:
            return QuotientBasis(None, INFINITE)
        bounds[v] = min(pure)
    found = []
    width = 2 * ring.n
    for exps in itertools.product(*(range(bounds[v]) for v in variables)):
        m = [0] * width
        for v, e in zip(variables, exps):
            m[v] = e
        m = tuple(m)
        if not any(_divides(lm, m) for lm in lms):
            found.append(m)
    key = gb.order.key(ring.n)
    found.sort(key=lambda m: (sum(m), _negate(key(m))))
    return QuotientBasis(tuple(found), len(found))


def ideal_of_fiber(f: PolySystem, q=None) -> list:
    """Generators ``f_i - q_i`` of the fiber ideal, in the x-block."""
    q = as_point(f.ring, q)
    return [p - c for p, c in zip(f.polys, q)]


def fiber_basis(f: PolySystem, q=None, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> GroebnerBasis:
    return buchberger(ideal_of_fiber(f, q), order, Block.X)


def quotient_dimension(f: PolySystem, q=None) -> float | int:
    """``dim_Q Q[x]/(f - q)``, or :data:`INFINITE`."""
    return standard_monomials(fiber_basis(f, q)).dimension


def rename_to_y(gb: GroebnerBasis) -> GroebnerBasis:
    """The same basis with x_i -> y_i (valid for degrevlex and block orders)."""
    if gb.block is not Block.X:
        raise ValueError("only x-block bases can be renamed")
    if gb.order is MonomialOrder.LEX:
        raise ValueError("lex does not restrict to the y-block the same way")
    n = gb.ring.n
    gens = []
    for g in gb.generators:
        gens.append(Polynomial._raw(gb.ring, {m[n:] + m[:n]: c for m, c in g._terms.items()}))
    return GroebnerBasis(tuple(gens), gb.order, gb.ring, Block.Y)


def union_basis(gx: GroebnerBasis, gy: GroebnerBasis) -> GroebnerBasis:
    """Reduced basis of the sum of an x-block ideal and a y-block ideal.

    Generators in disjoint variable blocks have coprime leading monomials,
    so the union is already a reduced Gröbner basis unless one side is the
    unit ideal.
    """
    if gx.ring != gy.ring or gx.order != gy.order:
        raise ValueError("bases must share ring and order")
    if gx.block is not Block.X or gy.block is not Block.Y:
        raise ValueError("expected an x-block and a y-block basis")
    if is_unit_ideal(gx) or is_unit_ideal(gy):
        return GroebnerBasis((Polynomial.one(gx.ring),), gx.order, gx.ring, Block.BOTH)
    key = gx.order.key(gx.ring.n)
    gens = sorted(gx.generators + gy.generators, key=lambda g: key(g.leading_term(key)[0]))
    return GroebnerBasis(tuple(gens), gx.order, gx.ring, Block.BOTH)
