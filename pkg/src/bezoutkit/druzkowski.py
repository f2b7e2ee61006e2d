"""Druzkowski morphisms ``x_i + (sum_j a_ij x_j)^3`` and their conjugations.

Also hosts the sampling experiment asking whether the reduced Bézoutian of
``f - q`` equals 1 at every rational point ``q``.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .bezoutian import bezoutian, jacobian, reduced_bezoutian
from .errors import NotDruzkowski, SearchSpaceTooLarge
from .poly import Polynomial, PolySystem, RingContext, pow_, substitute

DEFAULT_MAX_N = 6


def _as_matrix(A) -> tuple:
    rows = tuple(tuple(Fraction(v) for v in row) for row in A)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and non-empty")
    return rows


def _matmul(A, B) -> tuple:
    n = len(A)
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def cubic_linear_system(A, ring: RingContext | None = None) -> PolySystem:
    """The map with components ``x_i + (row_i(A) . x)^3`` (no Jacobian check)."""
    A = _as_matrix(A)
    n = len(A)
    ring = ring or RingContext.standard(n)
    xs = [Polynomial.variable(ring, i) for i in range(n)]
    polys = []
    for i, row in enumerate(A):
        form = Polynomial(ring, {ring.unit(j): a for j, a in enumerate(row) if a})
        polys.append(xs[i] + pow_(form, 3))
    return PolySystem(ring, tuple(polys))


@dataclass(frozen=True)
class DruzkowskiSpec:
    A: tuple
    system: PolySystem
    jacobian_constant: Fraction

    @property
    def n(self) -> int:
        return len(self.A)


def from_matrix(A) -> DruzkowskiSpec:
    """Build the Druzkowski morphism of ``A``; raise NotDruzkowski unless Jac = 1."""
    A = _as_matrix(A)
    f = cubic_linear_system(A)
    jac = jacobian(f)
    # the Jacobian of x + (Ax)^3 is 1 at the origin, so constant means 1
    if jac != 1:
        raise NotDruzkowski(jac)
    return DruzkowskiSpec(A, f, Fraction(1))


def permutation_matrix(perm: Sequence[int]) -> tuple:
    """Matrix sending ``e_j`` to ``e_perm[j]`` (0-based permutation)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    return tuple(
        tuple(Fraction(1) if perm[j] == i else Fraction(0) for j in range(n))
        for i in range(n)
    )


def conjugate_matrix(A, perm: Sequence[int], signs: Sequence[int] | None = None) -> tuple:
    """``P A P^-1`` for ``P = (permutation matrix) * diag(signs)``."""
    A = _as_matrix(A)
    n = len(A)
    signs = tuple(signs) if signs is not None else (1,) * n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = signs[i] * signs[j] * A[i][j]
    return tuple(tuple(r) for r in out)


def _apply_linear(P, f_polys: Sequence[Polynomial]) -> tuple:
    n = len(P)
    ring = f_polys[0].ring
    out = []
    for i in range(n):
        acc = Polynomial.zero(ring)
        for k in range(n):
            if P[i][k]:
                acc = acc + f_polys[k].scale(P[i][k])
        out.append(acc)
    return tuple(out)


def compose_linear(P_out, f: PolySystem, P_in) -> PolySystem:
    """The system ``x -> P_out f(P_in x)`` for rational matrices."""
    ring = f.ring
    n = f.n
    xs = [Polynomial.variable(ring, i) for i in range(n)]
    inner = _apply_linear(_as_matrix(P_in), xs)
    pulled = [substitute(p, {i: inner[i] for i in range(n)}) for p in f.polys]
    return PolySystem(ring, _apply_linear(_as_matrix(P_out), pulled))


def _inverse_permutation(perm: Sequence[int]) -> list:
    inv = [0] * len(perm)
    for j, p in enumerate(perm):
        inv[p] = j
    return inv


class ConjugationMismatch(AssertionError):
    """The composed system differs from the system of the conjugated matrix."""


def permutation_conjugate(spec: DruzkowskiSpec, perm: Sequence[int]) -> DruzkowskiSpec:
    """Spec of ``P A P^-1``, after checking ``P f P^-1 = f_{P A P^-1}`` as systems."""
    P = permutation_matrix(perm)
    P_inv = permutation_matrix(_inverse_permutation(perm))
    B = conjugate_matrix(spec.A, perm)
    composed = compose_linear(P, spec.system, P_inv)
    target = cubic_linear_system(B)
    if composed != target:
        raise ConjugationMismatch(f"P f P^-1 differs from the system of {B}")
    return DruzkowskiSpec(B, target, spec.jacobian_constant)


@dataclass(frozen=True)
class RowMultResult:
    composed: PolySystem
    is_druzkowski: bool
    candidate: tuple
    linear_coefficient: Fraction  # coefficient of x_i in the i-th component


def row_mult_conjugate(spec: DruzkowskiSpec, i: int, m) -> RowMultResult:
    """Compose ``D^3 f D^-1`` where ``D`` scales coordinate ``i`` (0-based) by ``m``.

    The cubic parts always match the cubic-linear map of ``D A D^-1``; the
    linear part of component ``i`` becomes ``m^2 x_i``.
    """
    m = Fraction(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    n = spec.n
    eye = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    D3 = [row[:] for row in eye]
    D_inv = [row[:] for row in eye]
    D = [row[:] for row in eye]
    D3[i][i] = m**3
    D_inv[i][i] = 1 / m
    D[i][i] = m
    composed = compose_linear(D3, spec.system, D_inv)
    candidate = _matmul(_matmul(_as_matrix(D), spec.A), _as_matrix(D_inv))
    ring = composed.ring
    lin = composed.polys[i].coefficient(ring.unit(i))
    return RowMultResult(
        composed=composed,
        is_druzkowski=composed == cubic_linear_system(candidate, ring),
        candidate=candidate,
        linear_coefficient=lin,
    )


@dataclass(frozen=True)
class ConjugationWitness:
    permutation: tuple  # 0-based
    signs: tuple
    conjugated: tuple


def is_strictly_upper(A) -> bool:
    n = len(A)
    return all(A[i][j] == 0 for i in range(n) for j in range(i + 1))


def conjugate_search(A, max_n: int = DEFAULT_MAX_N) -> ConjugationWitness | None:
    """First ``P = perm * diag(signs)`` making ``P A P^-1`` strictly upper triangular.

    Permutations are tried in lexicographic order, sign vectors with +1
    before -1.  Returns ``None`` once all ``n! 2^n`` candidates fail.
    """
    A = _as_matrix(A)
    n = len(A)
    if n > max_n:
        raise SearchSpaceTooLarge(
            f"n = {n} exceeds max_n = {max_n} ({factorial(n) * 2**n} candidates)"
        )
    support = [(i, j) for i in range(n) for j in range(n) if A[i][j]]
    for perm in itertools.permutations(range(n)):
        # signs only flip entries, so the zero pattern depends on perm alone
        if any(perm[i] >= perm[j] for i, j in support):
            continue
        for signs in itertools.product((1, -1), repeat=n):
            B = conjugate_matrix(A, perm, signs)
            if is_strictly_upper(B):
                return ConjugationWitness(tuple(perm), tuple(signs), B)
    return None


@dataclass(frozen=True)
class ExperimentRecord:
    index: int
    point: tuple
    constant_value: Fraction | None
    is_one: bool
    elapsed: float  # seconds


def sample_points(n: int, samples: int, seed: int, value_range: int) -> list:
    """Origin first, then uniform integer points in ``[-range, range]^n``."""
    if samples < 1 or value_range < 1:
        raise ValueError("samples and range must be positive")
    rng = random.Random(seed)
    points = [(Fraction(0),) * n]
    for _ in range(samples - 1):
        points.append(tuple(Fraction(rng.randint(-value_range, value_range)) for _ in range(n)))
    return points


def _evaluate_sample(args) -> ExperimentRecord:
    index, f, q, bez, jac = args
    start = time.perf_counter()
    report = reduced_bezoutian(f, q, bez=bez, jac=jac)
    value = report.reduced_constant_value
    return ExperimentRecord(
        index=index,
        point=q,
        constant_value=value,
        is_one=report.reduced_is_constant and value == 1,
        elapsed=time.perf_counter() - start,
    )


def sample_reduced_bezoutians(
    A,
    samples: int,
    seed: int,
    value_range: int,
    *,
    workers: int = 1,
):
    """Return an iterator of records, one per sampled ``q``, in sample order.

    The matrix is validated before anything is evaluated.  With
    ``workers > 1`` samples run in worker processes; the point list is fixed
    up front, so results do not depend on scheduling.
    """
    spec = from_matrix(A)
    f = spec.system
    bez = bezoutian(f)
    jac = jacobian(f)
    points = sample_points(spec.n, samples, seed, value_range)
    tasks = [(k, f, q, bez, jac) for k, q in enumerate(points)]
    return _run(tasks, workers)


def _run(tasks, workers):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_evaluate_sample, tasks)
    else:
        for task in tasks:
            yield _evaluate_sample(task)
