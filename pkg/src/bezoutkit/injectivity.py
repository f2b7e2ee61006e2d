"""Injectivity certificates for polynomial maps at rational points.

A constant reduced Bézoutian at ``q`` bounds the fiber over ``q`` by one
point.  A constant (nonzero) Bézoutian does so at every rational point.
When the Jacobian is a nonzero constant the pointwise test is also
necessary, but only over an algebraically closed field of characteristic 0,
so that direction is reported as ``NOT_INJECTIVE_OVER_CLOSURE``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .bezoutian import BezoutianReport, bezoutian, jacobian, reduced_bezoutian
from .groebner import INFINITE, quotient_dimension
from .poly import Polynomial, PolySystem, as_point

CLOSURE_NOTE = (
    "non-injectivity holds over an algebraically closed field of characteristic 0 "
    "containing Q; it is not a statement about rational points"
)
INVERTIBLE_NOTE = (
    "Jac(f) is a nonzero constant, so in characteristic 0 injectivity on rational "
    "points implies f is invertible; the inverse is not computed"
)


class Verdict(Enum):
    CERTIFIED_INJECTIVE = "CertifiedInjective"
    NOT_INJECTIVE_OVER_CLOSURE = "NotInjectiveOverClosure"
    INCONCLUSIVE = "Inconclusive"


class Scope(Enum):
    AT_POINT = "at_point"
    GLOBAL = "global"


@dataclass(frozen=True)
class InjectivityCertificate:
    scope: Scope
    verdict: Verdict
    bezoutian: Polynomial
    jacobian: Polynomial
    jacobian_is_unit: bool
    point: tuple | None = None
    evidence: BezoutianReport | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED_INJECTIVE


def _is_unit_constant(p: Polynomial) -> bool:
    return p.is_constant() and not p.is_zero()


def certify_point(f: PolySystem, q: Sequence | None = None, *, bez=None, jac=None) -> InjectivityCertificate:
    """Certificate for ``|f^-1(q)| <= 1``.

    Raises NotFiniteFibers if ``(f - q)`` is not zero-dimensional.
    """
    report = reduced_bezoutian(f, q, bez=bez, jac=jac)
    jac_unit = _is_unit_constant(report.jacobian)
    notes = []
    if report.reduced_is_constant:
        verdict = Verdict.CERTIFIED_INJECTIVE
        if report.ideal_is_unit:
            notes.append("the ideal (f - q) is the unit ideal: the fiber over q is empty")
        else:
            notes.append("reduced Bézoutian is constant: the fiber over q has at most one point")
    elif jac_unit:
        verdict = Verdict.NOT_INJECTIVE_OVER_CLOSURE
        notes.append(CLOSURE_NOTE)
    else:
        verdict = Verdict.INCONCLUSIVE
        notes.append(
            "reduced Bézoutian is not constant and Jac(f) is not a nonzero constant; "
            "the criterion is only sufficient"
        )
    return InjectivityCertificate(
        scope=Scope.AT_POINT,
        verdict=verdict,
        bezoutian=report.bezoutian,
        jacobian=report.jacobian,
        jacobian_is_unit=jac_unit,
        point=report.point,
        evidence=report,
        notes=tuple(notes),
    )


def certify_global(f: PolySystem, *, bez=None, jac=None) -> InjectivityCertificate:
    """Certificate for injectivity on all rational points.

    Certified exactly when ``Béz(f)`` is a nonzero constant.  A zero Bézoutian
    gives no finiteness guarantee (e.g. ``(x1 + x2, x1 + x2)``), so it is
    reported as inconclusive.
    """
    if bez is None:
        bez = bezoutian(f)
    if jac is None:
        jac = jacobian(f)
    jac_unit = _is_unit_constant(jac)
    notes = []
    if _is_unit_constant(bez):
        verdict = Verdict.CERTIFIED_INJECTIVE
        notes.append("Béz(f) is a nonzero constant: f is injective on rational points")
        if jac_unit:
            notes.append(INVERTIBLE_NOTE)
    elif bez.is_zero():
        verdict = Verdict.INCONCLUSIVE
        notes.append("Béz(f) = 0, so Jac(f) = 0 and finiteness of fibers is not guaranteed")
    else:
        verdict = Verdict.INCONCLUSIVE
        notes.append(
            "Béz(f) is not constant; certification at individual points may still succeed"
        )
    return InjectivityCertificate(
        scope=Scope.GLOBAL,
        verdict=verdict,
        bezoutian=bez,
        jacobian=jac,
        jacobian_is_unit=jac_unit,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class FiberDimensionReport:
    point: tuple
    dimension: int | float
    bound_statement: str

    @property
    def fiber_bound(self) -> int | float:
        """Upper bound on the number of fiber points over any extension."""
        return self.dimension


def fiber_dimension_report(f: PolySystem, q: Sequence | None = None) -> FiberDimensionReport:
    q = as_point(f.ring, q)
    dim = quotient_dimension(f, q)
    if dim == INFINITE:
        text = "Q[x]/(f - q) is infinite-dimensional: no bound on the fiber"
    else:
        text = f"dim Q[x]/(f - q) = {dim}, so the fiber over q has at most {dim} points"
    return FiberDimensionReport(q, dim, text)
