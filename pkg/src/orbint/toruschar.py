"""Torus points, exact regularity, weight exponentials, Weyl numerators and
denominators, the spinor character, and the Atiyah-Bott style fixed-point sum.

Lattice pairings are computed exactly (Fractions) before the single
transcendental call per factor; complex values are machine doubles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SingularPointError, ValidationError
from .realform import RealFormSpec
from .rootsys import (
    CartanDatum,
    Weight,
    WeylElement,
    WeylGroup,
    _transpose,
    integer_inverse,
    positive_roots,
)

# Real-mode singularity guard on |e^{alpha/2} - e^{-alpha/2}|; exact mode decides exactly.
SINGULAR_GUARD = 1e-13


@dataclass(frozen=True)
class TorusPoint:
    """Torus coordinates t with g = exp(2 pi sum_j t_j x_j) over the simple coroots,
    so e^lambda(g) = exp(2 pi i <lambda, t>) with lambda in fundamental coordinates.

    Exact points carry Fractions reduced mod 2 (half-integral weights have
    period 2 per coordinate); real points carry floats for limit paths.
    """

    coords: tuple
    exact: bool

    @staticmethod
    def exact_point(values: Iterable) -> "TorusPoint":
        coords = tuple(Fraction(v) % 2 for v in values)
        return TorusPoint(coords, True)

    @staticmethod
    def real_point(values: Iterable) -> "TorusPoint":
        return TorusPoint(tuple(float(v) for v in values), False)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def scaled(self, factor: float) -> "TorusPoint":
        if self.exact:
            raise ValidationError("scaling is a limit-path (real mode) operation")
        return TorusPoint(tuple(factor * c for c in self.coords), False)


def parse_torus_point(text: str) -> TorusPoint:
    """Parse comma-separated coordinates; all-rational tokens give an exact point,
    any decimal token switches the whole point to real mode."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValidationError("empty torus point")
    exact = all(("/" in t or _is_int(t)) for t in tokens)
    try:
        values = [Fraction(t) if ("/" in t or _is_int(t)) else float(t) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse torus point {text!r}") from None
    if exact:
        return TorusPoint.exact_point(values)
    return TorusPoint.real_point(values)


def _is_int(token: str) -> bool:
    try:
        int(token)
        return True
    except ValueError:
        return False


def serialize_torus_point(g: TorusPoint) -> list[str]:
    if g.exact:
        return [str(c) for c in g.coords]
    return [repr(c) for c in g.coords]


# ---------------------------------------------------------------------------
# conjugacy descriptors

@dataclass(frozen=True)
class ConjugacyDescriptor:
    """Tagged class descriptor: elliptic torus point, non-elliptic class, or a
    class in an ambient group of unequal rank."""

    kind: str
    point: TorusPoint | None = None

    @staticmethod
    def elliptic(point: TorusPoint) -> "ConjugacyDescriptor":
        return ConjugacyDescriptor("elliptic", point)

    @staticmethod
    def non_elliptic() -> "ConjugacyDescriptor":
        return ConjugacyDescriptor("non_elliptic")

    @staticmethod
    def unequal_rank_ambient() -> "ConjugacyDescriptor":
        return ConjugacyDescriptor("unequal_rank_ambient")

    def __post_init__(self):
        if self.kind not in ("elliptic", "non_elliptic", "unequal_rank_ambient"):
            raise ValidationError(f"unknown descriptor kind {self.kind!r}")
        if (self.kind == "elliptic") != (self.point is not None):
            raise ValidationError("exactly the elliptic descriptor carries a point")


# ---------------------------------------------------------------------------
# exponentials

def eval_weight(lam: Weight, g: TorusPoint) -> complex:
    """e^lambda(g) = exp(2 pi i <lambda, t>), the lattice pairing taken exactly
    in doubled coordinates before the exponential."""
    if lam.rank != g.rank:
        raise ValidationError("weight and torus point have different ranks")
    if g.exact:
        phase = Fraction(0)
        for c2, t in zip(lam.coords2, g.coords):
            phase += c2 * t
        phase %= 2
        return cmath.exp(1j * math.pi * float(phase))
    total = math.fsum(c2 * t for c2, t in zip(lam.coords2, g.coords))
    return cmath.exp(1j * math.pi * total)


def is_regular(g: TorusPoint, datum: CartanDatum) -> bool:
    """Exact regularity: no root pairing lands in the integers.  Real-mode
    points are rejected; regularity is only decided exactly."""
    if not g.exact:
        raise ValidationError("regularity is decided only for exact rational points")
    for alpha in positive_roots(datum):
        value = Fraction(0)
        for f, t in zip(alpha.halved().coords2, g.coords):
            value += f * t
        if value.denominator == 1:
            return False
    return True


def guard_nonsingular(g: TorusPoint, roots: Sequence[Weight]) -> None:
    """Raise SingularPointError (carrying the offending root) if any factor
    e^{alpha/2} - e^{-alpha/2} vanishes at g (exactly, or within the real-mode guard)."""
    for alpha in roots:
        fund = alpha.halved().coords2
        if g.exact:
            value = Fraction(0)
            for f, t in zip(fund, g.coords):
                value += f * t
            if value.denominator == 1:
                raise SingularPointError(f"torus point is singular for root {alpha}", root=alpha)
        else:
            u = math.fsum(f * t for f, t in zip(fund, g.coords))
            if abs(2.0 * math.sin(math.pi * u)) < SINGULAR_GUARD:
                raise SingularPointError(
                    f"torus point is numerically singular for root {alpha}", root=alpha
                )


def _elements(group) -> Sequence[WeylElement]:
    if isinstance(group, WeylGroup):
        return group.elements
    return tuple(group)


def _csum(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def weyl_numerator(mu: Weight, g: TorusPoint, group) -> complex:
    """Alternating exponential sum sum_w sign(w) e^{w mu}(g) over the given elements."""
    return _csum(w.sign * eval_weight(w.apply(mu), g) for w in _elements(group))


def weyl_denominator(g: TorusPoint, roots: Sequence[Weight]) -> complex:
    """prod_alpha (e^{alpha/2} - e^{-alpha/2})(g) over the given roots."""
    product = complex(1.0)
    for alpha in roots:
        half = alpha.halved()
        product *= eval_weight(half, g) - eval_weight(-half, g)
    return product


def delta_p_char(g: TorusPoint, spec: RealFormSpec) -> complex:
    """Graded spinor character of the noncompact directions, including the
    real form's sign calibration."""
    return spec.spin_sign * weyl_denominator(g, spec.noncompact_positive)


def char_quotient(mu: Weight, g: TorusPoint, group, roots: Sequence[Weight]) -> complex:
    """Numerator-over-denominator character value; errors carry the singular root."""
    guard_nonsingular(g, roots)
    return weyl_numerator(mu, g, group) / weyl_denominator(g, roots)


def ab_fixed_sum(nu: Weight, g: TorusPoint, group, roots: Sequence[Weight]) -> complex:
    """Fixed-point localization sum sum_w e^{w nu}(g) / prod_alpha (1 - e^{-w alpha}(g)),
    the trace-over-determinant form of the Dolbeault fixed-point terms."""
    guard_nonsingular(g, roots)
    terms = []
    for w in _elements(group):
        denom = complex(1.0)
        for alpha in roots:
            denom *= 1.0 - eval_weight(-w.apply(alpha), g)
        terms.append(eval_weight(w.apply(nu), g) / denom)
    return _csum(terms)


# ---------------------------------------------------------------------------
# Weyl action on torus points

def weyl_act_point(w: WeylElement, g: TorusPoint) -> TorusPoint:
    """Transform torus coordinates so that e^mu(w.g) = e^{w^{-1} mu}(g)."""
    mat = _transpose(integer_inverse(w.matrix))
    if g.exact:
        coords = tuple(
            sum(row[j] * g.coords[j] for j in range(len(row))) % 2 for row in mat
        )
        return TorusPoint(coords, True)
    coords = tuple(
        math.fsum(row[j] * g.coords[j] for j in range(len(row))) for row in mat
    )
    return TorusPoint(coords, False)


def transformed_system(w: WeylElement, roots: Sequence[Weight]) -> tuple[Weight, ...]:
    """The positive system w(R^+), in the image order."""
    return tuple(w.apply(alpha) for alpha in roots)


def negated_system(roots: Sequence[Weight]) -> tuple[Weight, ...]:
    return tuple(-alpha for alpha in roots)
