"""Stable orbital integrals, L-packet sums, the continuity limit at the
identity, formal degrees, and the coset-partition character identity check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import LimitPathError, SingularPointError, ValidationError
from .ktrace import lds_character, tau_class
from .realform import (
    KClass,
    RealFormSpec,
    coset_reps,
    generator_key,
    hc_parameter,
    is_regular_param,
    rho_c,
    weyl_k,
)
from .rootsys import Weight, act, pairing, positive_roots, rho, weyl_group
from .toruschar import (
    ConjugacyDescriptor,
    TorusPoint,
    _csum,
    ab_fixed_sum,
    transformed_system,
    weyl_act_point,
)

PACKET_TOL = 1e-10


def stable_tau(spec: RealFormSpec, x: KClass, g: TorusPoint) -> complex:
    """Stable orbital integral: the sum of tau over the ordinary conjugacy
    classes inside the stable class of g, one Weyl-coset translate each."""
    return _csum(
        tau_class(spec, x, ConjugacyDescriptor.elliptic(weyl_act_point(v, g)))
        for v in coset_reps(spec)
    )


def lpacket_sum(spec: RealFormSpec, lam_hc: Weight, g: TorusPoint) -> complex:
    """Sum of the (limit of) discrete-series characters in the packet of lam_hc.

    Each coset representative contributes the character with transformed
    parameter and transformed positive system; the result is cross-checked
    against the stable orbital integral of the matching generator whenever
    lam_hc - rho_c is a valid generator key.
    """
    pos = spec.positive_system
    total = _csum(
        lds_character(spec, act(v, lam_hc), transformed_system(v, pos), g)
        for v in coset_reps(spec)
    )
    try:
        key = generator_key(spec, lam_hc - rho_c(spec))
    except ValidationError:
        key = None
    if key is not None:
        other = stable_tau(spec, KClass.generator(key), g)
        if abs(total - other) > max(PACKET_TOL, 1e-12 * max(1.0, abs(total), abs(other))):
            raise ArithmeticError(
                f"packet sum and stable integral disagree by {abs(total - other):.3e}"
            )
    return total


# ---------------------------------------------------------------------------
# limits at the identity

@dataclass(frozen=True)
class LimitReport:
    """Richardson-extrapolated limit along a ray toward the identity."""

    direction: TorusPoint
    samples: tuple[tuple[float, complex], ...]
    extrapolated: complex
    residual: float


def limit_at_identity(
    evaluator: Callable[[TorusPoint], complex],
    direction: TorusPoint,
    start_scale: float = 1e-2,
    levels: int = 6,
    order: int = 3,
) -> LimitReport:
    """Evaluate along t_k = start_scale * 2^{-k} times the direction and
    extrapolate polynomially (Neville to 0, geometric Richardson) at the given order."""
    if direction.exact:
        direction = TorusPoint.real_point(float(c) for c in direction.coords)
    if levels < 1:
        raise ValidationError("need at least two scales to extrapolate")
    order = min(order, levels)
    scales = [start_scale * 2.0 ** (-k) for k in range(levels + 1)]
    samples = []
    for s in scales:
        point = direction.scaled(s)
        try:
            samples.append((s, complex(evaluator(point))))
        except SingularPointError as err:
            raise LimitPathError(
                f"limit path hit the singular locus at scale {s} ({err}); "
                "choose a different direction"
            ) from err
    # Neville extrapolation to 0; with t_{k-j} = 2^j t_k the update is the
    # classical Richardson form (2^j T[k][j-1] - T[k-1][j-1]) / (2^j - 1).
    table = [[v for _, v in samples]]
    for j in range(1, order + 1):
        prev = table[-1]
        factor = 2.0**j
        table.append(
            [(factor * prev[i] - prev[i - 1]) / (factor - 1.0) for i in range(1, len(prev))]
        )
    final = table[order]
    extrapolated = final[-1]
    residual = abs(final[-1] - final[-2]) if len(final) >= 2 else 0.0
    return LimitReport(direction, tuple(samples), extrapolated, residual)


def formal_degree(spec: RealFormSpec, lam_hc: Weight) -> Fraction:
    """Magnitude of the dimension-product formula at the parameter; zero exactly
    when the parameter is singular.  Haar normalizations are not modeled."""
    pos = positive_roots(spec.datum)
    if not pos:
        return Fraction(1)
    r = rho(pos)
    num = Fraction(1)
    den = Fraction(1)
    for alpha in pos:
        num *= pairing(spec.datum, lam_hc, alpha)
        den *= pairing(spec.datum, r, alpha)
    return abs(num / den)


def tau_e(spec: RealFormSpec, x: KClass) -> Fraction:
    """The identity-element functional: formal degrees on discrete-series
    generators (regular parameter), zero on everything else."""
    total = Fraction(0)
    for key, coeff in x.terms:
        lam_hc = hc_parameter(spec, key)
        if is_regular_param(spec, lam_hc):
            total += coeff * formal_degree(spec, lam_hc)
    return total


@dataclass(frozen=True)
class ContinuityReport:
    limit: LimitReport
    tau_e_value: Fraction
    deviation: float
    passed: bool


def continuity_check(
    spec: RealFormSpec,
    x: KClass,
    direction: TorusPoint,
    start_scale: float = 1e-2,
    levels: int = 6,
) -> ContinuityReport:
    """Compare the extrapolated stable integral along the ray against the
    identity-element value, in magnitude."""
    report = limit_at_identity(
        lambda point: stable_tau(spec, x, point), direction, start_scale, levels
    )
    expected = tau_e(spec, x)
    deviation = abs(abs(report.extrapolated) - abs(float(expected)))
    tol = max(1e-6, 1e-6 * abs(float(expected)))
    return ContinuityReport(report, expected, deviation, deviation <= tol)


def char_identity_check(spec: RealFormSpec, nu: Weight, g: TorusPoint) -> float:
    """Residual of the coset-partition identity: the full-Weyl-group fixed-point
    sum equals the sum of compact-Weyl-group fixed-point sums over transformed
    weights and positive systems."""
    pos = spec.positive_system
    lhs = ab_fixed_sum(nu, g, weyl_group(spec.datum), pos)
    parts = [
        ab_fixed_sum(act(v, nu), g, weyl_k(spec), transformed_system(v, pos))
        for v in coset_reps(spec)
    ]
    return abs(lhs - _csum(parts))
