"""Stable integrals, packet sums, identity limits, formal degrees, coset identity."""

import math
import random
from fractions import Fraction

import pytest

from orbint.errors import LimitPathError
from orbint.ktrace import random_regular_point
from orbint.realform import KClass, generator_key, hc_parameter, real_form, rho_c
from orbint.rootsys import Weight, rho, positive_roots, weyl_dim, weyl_group
from orbint.stable import (
    char_identity_check,
    continuity_check,
    formal_degree,
    limit_at_identity,
    lpacket_sum,
    stable_tau,
    tau_e,
)
from orbint.toruschar import TorusPoint, weyl_act_point

SL2R = real_form("sl2r")
SU21 = real_form("su21")
SP4R = real_form("sp4r")
CA2 = real_form("compact(A2)")


def gen_class(spec, coords):
    return KClass.generator(generator_key(spec, Weight(coords)))


def test_sl2r_stable_cancellation():
    x = gen_class(SL2R, (0,))
    for q in [5, 7, 11, 13]:
        g = TorusPoint.exact_point([Fraction(1, q)])
        assert abs(stable_tau(SL2R, x, g)) <= 1e-13


def test_sl2r_stable_closed_form():
    # two-translate sum: sin(3 theta)/sin(theta) with the calibrated sign (+)
    x = gen_class(SL2R, (6,))
    g = TorusPoint.exact_point([Fraction(1, 7)])
    theta = 2 * math.pi / 7
    value = stable_tau(SL2R, x, g)
    assert abs(value - math.sin(3 * theta) / math.sin(theta)) <= 1e-12


def test_compact_stable_equals_tau():
    from orbint.ktrace import tau_class
    from orbint.toruschar import ConjugacyDescriptor

    x = gen_class(CA2, (2, 0))
    rng = random.Random(5)
    for _ in range(3):
        g = random_regular_point(CA2.datum, rng)
        assert stable_tau(CA2, x, g) == tau_class(CA2, x, ConjugacyDescriptor.elliptic(g))


def test_stable_invariance_under_weyl_translates():
    rng = random.Random(21)
    for spec, coords in [(SL2R, (4,)), (SU21, (2, 0))]:
        x = gen_class(spec, coords)
        for _ in range(5):
            g = random_regular_point(spec.datum, rng)
            base = stable_tau(spec, x, g)
            for w in weyl_group(spec.datum):
                moved = stable_tau(spec, x, weyl_act_point(w, g))
                assert abs(moved - base) <= 1e-12 * max(1.0, abs(base))


def test_packet_sum_matches_stable():
    rng = random.Random(33)
    for spec, coords in [(SL2R, (0,)), (SL2R, (6,)), (SU21, (2, 2)), (SP4R, (0, 3))]:
        key = generator_key(spec, Weight(coords))
        lam_hc = hc_parameter(spec, key)
        for _ in range(6):
            g = random_regular_point(spec.datum, rng)
            lhs = lpacket_sum(spec, lam_hc, g)
            rhs = stable_tau(spec, KClass.generator(key), g)
            assert abs(lhs - rhs) <= 1e-10


def test_sl2r_packet_vanishes_at_singular_parameter():
    g = TorusPoint.exact_point([Fraction(1, 5)])
    assert abs(lpacket_sum(SL2R, Weight((0,)), g)) <= 1e-13


def test_compact_packet_is_full_character():
    from orbint.toruschar import char_quotient

    g = TorusPoint.exact_point([Fraction(1, 5), Fraction(2, 7)])
    lam = Weight((2, 0))
    lam_hc = lam + rho_c(CA2)
    lhs = lpacket_sum(CA2, lam_hc, g)
    rhs = char_quotient(lam_hc, g, weyl_group(CA2.datum), CA2.positive_system)
    assert abs(lhs - rhs) <= 1e-12


def test_limit_constant_and_taylor_oracle():
    direction = TorusPoint.real_point([1.0])
    const = limit_at_identity(lambda p: 4.25 + 0j, direction)
    assert const.extrapolated == 4.25 + 0j
    assert const.residual == 0.0

    def ratio(point):
        t = point.coords[0]
        return complex(math.sin(3 * t) / math.sin(t))

    report = limit_at_identity(ratio, direction)
    assert abs(report.extrapolated - 3.0) <= 1e-8
    assert report.residual <= 1e-6
    scales = [s for s, _ in report.samples]
    assert scales == sorted(scales, reverse=True)
    assert len(scales) == 7


def test_limit_rejects_singular_direction():
    # a direction pinned to the singular locus: first coordinate zero for sl2r
    def evaluator(point):
        return stable_tau(SL2R, gen_class(SL2R, (0,)), point)

    with pytest.raises(LimitPathError):
        limit_at_identity(evaluator, TorusPoint.real_point([0.0]))


def test_formal_degree_values():
    assert formal_degree(SL2R, Weight((6,))) == 3
    assert formal_degree(SL2R, Weight((0,))) == 0
    assert formal_degree(SU21, Weight((0, 2))) == 0  # singular against alpha1
    lam = Weight((2, 0))
    assert formal_degree(CA2, lam + rho(positive_roots(CA2.datum))) == weyl_dim(CA2.datum, lam)


def test_formal_degree_matches_weyl_dim_when_shifted():
    for spec in [CA2, SU21]:
        for coords in [(0, 0), (2, 0), (2, 2)]:
            lam = Weight(coords)
            shifted = lam + rho(positive_roots(spec.datum))
            assert formal_degree(spec, shifted) == weyl_dim(spec.datum, lam)


def test_tau_e_values():
    assert tau_e(SL2R, gen_class(SL2R, (0,))) == 0  # limit of discrete series
    assert tau_e(SL2R, gen_class(SL2R, (6,))) == 3
    assert tau_e(SL2R, KClass.zero()) == 0
    x = gen_class(SL2R, (6,)) + gen_class(SL2R, (0,)).scaled(5)
    assert tau_e(SL2R, x) == 3


def test_continuity_sl2r():
    direction = TorusPoint.real_point([1.0])
    flat = continuity_check(SL2R, gen_class(SL2R, (0,)), direction)
    assert flat.passed
    assert abs(flat.limit.extrapolated) <= 1e-10
    heavy = continuity_check(SL2R, gen_class(SL2R, (6,)), direction)
    assert heavy.passed
    assert abs(abs(heavy.limit.extrapolated) - 3.0) <= 1e-6


def test_continuity_su21():
    key = generator_key(SU21, Weight((2, 2)))
    lam_hc = hc_parameter(SU21, key)
    expected = formal_degree(SU21, lam_hc)
    direction = TorusPoint.real_point([1.0, 0.618])
    # the rank-2 numerator vanishes to third order at e; start high enough
    # that the smallest samples stay clear of rounding noise
    report = continuity_check(SU21, KClass.generator(key), direction, start_scale=5e-2)
    assert report.passed
    assert abs(abs(report.limit.extrapolated) - float(expected)) <= 1e-6


def test_char_identity_residual():
    rng = random.Random(8)
    for spec in [SL2R, SU21, SP4R]:
        for _ in range(10):
            g = random_regular_point(spec.datum, rng)
            nu = Weight(tuple(2 * rng.randrange(-2, 3) for _ in range(spec.rank)))
            assert char_identity_check(spec, nu, g) <= 1e-10


def test_char_identity_compact_single_coset():
    rng = random.Random(18)
    g = random_regular_point(CA2.datum, rng)
    assert char_identity_check(CA2, Weight((2, 4)), g) == 0.0


def test_limit_low_level_order_degrades():
    direction = TorusPoint.real_point([1.0])
    report = limit_at_identity(lambda p: complex(1 + p.coords[0]), direction, levels=2)
    assert abs(report.extrapolated - 1.0) <= 1e-10
    with pytest.raises(Exception):
        limit_at_identity(lambda p: 1 + 0j, direction, levels=0)
