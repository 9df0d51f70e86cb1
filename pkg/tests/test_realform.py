"""Real-form specs, coset representatives, generator keys, and K-classes."""

import pytest

from orbint.errors import ValidationError
from orbint.realform import (
    KClass,
    build_real_form,
    coset_reps,
    generator_key,
    hc_parameter,
    is_regular_param,
    kclass_from_json,
    kclass_to_json,
    key_from_json,
    key_to_json,
    real_form,
    rho_c,
    rho_n,
    weyl_k,
)
from orbint.rootsys import (
    Weight,
    build_datum,
    positive_roots,
    weyl_group,
    _matmul,
)


def test_preset_sl2r():
    spec = real_form("sl2r")
    assert spec.dim_gk == 2
    assert weyl_k(spec).order == 1
    assert spec.spin_sign == -1
    assert rho_c(spec) == Weight((0,))
    assert rho_n(spec) == Weight((2,))


def test_preset_su21():
    spec = real_form("su21")
    assert spec.dim_gk == 4
    assert weyl_k(spec).order == 2
    assert len(coset_reps(spec)) == 3
    assert rho_c(spec) == Weight((2, -1))
    assert rho_n(spec).coords2 == (0, 3)


def test_preset_sp4r():
    spec = real_form("sp4r")
    assert spec.dim_gk == 6
    assert weyl_k(spec).order == 2
    assert len(coset_reps(spec)) == 4
    # the compact simple root is the short one
    alpha1 = positive_roots(spec.datum)[0]
    assert spec.compact_positive == (alpha1,)


def test_preset_compact():
    spec = real_form("compact(A2)")
    assert spec.dim_gk == 0
    assert spec.is_compact
    assert weyl_k(spec).order == 6
    assert len(coset_reps(spec)) == 1
    assert rho_c(spec) == Weight((2, 2))


def test_non_symmetric_compact_set_rejected():
    datum = build_datum("A2")
    pos = positive_roots(datum)
    highest = pos.index(Weight((2, 2)))
    with pytest.raises(ValidationError):
        build_real_form(datum, (highest,))  # alpha1+alpha2 without its negative


def test_non_closed_compact_set_rejected():
    datum = build_datum("A2")
    pos = positive_roots(datum)
    n = len(pos)
    i1 = pos.index(Weight((4, -2)))
    i2 = pos.index(Weight((-2, 4)))
    with pytest.raises(ValidationError):
        # alpha1 and alpha2 compact but alpha1+alpha2 not
        build_real_form(datum, (i1, i2, i1 + n, i2 + n))


def test_coset_translates_tile_weyl_group():
    for preset in ["sl2r", "su21", "sp4r", "compact(A2)"]:
        spec = real_form(preset)
        group = weyl_group(spec.datum)
        seen = set()
        for v in coset_reps(spec):
            for u in weyl_k(spec):
                seen.add(_matmul(u.matrix, v.matrix))
        assert len(seen) == group.order
        assert seen == {w.matrix for w in group}


def test_coset_reps_have_minimal_length():
    spec = real_form("su21")
    for v in coset_reps(spec):
        lengths = []
        for w in weyl_group(spec.datum):
            if any(_matmul(u.matrix, v.matrix) == w.matrix for u in weyl_k(spec)):
                lengths.append(w.length)
        assert v.length == min(lengths)


def test_generator_key_validation():
    sl2r = real_form("sl2r")
    generator_key(sl2r, Weight((0,)))
    generator_key(sl2r, Weight((6,)))
    with pytest.raises(ValidationError):
        generator_key(sl2r, Weight((1,)))  # off the integral lattice
    su21 = real_form("su21")
    generator_key(su21, Weight((0, 0)))
    generator_key(su21, Weight((2, 0)))
    with pytest.raises(ValidationError):
        generator_key(su21, Weight((-2, 0)))  # not dominant for alpha1
    sp4r = real_form("sp4r")
    generator_key(sp4r, Weight((0, 1)))  # half-integral second coordinate
    with pytest.raises(ValidationError):
        generator_key(sp4r, Weight((0, 0)))  # spin descent fails


def test_hc_parameter_and_regularity():
    sl2r = real_form("sl2r")
    key0 = generator_key(sl2r, Weight((0,)))
    assert hc_parameter(sl2r, key0) == Weight((0,))
    assert not is_regular_param(sl2r, hc_parameter(sl2r, key0))
    assert is_regular_param(sl2r, Weight((6,)))

    ca1 = real_form("compact(A1)")
    key = generator_key(ca1, Weight((2,)))
    assert hc_parameter(ca1, key) == Weight((4,))

    su21 = real_form("su21")
    key = generator_key(su21, Weight((0, 0)))
    assert hc_parameter(su21, key) == rho_c(su21)
    assert is_regular_param(su21, Weight((2, 2)))


def test_compact_preset_keys_are_all_dominant_integral():
    spec = real_form("compact(A2)")
    for coords in [(0, 0), (2, 0), (0, 2), (2, 2), (4, 2)]:
        key = generator_key(spec, Weight(coords))
        assert hc_parameter(spec, key) == Weight(coords) + Weight((2, 2))


def test_kclass_arithmetic():
    spec = real_form("sl2r")
    k0 = generator_key(spec, Weight((0,)))
    k2 = generator_key(spec, Weight((2,)))
    x = KClass.generator(k0) + KClass.generator(k2, 3)
    assert len(x.terms) == 2
    assert (x - x).is_zero
    assert (x + (-x)).is_zero
    assert x.scaled(0).is_zero
    y = KClass.generator(k0, -1)
    assert (x + y).terms == ((k2, 3),)


def test_serialization_round_trips():
    spec = real_form("su21")
    key = generator_key(spec, Weight((2, 0)))
    assert key_from_json(spec, key_to_json(key)) == key
    x = KClass.generator(key, 2) + KClass.generator(generator_key(spec, Weight((0, 0))), -1)
    assert kclass_from_json(spec, kclass_to_json(x)) == x
    with pytest.raises(ValidationError):
        kclass_from_json(spec, [{"lambda2": [1, 0], "coeff": 1}])  # off-lattice


def test_sl2r_coset_count():
    spec = real_form("sl2r")
    assert len(coset_reps(spec)) == 2
