"""Named identity checks over the shipped presets.

Each check exercises one invariant of the library against an independent route
(brute-force oracle, combinatorial bookkeeping, or closed form) and returns a
CheckResult; the CLI ``check`` subcommand and the acceptance tests run these.
Preset-dependent checks accept a ``presets`` filter; with an empty selection
they report "not applicable".
"""

from __future__ import annotations

import inspect
import json
import math
import random
from dataclasses import dataclass

from .errors import ValidationError
from .ktrace import (
    class_is_zero,
    lds_character,
    lds_character_sum,
    random_regular_point,
    tau_class,
    tau_generator,
)
from .realform import (
    KClass,
    coset_reps,
    generator_key,
    hc_parameter,
    key_from_json,
    key_to_json,
    real_form,
    rho_n,
    weyl_k,
)
from .rootsys import (
    Weight,
    _matmul,
    build_datum,
    inversion_count,
    pairing,
    positive_roots,
    rho,
    weight_multiplicities,
    weyl_dim,
    weyl_group,
)
from .stable import (
    char_identity_check,
    continuity_check,
    formal_degree,
    lpacket_sum,
    stable_tau,
)
from .tannaka import canonical_sign, run_reconstruction
from .toruschar import (
    ConjugacyDescriptor,
    TorusPoint,
    ab_fixed_sum,
    char_quotient,
    eval_weight,
    negated_system,
    weyl_act_point,
    weyl_denominator,
    weyl_numerator,
)

DATUM_NAMES = ("A1", "A2", "B2", "C2", "G2")
PRESET_NAMES = ("sl2r", "su21", "sp4r", "compact(A1)", "compact(A2)")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def _na(name: str) -> CheckResult:
    return CheckResult(name, True, "not applicable to the selected presets")


def _use(presets, *available: str) -> tuple[str, ...]:
    if presets is None:
        return available
    wanted = {p.lower() for p in presets}
    return tuple(p for p in available if p.lower() in wanted)


def _small_keys(spec, count):
    out = []
    span = range(0, 16)
    if spec.rank == 1:
        candidates = [Weight((a,)) for a in span]
    else:
        candidates = [Weight((a, b)) for a in span for b in span]
    for lam in candidates:
        try:
            out.append(generator_key(spec, lam))
        except ValidationError:
            continue
        if len(out) == count:
            break
    return out


def check_weyl_orders() -> CheckResult:
    expected = {"A1": 2, "A2": 6, "B2": 8, "C2": 8, "G2": 12}
    bad = {
        name: weyl_group(build_datum(name)).order
        for name in expected
        if weyl_group(build_datum(name)).order != expected[name]
    }
    return _result(
        "weyl-group-orders", not bad, f"mismatches: {bad}" if bad else "A1,A2,B2,C2,G2 orders match"
    )


def check_sign_length() -> CheckResult:
    for name in DATUM_NAMES:
        datum = build_datum(name)
        for w in weyl_group(datum):
            if w.sign != (-1) ** w.length or w.length != inversion_count(datum, w):
                return _result("sign-vs-length", False, f"failure in {name}")
    return _result("sign-vs-length", True, "det = (-1)^length = inversion parity everywhere")


def check_multiplicity_totals() -> CheckResult:
    cases = {
        "A1": [Weight((2 * k,)) for k in range(6)],
        "A2": [Weight((2, 0)), Weight((2, 2)), Weight((4, 2))],
        "B2": [Weight((2, 2))],
        "C2": [Weight((2, 2))],
        "G2": [Weight((2, 0))],
    }
    for name, lams in cases.items():
        datum = build_datum(name)
        for lam in lams:
            if sum(weight_multiplicities(datum, lam).values()) != weyl_dim(datum, lam):
                return _result("multiplicity-totals", False, f"{name} {lam}")
    return _result("multiplicity-totals", True, "Freudenthal totals equal the dimension product")


def check_pairing_invariance(seed: int = 100) -> CheckResult:
    rng = random.Random(seed)
    for name in DATUM_NAMES:
        datum = build_datum(name)
        for _ in range(8):
            a = Weight(tuple(rng.randrange(-6, 7) for _ in range(datum.rank)))
            b = Weight(tuple(rng.randrange(-6, 7) for _ in range(datum.rank)))
            if pairing(datum, a, b) != pairing(datum, b, a):
                return _result("pairing-invariance", False, f"symmetry fails on {name}")
            for w in weyl_group(datum):
                if pairing(datum, w.apply(a), w.apply(b)) != pairing(datum, a, b):
                    return _result("pairing-invariance", False, f"invariance fails on {name}")
    return _result("pairing-invariance", True, "symmetric and Weyl-invariant (exact)")


def check_denominator_formula(points: int = 200, seed: int = 7) -> CheckResult:
    worst = 0.0
    for name in DATUM_NAMES:
        datum = build_datum(name)
        group = weyl_group(datum)
        pos = positive_roots(datum)
        r = rho(pos)
        rng = random.Random(seed)
        for _ in range(points):
            g = random_regular_point(datum, rng)
            worst = max(worst, abs(weyl_numerator(r, g, group) - weyl_denominator(g, pos)))
    return _result("denominator-formula", worst <= 1e-10, f"max |N(rho)-D| = {worst:.3e}")


def check_numerator_antisymmetry(seed: int = 8) -> CheckResult:
    rng = random.Random(seed)
    for name in ("A2", "C2"):
        datum = build_datum(name)
        group = weyl_group(datum)
        for _ in range(5):
            g = random_regular_point(datum, rng)
            mu = Weight(tuple(2 * rng.randrange(0, 4) for _ in range(datum.rank)))
            base = weyl_numerator(mu, g, group)
            for w in group:
                if abs(weyl_numerator(w.apply(mu), g, group) - w.sign * base) > 1e-10 * max(
                    1, abs(base)
                ):
                    return _result("numerator-antisymmetry", False, name)
    return _result("numerator-antisymmetry", True, "N(w mu) = sign(w) N(mu)")


def check_wedge_identity(points: int = 100, seed: int = 9, presets=None) -> CheckResult:
    selected = _use(presets, *PRESET_NAMES)
    if not selected:
        return _na("wedge-p-identity")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        m = spec.dim_gk // 2
        rng = random.Random(seed)
        for _ in range(points):
            g = random_regular_point(spec.datum, rng)
            lhs = complex(1.0)
            for alpha in spec.noncompact_positive:
                lhs *= (1 - eval_weight(alpha, g)) * (1 - eval_weight(-alpha, g))
            chi = weyl_denominator(g, spec.noncompact_positive)
            worst = max(worst, abs(lhs - (-1) ** m * chi * chi))
    return _result("wedge-p-identity", worst <= 1e-10, f"max residual = {worst:.3e}")


def check_char_oracle(points: int = 20, seed: int = 10, presets=None) -> CheckResult:
    all_cases = {
        "compact(A1)": [Weight((2 * k,)) for k in range(6)],
        "compact(A2)": [Weight((2, 0)), Weight((2, 2)), Weight((4, 2))],
    }
    selected = _use(presets, *all_cases)
    if not selected:
        return _na("character-oracle")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        datum = spec.datum
        group = weyl_group(datum)
        pos = positive_roots(datum)
        r = rho(pos)
        for lam in all_cases[preset]:
            table = weight_multiplicities(datum, lam)
            rng = random.Random(seed)
            for _ in range(points):
                g = random_regular_point(datum, rng)
                closed = char_quotient(lam + r, g, group, pos)
                brute_re = math.fsum(m * eval_weight(mu, g).real for mu, m in table.items())
                brute_im = math.fsum(m * eval_weight(mu, g).imag for mu, m in table.items())
                worst = max(worst, abs(closed - complex(brute_re, brute_im)))
    return _result(
        "character-oracle", worst <= 1e-9, f"max |quotient - Freudenthal sum| = {worst:.3e}"
    )


def check_ab_vs_quotient(points: int = 20, seed: int = 11, presets=None) -> CheckResult:
    selected = _use(presets, "compact(A1)", "compact(A2)")
    if not selected:
        return _na("fixed-point-vs-quotient")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        datum = spec.datum
        group = weyl_group(datum)
        pos = positive_roots(datum)
        r = rho(pos)
        rng = random.Random(seed)
        for _ in range(points):
            g = random_regular_point(datum, rng)
            nu = Weight(tuple(2 * rng.randrange(0, 3) for _ in range(datum.rank)))
            worst = max(
                worst,
                abs(ab_fixed_sum(nu, g, group, pos) - char_quotient(nu + r, g, group, pos)),
            )
    return _result("fixed-point-vs-quotient", worst <= 1e-9, f"max residual = {worst:.3e}")


def check_dual_path(points: int = 50, generators: int = 5, seed: int = 12, presets=None) -> CheckResult:
    selected = _use(presets, "sl2r", "su21", "sp4r", "compact(A2)")
    if not selected:
        return _na("dual-path")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        keys = _small_keys(spec, generators)
        rng = random.Random(seed)
        for _ in range(points):
            g = random_regular_point(spec.datum, rng)
            for key in keys:
                worst = max(worst, tau_generator(spec, key, g).agreement)
    return _result("dual-path", worst <= 1e-10, f"max |path_a - path_b| = {worst:.3e}")


def check_dolbeault_route(seed: int = 23, presets=None) -> CheckResult:
    # third route to tau: the fixed-point sum of the line-bundle model with
    # twisting weight lambda - rho_n over the compact Weyl group
    all_cases = {"sl2r": (4,), "su21": (2, 2), "sp4r": (2, 1), "compact(A2)": (2, 0)}
    selected = _use(presets, *all_cases)
    if not selected:
        return _na("dolbeault-route")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        key = generator_key(spec, Weight(all_cases[preset]))
        m = spec.dim_gk // 2
        nu = key.lam - rho_n(spec)
        rng = random.Random(seed)
        for _ in range(15):
            g = random_regular_point(spec.datum, rng)
            tau = tau_generator(spec, key, g).value
            local = (-1) ** m * spec.spin_sign * ab_fixed_sum(
                nu, g, weyl_k(spec), spec.positive_system
            )
            worst = max(worst, abs(tau - local))
    return _result("dolbeault-route", worst <= 1e-10, f"max |tau - fixed-point sum| = {worst:.3e}")


def check_wk_invariance(seed: int = 13, presets=None) -> CheckResult:
    selected = _use(presets, "su21", "sp4r", "compact(A2)")
    if not selected:
        return _na("wk-conjugation-invariance")
    for preset in selected:
        spec = real_form(preset)
        key = _small_keys(spec, 3)[-1]
        rng = random.Random(seed)
        for _ in range(8):
            g = random_regular_point(spec.datum, rng)
            base = tau_generator(spec, key, g).value
            for u in weyl_k(spec):
                moved = tau_generator(spec, key, weyl_act_point(u, g)).value
                if abs(moved - base) > 1e-12 * max(1.0, abs(base)):
                    return _result("wk-conjugation-invariance", False, preset)
    return _result("wk-conjugation-invariance", True, "tau(lam, u.g) = tau(lam, g) for u in W_K")


def check_linearity(seed: int = 14, presets=None) -> CheckResult:
    selected = _use(presets, "su21", "sl2r")
    if not selected:
        return _na("tau-linearity")
    for preset in selected:
        spec = real_form(preset)
        keys = _small_keys(spec, 4)
        x = KClass.generator(keys[0], 2) + KClass.generator(keys[2], -3)
        y = KClass.generator(keys[1]) + KClass.generator(keys[0], -1)
        rng = random.Random(seed)
        for _ in range(10):
            g = random_regular_point(spec.datum, rng)
            d = ConjugacyDescriptor.elliptic(g)
            lhs = tau_class(spec, x + y, d)
            rhs = tau_class(spec, x, d) + tau_class(spec, y, d)
            if abs(lhs - rhs) > 1e-12 * max(1.0, abs(lhs)):
                return _result("tau-linearity", False, f"additivity fails on {preset}")
    return _result("tau-linearity", True, "tau(x+y) = tau(x) + tau(y)")


def check_selberg_vanishing(classes: int = 100, seed: int = 15, presets=None) -> CheckResult:
    selected = _use(presets, "sl2r", "su21")
    if not selected:
        return _na("selberg-vanishing")
    rng = random.Random(seed)
    for preset in selected:
        spec = real_form(preset)
        keys = _small_keys(spec, 6)
        for _ in range(classes):
            chosen = rng.sample(keys, rng.randrange(1, 6))
            x = KClass.from_pairs((k, rng.choice([-3, -2, -1, 1, 2, 3])) for k in chosen)
            if tau_class(spec, x, ConjugacyDescriptor.non_elliptic()) != 0:
                return _result("selberg-vanishing", False, "non-elliptic not exactly zero")
            if tau_class(spec, x, ConjugacyDescriptor.unequal_rank_ambient()) != 0:
                return _result("selberg-vanishing", False, "unequal-rank not exactly zero")
    return _result("selberg-vanishing", True, "exact zero on non-elliptic and unequal-rank classes")


def check_injectivity(classes: int = 100, seed: int = 16, presets=None) -> CheckResult:
    selected = _use(presets, "sl2r", "su21")
    if not selected:
        return _na("dirac-injectivity")
    rng = random.Random(seed)
    for preset in selected:
        spec = real_form(preset)
        keys = _small_keys(spec, 6)
        for _ in range(classes):
            chosen = rng.sample(keys, rng.randrange(1, 6))
            x = KClass.from_pairs((k, rng.choice([-3, -2, -1, 1, 2, 3])) for k in chosen)
            verdict = class_is_zero(spec, x, samples=20, seed=rng.randrange(10**6))
            if verdict.is_zero:
                return _result("dirac-injectivity", False, f"false zero verdict on {preset}")
    zero = class_is_zero(real_form(selected[0]), KClass.zero())
    return _result(
        "dirac-injectivity",
        zero.is_zero,
        "every random nonzero class witnessed nonzero; zero class verdict zero",
    )


def check_coset_partition(presets=None) -> CheckResult:
    selected = _use(presets, *PRESET_NAMES)
    if not selected:
        return _na("coset-partition")
    for preset in selected:
        spec = real_form(preset)
        group = weyl_group(spec.datum)
        tiles = set()
        total = 0
        for v in coset_reps(spec):
            for u in weyl_k(spec):
                tiles.add(_matmul(u.matrix, v.matrix))
                total += 1
        if total != group.order or tiles != {w.matrix for w in group}:
            return _result("coset-partition", False, preset)
    return _result("coset-partition", True, "W_K translates of the reps tile W_G exactly")


def check_stable_invariance(seed: int = 17, presets=None) -> CheckResult:
    all_cases = {"sl2r": (4,), "su21": (2, 0)}
    selected = _use(presets, *all_cases)
    if not selected:
        return _na("stable-invariance")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        x = KClass.generator(generator_key(spec, Weight(all_cases[preset])))
        rng = random.Random(seed)
        for _ in range(6):
            g = random_regular_point(spec.datum, rng)
            base = stable_tau(spec, x, g)
            for w in weyl_group(spec.datum):
                worst = max(worst, abs(stable_tau(spec, x, weyl_act_point(w, g)) - base))
    return _result("stable-invariance", worst <= 1e-12, f"max |stable(w.g)-stable(g)| = {worst:.3e}")


def check_packet_stable(seed: int = 18, presets=None) -> CheckResult:
    all_cases = {"sl2r": [(0,), (6,)], "su21": [(2, 2)], "sp4r": [(0, 3)]}
    selected = _use(presets, *all_cases)
    if not selected:
        return _na("packet-stable-agreement")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        for coords in all_cases[preset]:
            key = generator_key(spec, Weight(coords))
            lam_hc = hc_parameter(spec, key)
            rng = random.Random(seed)
            for _ in range(10):
                g = random_regular_point(spec.datum, rng)
                worst = max(
                    worst,
                    abs(lpacket_sum(spec, lam_hc, g) - stable_tau(spec, KClass.generator(key), g)),
                )
    return _result("packet-stable-agreement", worst <= 1e-10, f"max residual = {worst:.3e}")


def continuity_direction(spec, rng, min_pairing: float = 0.25) -> TorusPoint:
    """Random ray direction with every root pairing bounded away from zero.

    Near-degenerate pairings push the alternating numerator into float noise at
    the smallest scales, so directions are redrawn until well-conditioned.
    """
    for _ in range(500):
        cand = tuple(rng.uniform(0.4, 1.0) for _ in range(spec.rank))
        worst = min(
            abs(math.fsum(f * t for f, t in zip(alpha.halved().coords2, cand)))
            for alpha in positive_roots(spec.datum)
        )
        if worst >= min_pairing:
            return TorusPoint.real_point(cand)
    raise ValidationError("could not draw a well-conditioned direction")


def check_continuity(seed: int = 19, presets=None) -> CheckResult:
    # start scales grow with the positive-root count: the numerator vanishes to
    # order |R^+| at the identity, so tiny scales would drown in rounding noise
    all_cases = {
        "sl2r": [((0,), 1e-2), ((6,), 1e-2)],
        "su21": [((2, 2), 5e-2)],
        "sp4r": [((0, 3), 2e-1)],
        "compact(A1)": [((2,), 1e-2)],
    }
    selected = _use(presets, *all_cases)
    if not selected:
        return _na("continuity-at-identity")
    rng = random.Random(seed)
    details = []
    for preset in selected:
        spec = real_form(preset)
        for coords, start in all_cases[preset]:
            x = KClass.generator(generator_key(spec, Weight(coords)))
            for _ in range(3):
                direction = continuity_direction(spec, rng)
                report = continuity_check(spec, x, direction, start_scale=start)
                if not report.passed:
                    return _result(
                        "continuity-at-identity",
                        False,
                        f"{preset} {coords}: |limit|={abs(report.limit.extrapolated):.8f} "
                        f"vs tau_e={report.tau_e_value}",
                    )
            details.append(f"{preset}{coords}->|{float(report.tau_e_value)}|")
    return _result("continuity-at-identity", True, "; ".join(details))


def check_formal_degree_consistency(presets=None) -> CheckResult:
    selected = _use(presets, "sl2r", "su21", "compact(A2)")
    if not selected:
        return _na("formal-degree-consistency")
    for preset in selected:
        spec = real_form(preset)
        if spec.rank == 1:
            for n in range(6):
                if formal_degree(spec, Weight((2 * n,))) != n:
                    return _result("formal-degree-consistency", False, f"{preset} n={n}")
        else:
            r = rho(positive_roots(spec.datum))
            for coords in ((0, 0), (2, 0), (2, 2)):
                lam = Weight(coords)
                if formal_degree(spec, lam + r) != weyl_dim(spec.datum, lam):
                    return _result("formal-degree-consistency", False, f"{preset} {coords}")
    return _result("formal-degree-consistency", True, "product formula matches the dimension oracle")


def check_char_identity(points: int = 50, seed: int = 20, presets=None) -> CheckResult:
    selected = _use(presets, "sl2r", "su21", "sp4r")
    if not selected:
        return _na("character-identity")
    worst = 0.0
    for preset in selected:
        spec = real_form(preset)
        rng = random.Random(seed)
        for _ in range(points):
            g = random_regular_point(spec.datum, rng)
            nu = Weight(tuple(2 * rng.randrange(-2, 3) for _ in range(spec.rank)))
            worst = max(worst, char_identity_check(spec, nu, g))
    return _result("character-identity", worst <= 1e-10, f"max residual = {worst:.3e}")


def check_lds_signs(seed: int = 21, presets=None) -> CheckResult:
    if not _use(presets, "sl2r"):
        return _na("lds-system-signs")
    spec = real_form("sl2r")
    pos = spec.positive_system
    rng = random.Random(seed)
    for _ in range(10):
        g = random_regular_point(spec.datum, rng)
        plus = lds_character(spec, Weight((0,)), pos, g)
        minus = lds_character(spec, Weight((0,)), negated_system(pos), g)
        if abs(abs(plus) - abs(minus)) > 1e-12 or abs(plus + minus) > 1e-12:
            return _result("lds-system-signs", False, "pairwise sign relation fails")
        if abs(lds_character_sum(spec, Weight((0,)), [pos, negated_system(pos)], g)) > 1e-12:
            return _result("lds-system-signs", False, "reducible induced character nonzero on T")
    return _result("lds-system-signs", True, "|lds| independent of the system; pair sum vanishes")


def check_tannaka(presets=None) -> CheckResult:
    selected = _use(presets, "compact(A1)", "su21", "sl2r")
    if not selected:
        return _na("tannaka-round-trip")
    if "compact(A1)" in selected:
        ca1 = real_form("compact(A1)")
        report = run_reconstruction(ca1, [generator_key(ca1, Weight((2 * k,))) for k in range(3)])
        if report.dims != {Weight((0,)): 1, Weight((2,)): 2, Weight((4,)): 3}:
            return _result("tannaka-round-trip", False, "compact(A1) dims wrong")
        if any(report.highest_weights[lab] != lab for lab in report.labels):
            return _result("tannaka-round-trip", False, "compact(A1) weights wrong")
    if "su21" in selected:
        su21 = real_form("su21")
        keys = [generator_key(su21, Weight(c)) for c in ((0, 0), (2, 0), (0, 2))]
        report = run_reconstruction(su21, keys)
        if report.dims != {Weight((0, 0)): 1, Weight((2, 0)): 2, Weight((0, 2)): 1}:
            return _result("tannaka-round-trip", False, "su21 dims wrong")
        if any(report.highest_weights[lab] != lab for lab in report.labels):
            return _result("tannaka-round-trip", False, "su21 weights wrong")
        expected = {canonical_sign(alpha) for alpha in su21.noncompact_positive}
        if report.noncompact_weights != expected:
            return _result("tannaka-round-trip", False, "su21 noncompact set wrong")
    if "sl2r" in selected:
        sl2r = real_form("sl2r")
        keys = [generator_key(sl2r, Weight((2 * k,))) for k in range(3)]
        report = run_reconstruction(sl2r, keys)
        if report.noncompact_weights != {canonical_sign(sl2r.noncompact_positive[0])}:
            return _result("tannaka-round-trip", False, "sl2r noncompact set wrong")
    return _result("tannaka-round-trip", True, "dims, weights, and noncompact sets recovered")


def check_serialization() -> CheckResult:
    spec = real_form("su21")
    key = generator_key(spec, Weight((2, 0)))
    if key_from_json(spec, key_to_json(key)) != key:
        return _result("serialization-round-trip", False, "generator key")
    return _result("serialization-round-trip", True, "generator keys round-trip")


def check_compact_generators(presets=None) -> CheckResult:
    selected = _use(presets, "compact(A1)", "compact(A2)")
    if not selected:
        return _na("compact-generators")
    for preset in selected:
        spec = real_form(preset)
        r = rho(positive_roots(spec.datum))
        span = range(0, 6, 2)
        lams = [Weight((a,)) for a in span] if spec.rank == 1 else [
            Weight((a, b)) for a in span for b in span
        ]
        for lam in lams:
            try:
                key = generator_key(spec, lam)
            except ValidationError:
                return _result("compact-generators", False, f"{preset} rejected {lam}")
            if hc_parameter(spec, key) != lam + r:
                return _result("compact-generators", False, f"{preset} parameter of {lam}")
    return _result(
        "compact-generators", True, "dominant integral weights index compact presets; HC = lam + rho"
    )


def check_dims_scale_invariance(presets=None) -> CheckResult:
    if not _use(presets, "compact(A1)"):
        return _na("dims-scale-invariance")
    import dataclasses

    from .tannaka import recover_dims, synth_family

    spec = real_form("compact(A1)")
    keys = [generator_key(spec, Weight((2 * k,))) for k in range(3)]
    family = synth_family(spec, keys)
    dims = recover_dims(family)
    factor = [1.7 + 0.3 * math.cos(i) for i in range(len(family.grid))]
    scaled = dataclasses.replace(
        family,
        values={
            lab: tuple(v * f for v, f in zip(vals, factor))
            for lab, vals in family.values.items()
        },
    )
    if recover_dims(scaled) != dims:
        return _result("dims-scale-invariance", False, "common factor changed the dims")
    return _result("dims-scale-invariance", True, "ratio limits ignore a common factor")


def check_fourier_extraction(presets=None) -> CheckResult:
    if not _use(presets, "compact(A2)"):
        return _na("fourier-extraction")
    from .tannaka import fourier_multiplicities, recover_characters, recover_dims, synth_family

    spec = real_form("compact(A2)")
    keys = [generator_key(spec, Weight(c)) for c in ((0, 0), (2, 2))]
    family = synth_family(spec, keys, axis_count=24)
    chars = recover_characters(family, recover_dims(family))
    table = fourier_multiplicities(family, chars.char_lattice[Weight((2, 2))], bound=4)
    expected = weight_multiplicities(spec.datum, Weight((2, 2)))
    if table != expected:
        return _result("fourier-extraction", False, "adjoint multiplicities differ")
    return _result("fourier-extraction", True, "grid Fourier table matches the Freudenthal oracle")


def check_cli_determinism() -> CheckResult:
    import contextlib
    import io

    from .cli import main as cli_main

    def run_once() -> str:
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            code = cli_main(["tau", "--preset", "su21", "--lambda", "1,0", "--t", "1/5,2/7"])
        if code != 0:
            raise ValidationError("tau subcommand failed")
        return buffer.getvalue()

    first, second = run_once(), run_once()
    if first != second:
        return _result("cli-determinism", False, "outputs differ between identical runs")
    json.loads(first)
    return _result("cli-determinism", True, "byte-identical valid JSON on repeated runs")


def check_eval_modulus(seed: int = 22) -> CheckResult:
    rng = random.Random(seed)
    datum = build_datum("B2")
    worst = 0.0
    for _ in range(50):
        g = random_regular_point(datum, rng)
        lam = Weight(tuple(rng.randrange(-9, 10) for _ in range(2)))
        worst = max(worst, abs(abs(eval_weight(lam, g)) - 1))
    return _result("exponential-modulus", worst <= 1e-15, f"max | |e^lam| - 1 | = {worst:.2e}")


ALL_CHECKS = (
    check_weyl_orders,
    check_sign_length,
    check_multiplicity_totals,
    check_pairing_invariance,
    check_denominator_formula,
    check_numerator_antisymmetry,
    check_wedge_identity,
    check_char_oracle,
    check_ab_vs_quotient,
    check_dual_path,
    check_dolbeault_route,
    check_wk_invariance,
    check_linearity,
    check_selberg_vanishing,
    check_injectivity,
    check_coset_partition,
    check_stable_invariance,
    check_packet_stable,
    check_continuity,
    check_formal_degree_consistency,
    check_char_identity,
    check_lds_signs,
    check_tannaka,
    check_serialization,
    check_compact_generators,
    check_dims_scale_invariance,
    check_fourier_extraction,
    check_cli_determinism,
    check_eval_modulus,
)


def run_checks(names: list[str] | None = None, presets: list[str] | None = None) -> list[CheckResult]:
    selected = ALL_CHECKS
    if names:
        wanted = set(names)
        selected = [
            c
            for c in ALL_CHECKS
            if c.__name__.removeprefix("check_") in wanted or c.__name__ in wanted
        ]
        if not selected:
            raise ValidationError(f"no checks match {names}")
    results = []
    for check in selected:
        if presets is not None and "presets" in inspect.signature(check).parameters:
            results.append(check(presets=presets))
        else:
            results.append(check())
    return results
