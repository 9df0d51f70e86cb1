"""Command-line front end: preset catalogue, evaluation commands, identity
suite, and deterministic JSON output.

Exit codes: 0 success, 2 validation error, 3 singular evaluation point,
4 identity-suite failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

from . import jsonio
from .errors import LimitPathError, ReconstructionError, SingularPointError, ValidationError
from .ktrace import lds_character, lds_character_sum, tau_generator, tau_value_to_json
from .realform import (
    KClass,
    RealFormSpec,
    build_real_form,
    generator_key,
    kclass_from_json,
    real_form,
)
from .rootsys import Weight, build_datum, positive_roots, weight_from_fundamental, weyl_group
from .stable import continuity_check, formal_degree, lpacket_sum, stable_tau
from .tannaka import run_reconstruction
from .toruschar import (
    TorusPoint,
    negated_system,
    parse_torus_point,
    serialize_torus_point,
    transformed_system,
)
from .verify import run_checks


@dataclass
class Config:
    """CLI configuration; accepted configs round-trip through JSON unchanged."""

    preset: str | None = None
    datum: str | None = None
    matrix: list | None = None
    symmetrizer: list | None = None
    compact_indices: list | None = None
    spin_sign: int | None = None
    lattice: str | None = None
    verbosity: int = 0

    def to_json(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items()}

    @staticmethod
    def from_json(data: dict) -> "Config":
        if not isinstance(data, dict):
            raise ValidationError("config must be a JSON object")
        allowed = {f.name for f in dataclasses.fields(Config)}
        unknown = set(data) - allowed
        if unknown:
            raise ValidationError(f"unknown config fields {sorted(unknown)}")
        return Config(**data)


def load_config(path: str | None) -> Config:
    if path is None:
        return Config()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return Config.from_json(json.load(fh))
    except OSError as err:
        raise ValidationError(f"cannot read config {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ValidationError(f"config {path} is not valid JSON: {err}") from err


def merge_args(config: Config, args: argparse.Namespace) -> Config:
    out = dataclasses.replace(config)
    for field in ("preset", "datum", "spin_sign", "lattice"):
        value = getattr(args, field, None)
        if value is not None:
            setattr(out, field, value)
    if getattr(args, "matrix", None) is not None:
        out.matrix = _parse_matrix(args.matrix)
    if getattr(args, "symmetrizer", None) is not None:
        out.symmetrizer = [t.strip() for t in args.symmetrizer.split(",")]
    if getattr(args, "compact_indices", None) is not None:
        out.compact_indices = [int(t) for t in args.compact_indices.split(",") if t.strip()]
    if getattr(args, "verbose", False):
        out.verbosity = max(out.verbosity, 1)
    return out


def _parse_matrix(text: str) -> list:
    rows = [r for r in text.split(";") if r.strip()]
    return [[int(x) for x in row.split(",")] for row in rows]


def resolve_datum(config: Config):
    if config.matrix is not None:
        return build_datum(config.matrix, config.symmetrizer)
    if config.datum is not None:
        return build_datum(config.datum)
    if config.preset is not None:
        return resolve_spec(config).datum
    raise ValidationError("no Cartan datum given (use --type, --matrix, or a preset)")


def resolve_spec(config: Config) -> RealFormSpec:
    if config.preset is not None:
        spec = real_form(config.preset)
    elif config.compact_indices is not None:
        spec = build_real_form(
            resolve_datum(dataclasses.replace(config, preset=None, compact_indices=None)),
            config.compact_indices,
        )
    else:
        raise ValidationError("no real form given (use --preset or --compact-indices)")
    if config.spin_sign is not None:
        if config.spin_sign not in (1, -1):
            raise ValidationError("spin_sign must be +1 or -1")
        spec = dataclasses.replace(spec, spin_sign=int(config.spin_sign))
    if config.lattice is not None:
        from .realform import LATTICES

        if config.lattice not in LATTICES:
            raise ValidationError(f"unknown character lattice {config.lattice!r}")
        spec = dataclasses.replace(spec, lattice=config.lattice)
    return spec


def parse_weight(text: str) -> Weight:
    return weight_from_fundamental(t.strip() for t in text.split(",") if t.strip())


def parse_class(spec: RealFormSpec, args) -> KClass:
    if getattr(args, "kclass", None):
        try:
            data = json.loads(args.kclass)
        except json.JSONDecodeError as err:
            raise ValidationError(f"--class is not valid JSON: {err}") from err
        return kclass_from_json(spec, data)
    if getattr(args, "lam", None):
        return KClass.generator(generator_key(spec, parse_weight(args.lam)))
    raise ValidationError("give --lambda or --class")


def _complex_record(z: complex) -> complex:
    return complex(z)


def emit(obj) -> None:
    sys.stdout.write(jsonio.dumps(obj) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_datum(config: Config, args) -> int:
    datum = resolve_datum(config)
    pos = positive_roots(datum)
    emit(
        {
            "name": datum.name,
            "rank": datum.rank,
            "cartan": [list(row) for row in datum.cartan],
            "symmetrizer": [str(d) for d in datum.symmetrizer],
            "positive_roots2": [list(r.coords2) for r in pos],
            "weyl_order": weyl_group(datum).order,
        }
    )
    return 0


def cmd_weyl(config: Config, args) -> int:
    datum = resolve_datum(config)
    group = weyl_group(datum)
    lengths: dict[int, int] = {}
    for w in group:
        lengths[w.length] = lengths.get(w.length, 0) + 1
    record = {
        "order": group.order,
        "length_histogram": {str(k): lengths[k] for k in sorted(lengths)},
    }
    if config.verbosity:
        record["elements"] = [
            {"matrix": [list(row) for row in w.matrix], "sign": w.sign, "length": w.length}
            for w in group
        ]
    emit(record)
    return 0


def _tau_record(spec: RealFormSpec, lam: Weight, g: TorusPoint) -> dict:
    value = tau_generator(spec, generator_key(spec, lam), g)
    record = {"lambda2": list(lam.coords2), "t": serialize_torus_point(g)}
    record.update(tau_value_to_json(value))
    return record


def cmd_tau(config: Config, args) -> int:
    spec = resolve_spec(config)
    g = parse_torus_point(args.t)
    emit(_tau_record(spec, parse_weight(args.lam), g))
    return 0


def cmd_stable(config: Config, args) -> int:
    spec = resolve_spec(config)
    g = parse_torus_point(args.t)
    x = parse_class(spec, args)
    emit({"t": serialize_torus_point(g), "value": _complex_record(stable_tau(spec, x, g))})
    return 0


def cmd_packet(config: Config, args) -> int:
    spec = resolve_spec(config)
    g = parse_torus_point(args.t)
    lam_hc = parse_weight(args.lam_hc)
    emit(
        {
            "Lambda2": list(lam_hc.coords2),
            "t": serialize_torus_point(g),
            "value": _complex_record(lpacket_sum(spec, lam_hc, g)),
        }
    )
    return 0


def cmd_limit(config: Config, args) -> int:
    spec = resolve_spec(config)
    x = parse_class(spec, args)
    direction = parse_torus_point(args.direction)
    report = continuity_check(
        spec, x, direction, start_scale=args.start_scale, levels=args.levels
    )
    emit(
        {
            "direction": serialize_torus_point(report.limit.direction),
            "samples": [
                {"scale": s, "value": _complex_record(v)} for s, v in report.limit.samples
            ],
            "extrapolated": _complex_record(report.limit.extrapolated),
            "residual": report.limit.residual,
            "tau_e": report.tau_e_value,
            "deviation": report.deviation,
            "passed": report.passed,
        }
    )
    return 0


def _parse_systems(spec: RealFormSpec, text: str):
    pos = spec.positive_system
    group = weyl_group(spec.datum)
    systems = []
    for token in (t.strip() for t in text.split(",") if t.strip()):
        if token in ("id", "+"):
            systems.append(pos)
        elif token in ("neg", "-"):
            systems.append(negated_system(pos))
        elif token.startswith("w") and token[1:].isdigit():
            index = int(token[1:])
            if index >= group.order:
                raise ValidationError(f"element index {index} out of range")
            systems.append(transformed_system(group.elements[index], pos))
        else:
            raise ValidationError(f"unknown positive-system token {token!r}")
    if not systems:
        raise ValidationError("no positive systems given")
    return systems


def cmd_schmid(config: Config, args) -> int:
    spec = resolve_spec(config)
    g = parse_torus_point(args.t)
    lam_hc = parse_weight(args.lam_hc)
    systems = _parse_systems(spec, args.systems)
    terms = [lds_character(spec, lam_hc, system, g) for system in systems]
    emit(
        {
            "Lambda2": list(lam_hc.coords2),
            "t": serialize_torus_point(g),
            "terms": [_complex_record(v) for v in terms],
            "value": _complex_record(lds_character_sum(spec, lam_hc, systems, g)),
        }
    )
    return 0


def cmd_tannaka(config: Config, args) -> int:
    spec = resolve_spec(config)
    keys = [
        generator_key(spec, parse_weight(token))
        for token in args.lambdas.split(";")
        if token.strip()
    ]
    report = run_reconstruction(
        spec, keys, axis_count=args.axis_count, weight_bound=args.bound,
        candidate_bound=args.candidate_bound,
    )
    emit(
        {
            "labels": [list(lab.coords2) for lab in report.labels],
            "dims": [
                {"lambda2": list(lab.coords2), "dim": report.dims[lab]}
                for lab in report.labels
            ],
            "reference_label2": list(report.reference_label.coords2),
            "highest_weights": [
                {"lambda2": list(lab.coords2), "weight2": list(report.highest_weights[lab].coords2)}
                for lab in report.labels
            ],
            "noncompact_weights2": sorted(
                [list(w.coords2) for w in report.noncompact_weights]
            ),
            "noncompact_residual": report.noncompact_residual,
            "spin_power": report.spin_power,
        }
    )
    return 0


def cmd_demo_sl2(config: Config, args) -> int:
    import math

    spec = real_form("sl2r")
    g = parse_torus_point(args.t)
    if not g.exact:
        raise ValidationError("demo expects an exact rational t")
    phi = 2 * math.pi * float(g.coords[0])
    expected = 1 / (2j * math.sin(phi))
    record = _tau_record(spec, Weight((0,)), g)
    key = generator_key(spec, Weight((0,)))
    x = KClass.generator(key)
    pos = spec.positive_system
    emit(
        {
            "t": serialize_torus_point(g),
            "phi": phi,
            "tau": record,
            "expected": _complex_record(expected),
            "abs_error": abs(record["value"] - expected),
            "stable": _complex_record(stable_tau(spec, x, g)),
            "lds_plus": _complex_record(lds_character(spec, Weight((0,)), pos, g)),
            "lds_minus": _complex_record(lds_character(spec, Weight((0,)), negated_system(pos), g)),
            "packet_sum": _complex_record(lds_character_sum(
                spec, Weight((0,)), [pos, negated_system(pos)], g
            )),
            "formal_degree": formal_degree(spec, Weight((0,))),
        }
    )
    return 0


def cmd_check(config: Config, args) -> int:
    names = [t.strip() for t in args.only.split(",")] if args.only else None
    presets = [config.preset] if config.preset else None
    results = run_checks(names, presets)
    for r in results:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
    emit(
        {
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
            ],
            "all_passed": all(r.passed for r in results),
        }
    )
    return 0 if all(r.passed for r in results) else 4


# ---------------------------------------------------------------------------

def _add_spec_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="real-form preset (sl2r, su21, sp4r, compact(X))")
    parser.add_argument("--type", dest="datum", help="Cartan type name, e.g. A2")
    parser.add_argument("--matrix", help="explicit Cartan matrix, rows ; separated")
    parser.add_argument("--symmetrizer", help="comma-separated positive rationals")
    parser.add_argument("--compact-indices", dest="compact_indices",
                        help="comma-separated indices into all_roots(datum)")
    parser.add_argument("--spin-sign", dest="spin_sign", type=int, choices=(1, -1))
    parser.add_argument("--lattice", choices=("spin_descent", "integral"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbint",
        description="Orbital-integral functionals on K-theory generators from root data",
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("datum", help="describe a Cartan datum")
    _add_spec_options(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("weyl", help="Weyl group summary")
    _add_spec_options(p)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("tau", help="orbital-integral value on one generator")
    _add_spec_options(p)
    p.add_argument("--lambda", dest="lam", required=True,
                   help="generator highest weight, fundamental coordinates")
    p.add_argument("--t", required=True, help="torus point, e.g. 1/5 or 0.2,0.3")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("stable", help="stable orbital integral of a class")
    _add_spec_options(p)
    p.add_argument("--lambda", dest="lam", help="single-generator class")
    p.add_argument("--class", dest="kclass", help="JSON list of {lambda2, coeff}")
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("packet", help="L-packet character sum at a parameter")
    _add_spec_options(p)
    p.add_argument("--Lambda", dest="lam_hc", required=True,
                   help="Harish-Chandra parameter, fundamental coordinates")
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_packet)

    p = sub.add_parser("limit", help="near-identity limit of the stable integral")
    _add_spec_options(p)
    p.add_argument("--lambda", dest="lam", help="single-generator class")
    p.add_argument("--class", dest="kclass", help="JSON list of {lambda2, coeff}")
    p.add_argument("--direction", required=True, help="real direction vector")
    p.add_argument("--start-scale", dest="start_scale", type=float, default=1e-2)
    p.add_argument("--levels", type=int, default=6)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("schmid", help="sum of characters over positive systems")
    _add_spec_options(p)
    p.add_argument("--Lambda", dest="lam_hc", required=True)
    p.add_argument("--systems", default="id",
                   help="comma list of id|neg|w<k> (w<k>: k-th Weyl element applied to R+)")
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_schmid)

    p = sub.add_parser("tannaka", help="synthesize a tau-family and reconstruct it")
    _add_spec_options(p)
    p.add_argument("--lambdas", required=True,
                   help="semicolon-separated generator weights, e.g. 0,0;1,0;0,1")
    p.add_argument("--axis-count", dest="axis_count", type=int, default=None)
    p.add_argument("--bound", type=int, default=6, help="highest-weight search box")
    p.add_argument("--candidate-bound", dest="candidate_bound", type=int, default=3)
    p.set_defaults(func=cmd_tannaka)

    p = sub.add_parser("demo-sl2", help="the rank-one worked example end to end")
    p.add_argument("--t", default="1/5")
    p.set_defaults(func=cmd_demo_sl2)

    p = sub.add_parser("check", help="run the identity suite")
    p.add_argument("--preset", help="restrict preset-dependent checks to one preset")
    p.add_argument("--only", help="comma-separated check names")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = merge_args(load_config(args.config), args)
        return args.func(config, args)
    except SingularPointError as err:
        sys.stderr.write(f"singular evaluation point: {err}\n")
        return 3
    except LimitPathError as err:
        sys.stderr.write(f"singular limit path: {err}\n")
        return 3
    except (ValidationError, ReconstructionError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
