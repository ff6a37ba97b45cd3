"""Command-line interface.

Subcommands mirror the pipeline stages: validate spine files, print
state sums, emit ideal generators, compute or load the cached Groebner
basis, reduce state sums to normal forms, build full invariant reports,
evaluate at the configured point, report degree bounds, run the radical
suite, and partition manifolds by invariant.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .beideal import DEDUP_CONVENTIONS, generate_ideal
from .cache import Cache, default_cache_dir, hash_text
from .config import ConfigError, SystemConfig, load_config
from .groebner import ResourceLimitExceeded, ResourceLimits, is_groebner
from .invariant import (InvariantPipeline, MixedSystems, VertexCountError,
                        compare_partition, degree_bound, epsilon_evaluate,
                        multiplicativity_check, radical_suite, render_report)
from .poly import Polynomial
from .spine import (SpineParseError, SpineValidationError, build_spine,
                    read_spine_file, spine_stats)
from .statesum import state_sum_detailed

STRETCH_GENERATOR_LIMIT = 1000


def _add_common(p: argparse.ArgumentParser, config_required: bool = True
                ) -> None:
    p.add_argument("--config", required=config_required,
                   help="system configuration file")
    p.add_argument("--cache-dir", default=None,
                   help=f"cache root (default {default_cache_dir()})")
    p.add_argument("--max-seconds", type=float, default=3600.0,
                   help="wall-clock budget for basis computations")
    p.add_argument("--max-pairs", type=int, default=2_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strategy", default="normal",
                   choices=("normal", "first"))
    p.add_argument("--stretch", action="store_true",
                   help="allow basis runs on very large generator sets")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tvforge",
        description="Ideal Turaev-Viro invariants from Matveev-coded spines")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check spine files, report V/E/F")
    p.add_argument("spines", nargs="+")

    p = sub.add_parser("statesum", help="print state-sum polynomials")
    _add_common(p)
    p.add_argument("spines", nargs="+")

    p = sub.add_parser("ideal", help="emit the ideal generators")
    _add_common(p)
    p.add_argument("--dedup", default="sign", choices=DEDUP_CONVENTIONS)
    p.add_argument("--out", default=None, help="write generators to a file")

    p = sub.add_parser("groebner", help="compute or load the reduced basis")
    _add_common(p)

    p = sub.add_parser("nf", help="normal forms of spine state sums")
    _add_common(p)
    p.add_argument("spines", nargs="+")

    p = sub.add_parser("invariant", help="full invariant report table")
    _add_common(p)
    p.add_argument("spines", nargs="+")
    p.add_argument("--jsonl", default=None,
                   help="also write machine-readable records here")
    p.add_argument("--eval", action="store_true",
                   help="include the configured evaluation point")

    p = sub.add_parser("eval", help="evaluate invariants at the eval point")
    _add_common(p)
    p.add_argument("spines", nargs="+")

    p = sub.add_parser("bound", help="complexity lower-bound certificates")
    _add_common(p)
    p.add_argument("spines", nargs="+")

    p = sub.add_parser("radical", help="radical containment/membership suite")
    _add_common(p)
    p.add_argument("--radical-file", required=True,
                   help="candidate radical basis, one polynomial per line")

    p = sub.add_parser("partition", help="partition spines by invariant")
    _add_common(p)
    p.add_argument("spines", nargs="+")
    return ap


def _pipeline(args) -> InvariantPipeline:
    config = load_config(args.config)
    cache = Cache(args.cache_dir) if args.cache_dir else Cache()
    limits = ResourceLimits(max_pairs=args.max_pairs,
                            max_seconds=args.max_seconds)
    pipe = InvariantPipeline(config, cache=cache, limits=limits,
                             strategy=args.strategy)
    return pipe


def _guard_stretch(pipe: InvariantPipeline, args) -> None:
    n = len(pipe.generators())
    if n > STRETCH_GENERATOR_LIMIT and not args.stretch:
        raise SystemExit(
            f"error: {n} generators exceed the desk-scale limit "
            f"({STRETCH_GENERATOR_LIMIT}); re-run with --stretch to "
            f"confirm a long basis computation")


def _load_spines(paths):
    out = []
    for path in paths:
        out.extend(read_spine_file(path))
    return out


def cmd_validate(args) -> int:
    status = 0
    for path in args.spines:
        try:
            entries = read_spine_file(path)
        except (SpineParseError, SpineValidationError) as exc:
            print(f"{path}: INVALID: {exc}", file=sys.stderr)
            status = 3
            continue
        for label, code in entries:
            try:
                sp = build_spine(code)
            except SpineValidationError as exc:
                print(f"{path}: {label}: INVALID: {exc}", file=sys.stderr)
                status = 3
                continue
            v, e, f, euler, closed = spine_stats(sp)
            note = "" if closed else "  [not closed-consistent]"
            print(f"{path}: {label}: V={v} E={e} F={f} euler={euler}{note}")
    return status


def cmd_statesum(args) -> int:
    pipe = _pipeline(args)
    for label, code in _load_spines(args.spines):
        sp = build_spine(code)
        poly, stats = state_sum_detailed(sp, pipe.rsys,
                                         workers=args.workers)
        print(f"{label}: {poly.canonical_str(pipe.order)}")
        print(f"  colourings={stats.colourings} pruned={stats.pruned} "
              f"terms={stats.terms}")
    return 0


def cmd_ideal(args) -> int:
    pipe = _pipeline(args)
    gens = generate_ideal(pipe.rsys, dedup=args.dedup)
    if pipe.config.assumptions.augment_variable:
        from .beideal import augment_bridge
        gens = augment_bridge(gens, pipe.load_bridge(), pipe.rsys)
    print(f"{pipe.config.system.name}: {len(gens)} generators "
          f"(dedup={args.dedup})")
    if args.out:
        lines = [f"#system {pipe.config.system.name}",
                 f"#config {hash_text(pipe.config.raw_text)}",
                 f"#dedup {args.dedup}",
                 "#vars " + ",".join(pipe.order.registry.names)]
        lines += [g.canonical_str(pipe.order) for g in gens]
        Path(args.out).write_text("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return 0


def cmd_groebner(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    cached = pipe.cache.load_basis(pipe.source_hash())
    gb = pipe.basis()
    state = "cached" if cached is not None else "computed"
    print(f"{pipe.config.system.name}: reduced basis of {len(gb)} "
          f"polynomials ({state}); source {gb.source}")
    print(f"cache file: {pipe.cache._basis_path(gb.source)}")
    return 0


def cmd_nf(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    for label, code in _load_spines(args.spines):
        rec = pipe.record(build_spine(code), label)
        print(f"{label}: {rec.normal_form.canonical_str(pipe.order)}")
    return 0


def cmd_invariant(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    entries = _load_spines(args.spines)
    spines = [build_spine(code) for _, code in entries]
    records = [pipe.record(sp, label)
               for (label, _), sp in zip(entries, spines)]
    evals = None
    if args.eval:
        point = pipe.eval_point()
        if point is None:
            print("error: config has no [eval] section", file=sys.stderr)
            return 2
        gb = pipe.basis()
        evals = {r.label: point.algebra.to_str(
            epsilon_evaluate(r, point, gb)) for r in records}
    print(render_report(records, spines, pipe.order, evaluations=evals))
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            for r in records:
                fh.write(json.dumps(r.as_dict(pipe.order), sort_keys=True)
                         + "\n")
        print(f"wrote {args.jsonl}")
    return 0


def cmd_eval(args) -> int:
    pipe = _pipeline(args)
    point = pipe.eval_point()
    if point is None:
        print("error: config has no [eval] section", file=sys.stderr)
        return 2
    _guard_stretch(pipe, args)
    gb = pipe.basis()
    for label, code in _load_spines(args.spines):
        rec = pipe.record(build_spine(code), label)
        val = epsilon_evaluate(rec, point, gb)
        print(f"{label}: {point.algebra.to_str(val)}")
    return 0


def cmd_bound(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    for label, code in _load_spines(args.spines):
        rec = pipe.record(build_spine(code), label)
        bound, trivial = degree_bound(rec)
        tag = " (trivial)" if trivial else ""
        print(f"{label}: deg_w={rec.deg_w} deg_6j={rec.deg_6j} "
              f"bound={bound}{tag}")
    return 0


def cmd_radical(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    gb = pipe.basis()
    registry = pipe.order.registry
    radical_gens = []
    with open(args.radical_file) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                radical_gens.append(Polynomial.parse(line, registry))
    report = radical_suite(pipe.generators(), radical_gens, gb, pipe.order,
                           limits=pipe.limits)
    print(f"containment I <= sqrt(I): "
          f"{'ok' if report.containment_ok else 'FAILED'}")
    nonzero = report.nonzero_normal_forms
    print(f"normal forms of radical elements: {len(nonzero)} nonzero, "
          f"{len(report.normal_forms) - len(nonzero)} zero")
    for p in nonzero:
        print("  " + p.canonical_str(pipe.order))
    print(f"radical membership: "
          f"{'all confirmed' if report.membership_ok else 'FAILED'}")
    for note in report.notes:
        print("  note: " + note, file=sys.stderr)
    return 0 if report.all_ok else 3


def cmd_partition(args) -> int:
    pipe = _pipeline(args)
    _guard_stretch(pipe, args)
    entries = _load_spines(args.spines)
    records = [pipe.record(build_spine(code), label)
               for label, code in entries]
    for ci, labels in enumerate(compare_partition(records), start=1):
        print(f"class {ci}: " + ", ".join(labels))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "statesum": cmd_statesum,
    "ideal": cmd_ideal,
    "groebner": cmd_groebner,
    "nf": cmd_nf,
    "invariant": cmd_invariant,
    "eval": cmd_eval,
    "bound": cmd_bound,
    "radical": cmd_radical,
    "partition": cmd_partition,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SpineParseError, SpineValidationError) as exc:
        print(f"spine error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitExceeded as exc:
        print(f"aborted: {exc.report()}", file=sys.stderr)
        return 4
    except (VertexCountError, MixedSystems, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
