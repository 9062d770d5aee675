"""Command-line surface: exact queries, numeric sweeps, cache and figures.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import (
    CMLocusError,
    NoConvergence,
    NonIntegerSpectrum,
    NotAContentMultiset,
    ParseError,
)
from .characters import character
from .exact_poly import poly_to_strings, wronskian_for_partition
from .locus import NumericsConfig, config_to_json, pole_structure, roots_to_csv
from .moser import invert_wronskian_map
from .partitions import Partition, format_partition, parse_partition
from .verify import DEFAULT_SUITE_SIZES, SUITES, partition_report, run_suites
from .wilson import build_wilson_data, charpoly, verify_relations, wilson_to_json

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_NUMERICS = 3


@dataclass
class ToolConfig:
    numerics: NumericsConfig
    fmt: str
    cache: Path | None
    jobs: int

    @classmethod
    def from_args(cls, args) -> "ToolConfig":
        fmt = getattr(args, "format", None) or "json"
        if fmt not in ("json", "csv", "svg"):
            raise ParseError(f"unknown format {fmt!r}")
        jobs = getattr(args, "jobs", 1)
        if jobs < 1:
            raise ParseError("--jobs must be at least 1")
        tol = getattr(args, "tol", None)
        kwargs = {}
        if tol is not None:
            if tol <= 0:
                raise ParseError("--tol must be positive")
            kwargs["root_tol"] = tol
            kwargs["newton_tol"] = tol
        if getattr(args, "max_iter", None) is not None:
            kwargs["max_iter"] = args.max_iter
        if getattr(args, "digits", None) is not None:
            kwargs["digits"] = args.digits
        try:
            numerics = NumericsConfig(**kwargs)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        cache = getattr(args, "cache", None)
        return cls(numerics, fmt, Path(cache) if cache else None, jobs)

    def tolerances(self) -> dict:
        n = self.numerics
        return {
            "root_tol": n.root_tol,
            "newton_tol": n.newton_tol,
            "max_iter": n.max_iter,
            "cluster_tol": n.cluster_tol,
            "digits": n.digits,
        }


def canonical_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def cache_key(partition_text: str, tool: ToolConfig) -> dict:
    return {
        "partition": partition_text,
        "tolerances": tool.tolerances(),
        "version": __version__,
    }


def cache_lookup(path: Path, key: dict) -> dict | None:
    if not path.exists():
        return None
    key_text = canonical_json(key)
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        if canonical_json(record.get("key", {})) == key_text:
            return record
    return None


def cache_append(path: Path, record: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as handle:
        handle.write(canonical_json(record) + "\n")


def _parse(text: str, double: bool = False) -> Partition:
    lam = parse_partition(text)
    return lam.doubled() if double else lam


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


# -- commands ------------------------------------------------------------


def cmd_wronskian(args, tool: ToolConfig) -> int:
    lam = _parse(args.partition, args.double)
    w = wronskian_for_partition(lam)
    if args.monic and not w.is_zero:
        w = w.monic()
    strings = poly_to_strings(w)
    if tool.fmt == "csv":
        print("degree,coefficient")
        for k, s in enumerate(strings):
            print(f"{k},{s}")
    else:
        _emit({"partition": format_partition(lam), "coefficients": strings})
    return EXIT_OK


def cmd_roots(args, tool: ToolConfig) -> int:
    lam = _parse(args.partition, args.double)
    config = pole_structure(lam, tool.numerics)
    if tool.fmt == "csv":
        sys.stdout.write(roots_to_csv(config))
    else:
        _emit(config_to_json(config))
    return EXIT_OK


def cmd_locus_check(args, tool: ToolConfig) -> int:
    lam = _parse(args.partition, args.double)
    config = pole_structure(lam, tool.numerics)
    blob = config_to_json(config)
    blob["all_simple"] = all(m == 1 for m in config.multiplicities)
    _emit(blob)
    if blob["all_simple"] and (config.locus_residual or 0.0) > 1e-9:
        return EXIT_VERIFICATION
    return EXIT_OK


def _read_roots_file(path: str) -> list[complex]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    roots = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.lower().startswith(("re", "#")):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) < 2:
            raise ParseError(f"{path}:{lineno}: expected 're,im[,multiplicity]'")
        try:
            re, im = float(fields[0]), float(fields[1])
            mult = int(fields[2]) if len(fields) > 2 else 1
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
        if mult != 1:
            raise ParseError(
                f"{path}:{lineno}: inversion needs simple roots, got multiplicity {mult}"
            )
        roots.append(complex(re, im))
    return roots


def cmd_invert(args, tool: ToolConfig) -> int:
    roots = _read_roots_file(args.roots_file)
    lam, report = invert_wronskian_map(roots, tool.numerics)
    print(format_partition(lam))
    _emit(report.to_json())
    return EXIT_OK


def cmd_character(args, tool: ToolConfig) -> int:
    lam = _parse(args.partition, args.double)
    chi = character(lam)
    if tool.fmt == "csv":
        print("exponent,coefficient")
        for e, c in sorted(chi.terms.items()):
            print(f"{e},{c}")
    else:
        _emit({"partition": format_partition(lam), "character": chi.to_json_dict()})
    return EXIT_OK


def cmd_spectrum(args, tool: ToolConfig) -> int:
    text = format_partition(_parse(args.partition, args.double))
    key = cache_key(text, tool)
    if tool.cache is not None:
        cached = cache_lookup(tool.cache, key)
        if cached is not None:
            print(canonical_json(cached))
            return EXIT_OK
    rec = partition_report(parse_partition(text), tool.numerics)
    record = {
        "key": key,
        "report": rec,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if tool.cache is not None:
        cache_append(tool.cache, record)
    print(canonical_json(record))
    return EXIT_OK


def cmd_wilson_verify(args, tool: ToolConfig) -> int:
    lam = _parse(args.partition, args.double)
    if lam.size == 0:
        raise ParseError("wilson-verify needs a nonempty partition")
    data = build_wilson_data(lam)
    relations = verify_relations(data)
    p = charpoly(data.Q)
    matches = p == wronskian_for_partition(lam).monic()
    blob = {
        "partition": format_partition(lam),
        "relations": relations,
        "charpoly_matches_wronskian": matches,
    }
    if args.dump:
        blob["data"] = wilson_to_json(data)
    _emit(blob)
    ok = matches and all(relations.values())
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_verify(args, tool: ToolConfig) -> int:
    names = args.suite or list(SUITES)
    try:
        results = run_suites(names, args.max_size, tool.numerics, tool.jobs)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        status = "ok" if r.ok else "FAIL"
        size = args.max_size or DEFAULT_SUITE_SIZES[r.name]
        print(f"{r.name:<{width}}  size<={size:<3d}  passed {r.passed:5d}  failed {r.failed:3d}  {status}")
        for msg in r.messages[:10]:
            print(f"    {msg}")
        failures += r.failed
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


def cmd_fig1(args, tool: ToolConfig) -> int:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    base = _parse(args.partition)
    lam = base.doubled() if args.double else base
    config = pole_structure(lam, tool.numerics)
    out_base = args.out or "fig1_" + format_partition(lam).replace(",", "-")
    csv_path = Path(out_base + ".csv")
    svg_path = Path(out_base + ".svg")
    csv_path.write_text(roots_to_csv(config))

    xs = [z.real for z in config.roots]
    ys = [z.imag for z in config.roots]
    sizes = [30 * m for m in config.multiplicities]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(xs, ys, s=sizes, color="tab:blue", zorder=3)
    span = 1.15 * max([abs(v) for v in xs + ys] + [1.0])
    ax.set_xlim(-span, span)
    ax.set_ylim(-span, span)
    ax.set_aspect("equal")
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=1)
    ax.axvline(0.0, color="0.8", lw=0.8, zorder=1)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(f"Wronskian zeroes, partition {format_partition(lam)}")
    fig.tight_layout()
    fig.savefig(svg_path)
    plt.close(fig)

    total = sum(m * (m + 1) // 2 for m in config.multiplicities)
    print(f"{total} roots -> {svg_path} and {csv_path}")
    if args.double and config.roots:
        closest = min(abs(z.imag) for z in config.roots)
        if closest <= 1e-8:
            print(f"real root detected (|Im z| = {closest:.2e})", file=sys.stderr)
            return EXIT_VERIFICATION
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="root and Newton tolerance")
    common.add_argument("--max-iter", type=int, dest="max_iter")
    common.add_argument("--digits", type=int, help="polish precision in digits")
    common.add_argument("--format", choices=["json", "csv", "svg"])
    common.add_argument("--cache", help="JSONL cache path")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="cmlocus",
        description="Hermite Wronskians, Calogero-Moser equilibria and their spectra",
    )
    parser.add_argument("--version", action="version", version=f"cmlocus {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, partition_arg=True, double=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if partition_arg:
            p.add_argument("partition", help="e.g. '4,3,1'; '0' for the empty partition")
        if double:
            p.add_argument("--double", action="store_true", help="double every part first")
        p.set_defaults(func=func)
        return p

    p = add("wronskian", cmd_wronskian, "exact Wronskian coefficients")
    p.add_argument("--monic", action="store_true")
    add("roots", cmd_roots, "numeric roots with multiplicities")
    add("locus-check", cmd_locus_check, "locus residual of the root configuration")
    p = sub.add_parser("invert", parents=[common], help="partition from a roots CSV")
    p.add_argument("roots_file")
    p.set_defaults(func=cmd_invert)
    add("character", cmd_character, "fixed-point character as a Laurent polynomial")
    add("spectrum", cmd_spectrum, "full numeric report (cacheable)")
    p = add("wilson-verify", cmd_wilson_verify, "exact fixed-point relation checks")
    p.add_argument("--dump", action="store_true", help="include the matrices")
    p = sub.add_parser("verify", parents=[common], help="batch verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), default=None)
    p.add_argument("--max-size", type=int, dest="max_size")
    p.set_defaults(func=cmd_verify)
    p = add("fig1", cmd_fig1, "root-pattern figure (SVG + CSV sidecar)", double=False)
    p.add_argument("--double", action="store_true", help="double every part first")
    p.add_argument("--out", help="output basename (without extension)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tool = ToolConfig.from_args(args)
        return args.func(args, tool)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NonIntegerSpectrum, NotAContentMultiset) as exc:
        print(f"verification failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except NoConvergence as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except CMLocusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
