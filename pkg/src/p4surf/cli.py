"""Command-line interface: run the construction pipelines and inspect ideals.

Exit codes are a stable contract: 0 for success, 1 for a failed verification
or construction, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cohomology import cohomology_table
from .errors import P4SurfError, ParseError, UsageError
from .hilbert import curve_invariants, surface_invariants
from .idealops import Ideal, quotient, saturate, smoothness_certificate
from .io import format_ideal, parse_matrix, read_ideal, write_ideal
from .modules import FreeModule, GradedMatrix
from .report import persist_report, run_directory
from .resolution import free_resolution
from .ring import PolyRing

CACHE_ENV = "P4SURF_CACHE_DIR"


@dataclass
class RunConfig:
    char: int = 31991
    seed: int = 1
    cache_dir: str = None
    output_dir: str = None
    format: str = "text"
    verbosity: int = 0
    force: bool = False
    jobs: int = 1

    def ring(self) -> PolyRing:
        return PolyRing(p=self.char, nvars=5)


def _add_common(sub):
    sub.add_argument("--char", type=int, default=31991,
                     help="field characteristic (prime, default 31991)")
    sub.add_argument("--seed", type=int, default=1,
                     help="seed for all randomized choices")
    sub.add_argument("--cache-dir", default=None,
                     help=f"Groebner cache directory (or ${CACHE_ENV})")
    sub.add_argument("--no-cache", action="store_true",
                     help="disable the Groebner cache")
    sub.add_argument("--output-dir", default=None,
                     help="persist reports and artifacts under this directory")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--force", action="store_true",
                     help="overwrite an existing run directory")
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker cap (stages are data-dependent; kept for "
                          "forward compatibility)")
    sub.add_argument("-v", "--verbose", action="count", default=0)


def _config(args) -> RunConfig:
    cache = args.cache_dir or os.environ.get(CACHE_ENV)
    if getattr(args, "no_cache", False):
        cache = None
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return RunConfig(char=args.char, seed=args.seed, cache_dir=cache,
                     output_dir=args.output_dir, format=args.format,
                     verbosity=args.verbose, force=args.force, jobs=args.jobs)


def _emit_report(report, cfg: RunConfig, pipeline: str, extra_files=None) -> int:
    if cfg.output_dir:
        out = run_directory(cfg.output_dir, pipeline, cfg.seed, cfg.char,
                            force=cfg.force)
        persist_report(out, report)
        for name, text in (extra_files or {}).items():
            (out / name).write_text(text)
    if cfg.format == "json":
        sys.stdout.write(report.json_text())
    else:
        sys.stdout.write(report.render())
    return 0 if report.verdict else 1


def cmd_monad(args) -> int:
    from .monad import monad_pipeline
    cfg = _config(args)
    artifacts, report = monad_pipeline(seed=cfg.seed, char=cfg.char,
                                       cache_dir=cfg.cache_dir)
    if args.bridge:
        from .monad import bridge_link
        bridge_link(artifacts.ideal, seed=cfg.seed, cache_dir=cfg.cache_dir,
                    report=report)
    extra = {"surface.ideal": format_ideal(artifacts.ideal.minimal_gens())}
    return _emit_report(report, cfg, "monad", extra)


def cmd_liaison(args) -> int:
    from .liaison import liaison_pipeline
    cfg = _config(args)
    artifacts, report = liaison_pipeline(seed=cfg.seed, char=cfg.char,
                                         cache_dir=cfg.cache_dir,
                                         example=args.example)
    extra = {"surface.ideal": format_ideal(artifacts.ideal.minimal_gens())}
    return _emit_report(report, cfg, report.pipeline, extra)


def _read_ideal_arg(cfg: RunConfig, path) -> Ideal:
    ring = cfg.ring()
    gens = read_ideal(ring, path)
    return Ideal(ring, gens, cache_dir=cfg.cache_dir)


def _presentation_from_file(cfg: RunConfig, path):
    """A matrix file presents a module; an ideal file presents its quotient."""
    ring = cfg.ring()
    text = Path(path).read_text()
    stripped = [l for l in text.splitlines() if l.split("#", 1)[0].strip()]
    if stripped and stripped[0].lstrip().startswith("rows"):
        return parse_matrix(ring, text)
    gens = [g for g in (ring.parse(l.split("#", 1)[0].strip())
                        for l in stripped) if not g.is_zero()]
    if not gens:
        raise UsageError(f"{path} contains no generators")
    tgt = FreeModule(ring, (0,))
    src = FreeModule(ring, tuple(g.degree for g in gens))
    return GradedMatrix(tgt, src, [[g] for g in gens])


def cmd_betti(args) -> int:
    cfg = _config(args)
    pres = _presentation_from_file(cfg, args.input)
    res = free_resolution(pres, cache_dir=cfg.cache_dir)
    table = res.betti_table()
    if cfg.format == "json":
        sys.stdout.write(json.dumps(table.to_json(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(table.render() + "\n")
    return 0


def cmd_hilbert(args) -> int:
    cfg = _config(args)
    a = _read_ideal_arg(cfg, args.input)
    hd = a.hilbert_data()
    data = {
        "projective_dim": hd.krull_dim - 1,
        "degree": hd.degree,
        "polynomial": [str(c) for c in hd.polynomial],
        "values": {str(m): int(hd.value(m)) for m in range(args.up_to + 1)},
    }
    if cfg.format == "json":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(
            f"projective dimension: {data['projective_dim']}\n"
            f"degree: {data['degree']}\n"
            f"hilbert polynomial coefficients (ascending): "
            f"{', '.join(data['polynomial'])}\n"
            + "".join(f"P({m}) = {v}\n" for m, v in data["values"].items()))
    return 0


def _parse_range(text: str):
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected lo:hi") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def cmd_cohomology_table(args) -> int:
    cfg = _config(args)
    a = _read_ideal_arg(cfg, args.input)
    lo, hi = _parse_range(args.range)
    table = cohomology_table(a, lo, hi, cache_dir=cfg.cache_dir)
    if cfg.format == "json":
        sys.stdout.write(json.dumps(table.to_json(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(table.render() + "\n")
    return 0


def cmd_smooth_check(args) -> int:
    cfg = _config(args)
    import random
    a = _read_ideal_arg(cfg, args.input)
    cert = smoothness_certificate(a, codim=args.codim,
                                  rng=random.Random(cfg.seed))
    data = {"smooth": cert.smooth, "method": cert.method,
            "witness_degree": cert.witness_degree, "char": cfg.char}
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return 0 if cert.smooth else 1


def cmd_link(args) -> int:
    cfg = _config(args)
    ring = cfg.ring()
    paths = args.ci.split(",")
    if len(paths) != 2:
        raise UsageError("--ci expects two comma-separated polynomial files")
    fs = []
    for path in paths:
        gens = read_ideal(ring, path)
        if len(gens) != 1:
            raise UsageError(f"{path} must contain exactly one polynomial")
        fs.append(gens[0])
    a = _read_ideal_arg(cfg, args.input)
    ci = Ideal(ring, fs, cache_dir=cfg.cache_dir)
    residual = saturate(quotient(ci, a))
    text = format_ideal(residual.minimal_gens())
    if args.output:
        write_ideal(args.output, residual.minimal_gens())
    else:
        sys.stdout.write(text)
    return 0


def cmd_invariants(args) -> int:
    cfg = _config(args)
    if args.input:
        a = _read_ideal_arg(cfg, args.input)
        hd = a.hilbert_data()
        if hd.krull_dim == 3:
            inv = surface_invariants(hd)
            data = {"kind": "surface", "degree": inv.degree,
                    "sectional_genus": inv.sectional_genus, "chi": inv.chi,
                    "K2": inv.self_intersection_canonical()}
        elif hd.krull_dim == 2:
            inv = curve_invariants(hd)
            data = {"kind": "curve", "degree": inv.degree,
                    "arithmetic_genus": inv.arithmetic_genus}
        else:
            data = {"kind": f"dimension {hd.krull_dim - 1}",
                    "degree": hd.degree}
    else:
        # pipe mode: read a pipeline JSON report from stdin
        try:
            payload = json.load(sys.stdin)
        except json.JSONDecodeError as e:
            raise ParseError(f"stdin is not a JSON report: {e}") from None
        data = {"pipeline": payload.get("pipeline"),
                "seed": payload.get("seed"),
                "verdict": payload.get("verdict"),
                "assertions": {}}
        for stage in payload.get("stages", []):
            for a_ in stage.get("assertions", []):
                data["assertions"][f"{stage['name']}/{a_['name']}"] = \
                    a_["computed"]
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p4surf",
        description="Exact construction and verification of degree-12 "
                    "irregular elliptic surfaces in P4 over a prime field.")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("monad", help="run the vector-bundle pipeline")
    _add_common(s)
    s.add_argument("--bridge", action="store_true",
                   help="also run the liaison bridge checks on the surface")
    s.set_defaults(func=cmd_monad)

    s = subs.add_parser("liaison", help="run the double-linkage pipeline")
    _add_common(s)
    s.add_argument("--example", action="store_true",
                   help="use the explicit configuration instead of random data")
    s.set_defaults(func=cmd_liaison)

    s = subs.add_parser("betti", help="Betti table of an ideal or matrix file")
    _add_common(s)
    s.add_argument("input")
    s.set_defaults(func=cmd_betti)

    s = subs.add_parser("hilbert", help="Hilbert data of an ideal file")
    _add_common(s)
    s.add_argument("input")
    s.add_argument("--up-to", type=int, default=5,
                   help="print P(m) for 0 <= m <= this bound")
    s.set_defaults(func=cmd_hilbert)

    s = subs.add_parser("cohomology-table",
                        help="sheaf cohomology table of a saturated ideal")
    _add_common(s)
    s.add_argument("input")
    s.add_argument("--range", default="-1:5", help="twist window lo:hi")
    s.set_defaults(func=cmd_cohomology_table)

    s = subs.add_parser("smooth-check",
                        help="smoothness certificate for an ideal file")
    _add_common(s)
    s.add_argument("input")
    s.add_argument("--codim", type=int, default=2)
    s.set_defaults(func=cmd_smooth_check)

    s = subs.add_parser("link", help="residual of an ideal in a complete "
                                     "intersection")
    _add_common(s)
    s.add_argument("--ci", required=True,
                   help="two comma-separated polynomial files")
    s.add_argument("input")
    s.add_argument("--output", default=None, help="write the residual ideal here")
    s.set_defaults(func=cmd_link)

    s = subs.add_parser("invariants",
                        help="numerical invariants of an ideal file, or of a "
                             "JSON report on stdin")
    _add_common(s)
    s.add_argument("input", nargs="?", default=None)
    s.set_defaults(func=cmd_invariants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except P4SurfError as e:
        print(f"failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
