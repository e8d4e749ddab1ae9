"""Command line entry point.

    padicprec demo {arithmetic,somos,matmul,charpoly,gcd,lattice} [options]
    padicprec bench {gcd,charpoly} [options]

Demos print one transcript per tracking mode on identically seeded inputs;
benches report instrumentation counts of the precision module.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from .sessions import BENCHES, DEFAULT_SEED, DEMOS, RunConfig, run_session

MODE_CHOICES = {"cr": ("CR",), "lc": ("LC",), "lf": ("LF",), "all": ("CR", "LC", "LF")}


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padicprec", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, help="the prime p (default depends on the demo)")
    common.add_argument("--prec", type=int, help="precision of the random inputs")
    common.add_argument("--ring-prec", type=int, default=20, help="default precision of the ring (20)")
    common.add_argument("--relcap", type=int, help="relative cap (default 2 * ring precision)")
    common.add_argument("--abscap", type=int, help="absolute cap (default 4 * ring precision)")
    common.add_argument("--seed", type=int, help=f"random seed (default $PADIC_SEED or {DEFAULT_SEED})")
    common.add_argument("--format", choices=("text", "csv"), default="text", dest="fmt")
    common.add_argument("--n", type=_int_list, help="somos: indices to compute, e.g. 18,100")
    common.add_argument("--dim", type=int, help="matrix size")
    common.add_argument("--degree", type=int, help="polynomial degree")
    common.add_argument("--count", type=int, help="matmul: number of factors (26)")

    demo = sub.add_parser("demo", parents=[common], help="run a scripted session")
    demo.add_argument("demo", choices=sorted(DEMOS))
    demo.add_argument("--mode", choices=sorted(MODE_CHOICES), default="all")

    bench = sub.add_parser("bench", parents=[common], help="report instrumentation counts")
    bench.add_argument("demo", choices=sorted(BENCHES))
    bench.add_argument("--mode", choices=("lc", "lf"), default="lc")
    bench.add_argument("--sizes", type=_int_list, help="degrees (gcd) or dimensions (charpoly)")
    bench.add_argument("--table", choices=("sizes", "coindex"), default="sizes",
                       help="csv output: size table or coindex histogram")
    bench.add_argument("--hist-degree", type=int, default=7, help="gcd degree for the coindex histogram")
    return parser


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PADIC_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"padicprec: PADIC_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def config_from_args(args) -> RunConfig:
    modes = MODE_CHOICES[args.mode]
    if args.command == "demo" and args.demo == "lattice":
        if args.mode == "cr":
            raise ValueError("the lattice demo needs a tracked mode (lc or lf)")
        if args.mode == "all":
            modes = ("LC", "LF")
    return RunConfig(
        demo=args.demo,
        prime=args.prime,
        prec=args.prec,
        ring_prec=args.ring_prec,
        relcap=args.relcap,
        abscap=args.abscap,
        seed=_seed(args),
        modes=modes,
        fmt=args.fmt,
        n=args.n,
        dim=args.dim,
        degree=args.degree,
        count=args.count,
        sizes=getattr(args, "sizes", None) or [],
        table=getattr(args, "table", "sizes"),
        hist_degree=getattr(args, "hist_degree", 7),
    )


def _label(mode: str, p_kind: str = "Zp") -> str:
    return f"{p_kind}{mode}"


def _csv_writer(out):
    return csv.writer(out, lineterminator="\r\n")


def run_demo(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    transcripts = [run_session(cfg, mode) for mode in cfg.modes]
    if cfg.fmt == "csv":
        w = _csv_writer(out)
        w.writerow(["demo", "mode", "key", "value"])
        for t in transcripts:
            for key, value in t.steps:
                if value is not None:
                    w.writerow([cfg.demo, t.mode, key, value])
    else:
        # every mode runs the same script, so step i has the same input everywhere
        width = max(len(_label(m)) for m in cfg.modes) + 1
        nsteps = max(len(t.steps) for t in transcripts)
        for i in range(nsteps):
            key = next(t.steps[i][0] for t in transcripts if i < len(t.steps))
            _emit(out, "In:", key, width)
            for t in transcripts:
                if i < len(t.steps) and t.steps[i][1] is not None:
                    _emit(out, _label(t.mode) + ":", t.steps[i][1], width)
    return 1 if any(t.failed for t in transcripts) else 0


def _emit(out, label: str, text: str, width: int) -> None:
    lines = text.split("\n")
    out.write(f"{label:>{width}} {lines[0]}\n")
    for line in lines[1:]:
        out.write(f"{'':>{width}} {line}\n")


def run_bench(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    fn = BENCHES[cfg.demo]
    mode = cfg.modes[0]
    sizes = cfg.sizes or ([2, 5, 10, 20] if cfg.demo == "gcd" else [2, 3, 4, 5, 6])
    rows = []
    for size in sizes:
        st = fn(cfg, mode, size)
        rows.append((size, st.total, st.peak))
    hist = None
    if cfg.demo == "gcd" and (cfg.fmt == "text" or cfg.table == "coindex"):
        hist = fn(cfg, mode, cfg.hist_degree).coindex
    if cfg.fmt == "csv":
        w = _csv_writer(out)
        if cfg.table == "coindex":
            if hist is None:
                raise ValueError("the coindex table is only produced by the gcd bench")
            w.writerow(["coindex", "count"])
            for k in sorted(hist):
                w.writerow([k, hist[k]])
        else:
            w.writerow(["size", "total", "peak"])
            w.writerows(rows)
        return 0
    size_name = "degree" if cfg.demo == "gcd" else "dim"
    out.write(f"{size_name:>8} {'total':>8} {'peak':>8} {'peak/total':>11}\n")
    for size, total, peak in rows:
        out.write(f"{size:>8} {total:>8} {peak:>8} {peak / total:>11.3f}\n")
    if hist is not None:
        n = sum(hist.values())
        out.write(f"\ncoindex distribution, degree {cfg.hist_degree} ({n} deletions)\n")
        out.write(f"{'coindex':>8} {'count':>8} {'share':>8}\n")
        for k in sorted(hist):
            out.write(f"{k:>8} {hist[k]:>8} {hist[k] / n:>8.3f}\n")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "demo":
            return run_demo(cfg)
        return run_bench(cfg)
    except ValueError as exc:
        parser.exit(2, f"padicprec: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
