"""Command-line front end.

Exit codes: 0 success, 1 property check failed, 2 usage error, 3 I/O or
parse error, 4 enumeration capacity exceeded, 5 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators as gen
from .axioms import axiom_report, standard_fixtures, write_report
from .errors import CapacityError, FormatError, NumericError
from .fullrank import DEFAULT_CAP, extract_brute_force, extract_max_tucker
from .io import read_tensor, write_tensor
from .linalg import DEFAULT_TOL, RankTolerance
from .ranks import max_tucker, n_rank, submax_tucker
from .tucker import (
    SweepConfig,
    default_sweep_config,
    generate_sweep_source,
    hooi,
    hosvd,
    run_sweep,
    save_model,
    st_hosvd,
    sweep_to_csv,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CAPACITY = 4
EXIT_NUMERIC = 5


def _tolerance(args) -> RankTolerance:
    if args.tol is None and args.tol_mode == "relative":
        return DEFAULT_TOL
    return RankTolerance(mode=args.tol_mode, value=args.tol)


def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="rank tolerance value (default: max(rows,cols)*eps, relative)")
    p.add_argument("--tol-mode", choices=("relative", "absolute"), default="relative")


def _rank_fn(name: str, tol: RankTolerance):
    return {"max": max_tucker, "submax": submax_tucker}[name](tol)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tenrank", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="generate a tensor file")
    p.add_argument(
        "kind",
        choices=[
            "zero",
            "rank1",
            "identity",
            "counterexample-2x3x4",
            "counterexample-3x2x2",
            "block-pair",
            "planted-tucker",
            "random",
        ],
    )
    p.add_argument("--out", required=True)
    p.add_argument("--out2", help="second output file (block-pair writes two tensors)")
    p.add_argument("--shape", type=int, nargs="+")
    p.add_argument("--m", type=int, help="order (identity)")
    p.add_argument("--n", type=int, help="dimension (identity)")
    p.add_argument("--core", type=int, nargs="+", default=[20, 4, 4])
    p.add_argument("--snr", type=float, default=20.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--integer", action="store_true")
    p.add_argument("--binary", action="store_true")

    p = sub.add_parser("rank", help="evaluate one scalar rank")
    p.add_argument("file")
    p.add_argument("--fn", choices=("max", "submax"), required=True)
    _add_tol_flags(p)

    p = sub.add_parser("nrank", help="per-mode unfolding ranks")
    p.add_argument("file")
    _add_tol_flags(p)

    p = sub.add_parser("fullrank", help="extract a maximum full-rank subtensor")
    p.add_argument("file")
    p.add_argument("--fn", choices=("max", "submax"), default="max")
    p.add_argument("--brute", action="store_true", help="use the enumeration oracle")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out-subtensor", help="write the extracted subtensor here")
    _add_tol_flags(p)

    p = sub.add_parser("closure", help="closure value of a rank function")
    p.add_argument("file")
    p.add_argument("--fn", choices=("max", "submax"), required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _add_tol_flags(p)

    p = sub.add_parser("axioms", help="run the rank-function axiom battery")
    p.add_argument("--fn", choices=("max", "submax"), required=True)
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--witness-dir", help="directory for counterexample tensors")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200, help="random fixture count")
    _add_tol_flags(p)

    p = sub.add_parser("tucker", help="fit a Tucker model")
    p.add_argument("file")
    p.add_argument("--ranks", type=int, nargs="+", required=True)
    p.add_argument("--method", choices=("hosvd", "st_hosvd", "hooi"), default="hosvd")
    p.add_argument("--outdir", required=True)
    p.add_argument("--max-iters", type=int, default=100)

    p = sub.add_parser("sweep", help="run the (r, mode-1 cap) error sweep")
    p.add_argument("--config", help="JSON config file (defaults to the built-in grid)")
    p.add_argument("--input", help="tensor file (default: synthetic planted-Tucker source)")
    p.add_argument("--out", required=True)
    p.add_argument("--no-timing", action="store_true", help="write 0 in elapsed_ms for bytewise-reproducible output")
    return parser


def _cmd_gen(args) -> int:
    seed = args.seed
    if args.kind == "zero":
        t = gen.zero_tensor(_need_shape(args))
    elif args.kind == "rank1":
        t = gen.random_rank_one(_need_shape(args), seed=seed, integer=args.integer)
    elif args.kind == "identity":
        if args.m is None or args.n is None:
            raise ValueError("identity needs --m and --n")
        t = gen.identity(args.m, args.n)
    elif args.kind == "counterexample-2x3x4":
        t = gen.counterexample_2x3x4()
    elif args.kind == "counterexample-3x2x2":
        t = gen.counterexample_3x2x2()
    elif args.kind == "block-pair":
        y, z = gen.block_pair(seed=seed)
        out2 = args.out2 or str(Path(args.out).with_suffix("")) + "_z.tns"
        write_tensor(y, args.out, binary=args.binary)
        write_tensor(z, out2, binary=args.binary)
        print(f"wrote {args.out} and {out2}")
        return EXIT_OK
    elif args.kind == "planted-tucker":
        t = gen.planted_tucker(_need_shape(args), tuple(args.core), args.snr, seed)
    else:
        t = gen.random_tensor(_need_shape(args), seed=seed, integer=args.integer)
    write_tensor(t, args.out, binary=args.binary)
    print(f"wrote {args.out}")
    return EXIT_OK


def _need_shape(args) -> tuple[int, ...]:
    if not args.shape:
        raise ValueError(f"{args.kind} needs --shape")
    return tuple(args.shape)


def _cmd_rank(args) -> int:
    tol = _tolerance(args)
    x = read_tensor(args.file)
    rf = _rank_fn(args.fn, tol)
    name = {"max": "max_tucker", "submax": "submax_tucker"}[args.fn]
    print(f"{name}={rf(x)}")
    print(f"tol: {tol.describe()}", file=sys.stderr)
    return EXIT_OK


def _cmd_nrank(args) -> int:
    tol = _tolerance(args)
    x = read_tensor(args.file)
    ranks = n_rank(x, tol).ranks
    print("nrank=" + ",".join(str(r) for r in ranks))
    print(f"tol: {tol.describe()}", file=sys.stderr)
    return EXIT_OK


def _cmd_fullrank(args) -> int:
    tol = _tolerance(args)
    x = read_tensor(args.file)
    if args.brute:
        sub, cert = extract_brute_force(_rank_fn(args.fn, tol), x, cap=args.cap)
    elif args.fn == "max":
        sub, cert = extract_max_tucker(x, tol)
    else:
        raise ValueError("only --fn max has a fast path; use --brute for submax")
    doc = cert.to_json()
    doc["rank_function"] = {"max": "max_tucker", "submax": "submax_tucker"}[args.fn]
    doc["tolerance"] = tol.describe()
    print(json.dumps(doc, indent=2))
    if args.out_subtensor:
        write_tensor(sub, args.out_subtensor)
    return EXIT_OK


def _cmd_closure(args) -> int:
    tol = _tolerance(args)
    x = read_tensor(args.file)
    rf = _rank_fn(args.fn, tol)
    _, cert = extract_brute_force(rf, x, cap=args.cap)
    print(f"closure_{rf.name}={cert.rank}")
    print(f"tol: {tol.describe()}", file=sys.stderr)
    return EXIT_OK


def _cmd_axioms(args) -> int:
    tol = _tolerance(args)
    rf = _rank_fn(args.fn, tol)
    fixtures = standard_fixtures(seed=args.seed, random_count=args.count)
    report = axiom_report(rf, fixtures, tol)
    doc = write_report(report, args.out, args.witness_dir)
    if args.out is None:
        print(json.dumps(doc, indent=2))
    else:
        print(f"wrote {args.out}")
    for res in report.results:
        status = "pass" if res.passed else "FAIL"
        print(f"{rf.name} {res.name}: {status} ({res.checks} checks)", file=sys.stderr)
    return EXIT_OK if report.confirms(rf.declared_properties) else EXIT_CHECK_FAILED


def _cmd_tucker(args) -> int:
    x = read_tensor(args.file)
    if args.method == "hosvd":
        model = hosvd(x, args.ranks)
    elif args.method == "st_hosvd":
        model = st_hosvd(x, args.ranks)
    else:
        model = hooi(x, args.ranks, max_iters=args.max_iters)
    save_model(model, args.outdir)
    print(f"wrote {args.outdir} (relative_error={model.relative_error!r})")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        raw["shape"] = tuple(raw.get("shape", (100, 11, 11)))
        raw["r_values"] = tuple(raw.get("r_values", range(1, 12)))
        raw["mode1_caps"] = tuple(raw.get("mode1_caps", ("r", 10, 20, 40)))
        raw["core_shape"] = tuple(raw.get("core_shape", (20, 4, 4)))
        config = SweepConfig(**raw)
    else:
        config = default_sweep_config()
    source = read_tensor(args.input) if args.input else generate_sweep_source(config)
    rows = run_sweep(config, source)
    Path(args.out).write_text(sweep_to_csv(rows, include_timing=not args.no_timing))
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "rank": _cmd_rank,
    "nrank": _cmd_nrank,
    "fullrank": _cmd_fullrank,
    "closure": _cmd_closure,
    "axioms": _cmd_axioms,
    "tucker": _cmd_tucker,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except (FormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
