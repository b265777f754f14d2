"""Command line entry point: ``terracini {dim,interp,sweep,verify}``.

Exit codes: 0 on success, 1 when a sweep or the acceptance run finds a
mismatch or failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .classify import SweepConfig, emit_report, predicted_status, sweep
from .interpolation import LinearSystemSpec, cremona_reduce, speciality
from .join import DEFAULT_TRIALS, JoinSpec, join_dim, lemma_iii_bound
from .linalg import DEFAULT_PRIME

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_int_list(text: str) -> list[int]:
    """``"1-3,7"`` -> ``[1, 2, 3, 7]``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep and lo:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"cannot parse integer list {text!r}") from None
    if not out:
        raise UsageError(f"empty integer list {text!r}")
    return out


def _load_defaults(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    unknown = set(data) - {"prime", "seed", "trials"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _config(args) -> SweepConfig:
    defaults = _load_defaults(args.config)
    return SweepConfig(
        prime=args.prime if args.prime is not None else defaults.get("prime", DEFAULT_PRIME),
        seed=args.seed if args.seed is not None else defaults.get("seed", 0),
        trials=args.trials if args.trials is not None else defaults.get("trials", DEFAULT_TRIALS),
    )


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _key_values(record: dict) -> str:
    lines = []
    for key, value in record.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        elif value is None:
            value = ""
        lines.append(f"{key}\t{value}")
    return "\n".join(lines) + "\n"


def cmd_dim(args) -> int:
    config = _config(args)
    if args.orders is not None:
        orders = parse_int_list(args.orders)
    elif args.m is not None and args.h is not None:
        orders = [args.m] * (args.h + 1)
    else:
        raise UsageError("dim needs either --orders or both --m and --h")
    spec = JoinSpec(args.n, args.d, tuple(orders))
    report = join_dim(spec, prime=config.prime, seed=config.seed, trials=config.trials)
    bound = lemma_iii_bound(spec, report=report)

    predicted = None
    if spec.n == 2 and spec.equal_orders and spec.orders[0] >= 1 and spec.h >= 1:
        predicted = str(predicted_status(spec.d, spec.orders[0], spec.h))

    record = {
        "n": spec.n,
        "d": spec.d,
        "orders": list(spec.orders),
        "h": spec.h,
        "ambient": spec.r,
        "expdim": report.expdim,
        "dim": report.dim,
        "defect": report.defect,
        "span_dim": report.span_dim,
        "upper_span_dim": report.upper_span_dim,
        "containment": report.containment,
        "lemma_iii_applicable": bound.applicable,
        "lemma_iii_delta_span": bound.delta_span,
        "lemma_iii_bound": bound.bound,
        "lemma_iv_applies": report.lemma_iv_applies,
        "lemma_v_equality": report.lemma_v_equality,
        "predicted": predicted,
        "prime": config.prime,
        "seed": config.seed,
        "trials": config.trials,
    }
    text = json.dumps(record, indent=2) + "\n" if args.format == "json" else _key_values(record)
    _write(text, args.out)
    return EXIT_OK


def cmd_interp(args) -> int:
    config = _config(args)
    spec = LinearSystemSpec(args.d, tuple(parse_int_list(args.mults)))
    if spec.flagged:
        raise UsageError("multiplicities must be non-negative")
    report = speciality(spec, prime=config.prime, seed=config.seed, trials=config.trials)
    record = report.to_dict()
    reduced = cremona_reduce(spec)
    record["cremona"] = str(reduced.trimmed())
    record["cremona_flagged"] = reduced.flagged
    text = json.dumps(record, indent=2) + "\n" if args.format == "json" else _key_values(record)
    _write(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _config(args)
    rows = sweep(
        parse_int_list(args.d),
        parse_int_list(args.m),
        parse_int_list(args.h),
        config,
        m_max_d=args.cap_m_at_d,
        jobs=args.jobs,
    )
    _write(emit_report(rows, args.format, config), args.out)
    return EXIT_MISMATCH if any(r.agreement == "mismatch" for r in rows) else EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import run_all

    trials = args.trials if args.trials is not None else DEFAULT_TRIALS
    results = run_all(trials=trials, jobs=args.jobs, report=print)
    failed = [c for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terracini",
        description="Dimensions of joins of osculating spaces of Veronese varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None,
                        help=f"field characteristic (default {DEFAULT_PRIME})")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--trials", type=int, default=None,
                        help=f"independent samples per rank (default {DEFAULT_TRIALS})")
    common.add_argument("--config", default=None,
                        help="JSON file with default prime/seed/trials")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--out", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("dim", parents=[common], help="dimension of one join")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--orders", help="comma list of orders m_0,...,m_h")
    p.add_argument("--n", type=int, default=2, help="dimension of the source space")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("interp", parents=[common], help="dimension of one plane linear system")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mults", required=True, help="comma list of multiplicities")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("sweep", parents=[common], help="compare predictions on a grid")
    p.add_argument("--d", required=True, help="degrees, e.g. 1-12")
    p.add_argument("--m", required=True, help="orders, e.g. 1-5")
    p.add_argument("--h", required=True, help="secant indices, e.g. 1-9")
    p.add_argument("--cap-m-at-d", action="store_true", help="skip cells with m > d")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for the repeat sweeps")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"terracini: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
