"""Command line interface.

Subcommands: ``sweep`` (CSV over a parameter grid), ``cutoff`` (bisection for
the zero-rate crossing), ``modes`` (aggregation-mode comparison), ``state``
(decoded golden state as a real/imag grid) and ``verify`` (row engine vs
brute force).  Exit codes: 0 success, 1 usage, 2 computation error, 3
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import oracle
from .circuits import EncoderMode
from .noise import NoiseParams
from .qkd import RATE_MODES, InfoMode, aggregate, find_cutoff, qber
from .repeater import (
    OutcomeClass,
    enumerate_outcomes_n1,
    golden_pipeline,
)

COLUMNS = (
    "nesting",
    "beta",
    "delta",
    "f0",
    "encoder",
    "decoder",
    "mode",
    "p_golden",
    "e_z",
    "e_x",
    "r_golden",
    "r_gng",
    "r_bad",
    "r_total",
)

_VERIFY_TOL = 1e-10


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


def _range_type(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-numeric range {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"need stop >= start and step > 0, got {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _add_common(sub: argparse.ArgumentParser, with_mode: bool = True) -> None:
    sub.add_argument("--nesting", type=int, default=1, help="nesting level (1..3)")
    sub.add_argument("--beta", type=float, default=0.0, help="gate error probability")
    sub.add_argument("--delta", type=float, default=0.0, help="readout bit-flip probability")
    sub.add_argument("--f0", type=float, default=1.0, help="entangled-pair fidelity")
    sub.add_argument(
        "--encoder",
        choices=[m.value for m in EncoderMode],
        default=EncoderMode.CODED.value,
        help="codeword preparation noise model",
    )
    sub.add_argument(
        "--decoder",
        choices=["ideal", "noisy"],
        default="noisy",
        help="whether decoder CNOTs carry gate noise",
    )
    if with_mode:
        sub.add_argument(
            "--mode",
            choices=list(RATE_MODES),
            default="golden-only",
            help="rate definition",
        )
    sub.add_argument("--output", default=None, help="output path (default stdout)")


def _sweep_point(task: tuple) -> list[str]:
    nesting, beta, delta, f0, enc_name, dec_name, mode = task
    params = NoiseParams(f0=f0, beta=beta, delta=delta)
    enc = EncoderMode(enc_name)
    dec_noisy = dec_name == "noisy"
    fields: dict[str, object] = {
        "nesting": nesting,
        "beta": beta,
        "delta": delta,
        "f0": f0,
        "encoder": enc_name,
        "decoder": dec_name,
        "mode": mode,
        "p_golden": None,
        "e_z": None,
        "e_x": None,
        "r_golden": None,
        "r_gng": None,
        "r_bad": None,
        "r_total": None,
    }
    if mode == "golden-only":
        rep = golden_pipeline(nesting, params, enc, dec_noisy)
        fields.update(
            p_golden=rep.p_golden,
            e_z=rep.e_z,
            e_x=rep.e_x,
            r_golden=rep.r_golden,
            r_total=rep.r_golden,
        )
    else:
        records = enumerate_outcomes_n1(params, enc, dec_noisy)
        report = aggregate(records, InfoMode(mode), params.delta)
        fields["r_total"] = report.r_total
        if mode == "full":
            golden = next(r for r in records if r.klass is OutcomeClass.GOLDEN)
            fields["p_golden"] = golden.multiplicity * golden.joint_prob
            if golden.cond_state is not None:
                pair = qber(golden.cond_state, params.delta)
                fields.update(e_z=pair.e_z, e_x=pair.e_x)
            fields.update(
                r_golden=report.r_golden,
                r_gng=report.r_good_not_golden,
                r_bad=report.r_bad,
            )
    return [_fmt(fields[col]) for col in COLUMNS]


def _open_output(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_sweep(args) -> int:
    if args.nesting != 1 and args.mode != "golden-only":
        raise ValueError(f"mode {args.mode!r} requires nesting 1")
    fixed = {"beta": args.beta, "delta": args.delta, "f0": args.f0}
    tasks = []
    for value in args.range:
        point = dict(fixed)
        point[args.vary] = value
        tasks.append(
            (
                args.nesting,
                point["beta"],
                point["delta"],
                point["f0"],
                args.encoder,
                args.decoder,
                args.mode,
            )
        )
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    jobs = min(jobs, len(tasks))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(task) for task in tasks]
    stream, close = _open_output(args.output)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(rows)
    finally:
        if close:
            stream.close()
    return 0


def cmd_cutoff(args) -> int:
    params = NoiseParams(f0=args.f0, beta=args.beta, delta=args.delta)
    value = find_cutoff(
        args.vary,
        params,
        args.nesting,
        EncoderMode(args.encoder),
        args.decoder == "noisy",
        mode=args.mode,
    )
    stream, close = _open_output(args.output)
    try:
        print(f"{value:.12g}", file=stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_modes(args) -> int:
    if args.nesting != 1:
        raise ValueError("modes comparison requires nesting 1")
    rows = [
        _sweep_point(
            (
                args.nesting,
                args.beta,
                args.delta,
                args.f0,
                args.encoder,
                args.decoder,
                mode.value,
            )
        )
        for mode in InfoMode
    ]
    stream, close = _open_output(args.output)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(rows)
    finally:
        if close:
            stream.close()
    return 0


def cmd_state(args) -> int:
    params = NoiseParams(f0=args.f0, beta=args.beta, delta=args.delta)
    rep = golden_pipeline(
        args.nesting, params, EncoderMode(args.encoder), args.decoder == "noisy"
    )
    stream, close = _open_output(args.output)
    try:
        if rep.rho is None:
            print("golden branch has vanishing probability", file=stream)
            return 0
        for name, grid in (("real", np.real(rep.rho)), ("imag", np.imag(rep.rho))):
            print(f"{name}:", file=stream)
            for row in grid:
                print(" ".join(f"{v: .12g}" for v in row), file=stream)
        print(
            f"p_golden = {rep.p_golden:.12g}  e_z = {rep.e_z:.12g}  "
            f"e_x = {rep.e_x:.12g}  r_golden = {rep.r_golden:.12g}",
            file=stream,
        )
    finally:
        if close:
            stream.close()
    return 0


def cmd_verify(args) -> int:
    points = args.points
    if points is None:
        points = 20 if args.code_length <= 2 else 3
    worst = oracle.run_verification(args.code_length, points, args.seed)
    stream, close = _open_output(args.output)
    failed = False
    try:
        for stage in ("elementary", "swap", "decode"):
            ok = worst[stage] <= _VERIFY_TOL
            failed = failed or not ok
            print(
                f"stage {stage}: max diff = {worst[stage]:.3e} "
                f"({'PASS' if ok else 'FAIL'} at {_VERIFY_TOL:g})",
                file=stream,
            )
    finally:
        if close:
            stream.close()
    return 3 if failed else 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qrepsim", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = subs.add_parser("sweep", help="CSV of rates over a parameter grid")
    _add_common(sweep)
    sweep.add_argument("--vary", choices=["beta", "delta", "f0"], required=True)
    sweep.add_argument("--range", type=_range_type, required=True, metavar="START:STOP:STEP")
    sweep.add_argument("--jobs", type=int, default=0, help="parallel workers (0 = cores)")
    sweep.set_defaults(func=cmd_sweep)

    cutoff = subs.add_parser("cutoff", help="bisection for the zero-rate crossing")
    _add_common(cutoff)
    cutoff.add_argument("--vary", choices=["beta", "delta", "f0"], required=True)
    cutoff.set_defaults(func=cmd_cutoff)

    modes = subs.add_parser("modes", help="compare aggregation modes at fixed params")
    _add_common(modes, with_mode=False)
    modes.set_defaults(func=cmd_modes)

    state = subs.add_parser("state", help="decoded golden state as real/imag grid")
    _add_common(state, with_mode=False)
    state.set_defaults(func=cmd_state)

    verify = subs.add_parser("verify", help="row engine vs brute force at random points")
    verify.add_argument("--code-length", type=int, choices=[1, 2, 3], default=2)
    verify.add_argument("--points", type=int, default=None)
    verify.add_argument("--seed", type=int, default=7)
    verify.add_argument("--output", default=None)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, np.linalg.LinAlgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
