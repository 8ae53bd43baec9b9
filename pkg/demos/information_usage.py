#!/usr/bin/env python3
"""Compare key rates when users keep less and less of the outcome record.

Sweeps gate noise at fixed pair fidelity 0.98 and perfect readout, printing
the rate under all four bookkeeping policies side by side, then the
zero-rate cutoff of each policy.  Full bookkeeping survives about three
times the gate noise of a black-box chain and about twice that of keeping
only the swap outcomes.

Usage: python3 demos/information_usage.py [--f0 0.98] [--points 9]
"""

import argparse

import numpy as np

from qrepsim import EncoderMode, InfoMode, NoiseParams, aggregate, enumerate_outcomes_n1, find_cutoff

MODES = {
    InfoMode.FULL_INFO: "full",
    InfoMode.DECODER_ONLY: "decoder-only",
    InfoMode.SWAP_ONLY: "swap-only",
    InfoMode.BLACK_BOX: "blackbox",
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f0", type=float, default=0.98, help="Bell-pair fidelity")
    ap.add_argument("--points", type=int, default=9, help="sweep resolution")
    args = ap.parse_args()

    fixed = NoiseParams(f0=args.f0)
    print(f"One swap, ideal encoder, noisy decoder, f0={args.f0}, delta=0\n")

    header = f"{'beta':>7}" + "".join(f"{name:>14}" for name in MODES.values())
    print(header)
    for beta in np.linspace(0.0, 0.08, args.points):
        params = NoiseParams(f0=args.f0, beta=float(beta))
        records = enumerate_outcomes_n1(params, EncoderMode.IDEAL, dec_noisy=True)
        rates = [aggregate(records, mode, params.delta).r_total for mode in MODES]
        print(f"{beta:7.3f}" + "".join(f"{r:14.5f}" for r in rates))

    print("\nZero-rate beta cutoffs:")
    cutoffs = {}
    for mode, name in MODES.items():
        cutoffs[name] = find_cutoff(
            "beta", fixed, 1, EncoderMode.IDEAL, True, mode=name
        )
        print(f"  {name:<14} {cutoffs[name]:.5f}")
    print(
        f"\n  full / blackbox  = {cutoffs['full'] / cutoffs['blackbox']:.2f}"
        f"\n  full / swap-only = {cutoffs['full'] / cutoffs['swap-only']:.2f}"
    )


if __name__ == "__main__":
    main()
