#!/usr/bin/env python3
"""Which imperfection hurts more: preparing codewords or decoding them?

Turns encoder and decoder noise on and off independently at fixed pair
fidelity and compares the golden-branch gate-noise cutoffs, then checks
that truncating the encoder expansion to the code space (dropping the six
leakage terms) never moves the rate by more than 0.01 below threshold.

Usage: python3 demos/encoder_decoder_study.py [--f0 0.98]
"""

import argparse

import numpy as np

from qrepsim import EncoderMode, NoiseParams, chain_rate, find_cutoff


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f0", type=float, default=0.98, help="Bell-pair fidelity")
    args = ap.parse_args()

    fixed = NoiseParams(f0=args.f0)
    print(f"One swap, golden branch only, f0={args.f0}, delta=0\n")

    combos = (
        ("ideal encoder, ideal decoder", EncoderMode.IDEAL, False),
        ("ideal encoder, noisy decoder", EncoderMode.IDEAL, True),
        ("coded encoder, ideal decoder", EncoderMode.CODED, False),
        ("coded encoder, noisy decoder", EncoderMode.CODED, True),
    )
    cutoffs = {}
    print("Beta cutoffs:")
    for label, enc, dec_noisy in combos:
        cutoffs[label] = find_cutoff("beta", fixed, 1, enc, dec_noisy)
        print(f"  {label:<30} {cutoffs[label]:.5f}")

    baseline = cutoffs["ideal encoder, ideal decoder"]
    dec_shift = baseline - cutoffs["ideal encoder, noisy decoder"]
    enc_shift = baseline - cutoffs["coded encoder, ideal decoder"]
    print(f"\n  decoder noise costs {dec_shift:.4f} of beta headroom,")
    print(f"  encoder noise only {enc_shift:.4f}: the decoder dominates,")
    print("  because its gates act after the noise of the whole chain.\n")

    full_cut = cutoffs["coded encoder, noisy decoder"]
    worst = 0.0
    for beta in np.linspace(0.0, full_cut, 13):
        p = NoiseParams(f0=args.f0, beta=float(beta))
        gap = abs(
            chain_rate(p, 1, EncoderMode.FULL, True)
            - chain_rate(p, 1, EncoderMode.CODED, True)
        )
        worst = max(worst, gap)
    print("Dropping the encoder's out-of-code leakage terms (CODED vs FULL)")
    print(f"moves the golden rate by at most {worst:.5f} anywhere below the")
    print("cutoff, so the code-space truncation is a safe modelling shortcut.")


if __name__ == "__main__":
    main()
