"""Key-rate analysis: QBERs of a decoded pair under biased readout, the
asymptotic BB84 secret fraction, outcome-information aggregation modes and
the bisection search for noise cutoffs.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .circuits import EncoderMode
from .noise import NoiseParams, bell_weights

if TYPE_CHECKING:
    from .repeater import OutcomeRecord


def binary_entropy(p: float) -> float:
    """Binary Shannon entropy in bits; 0 at both endpoints.

    Raises
    ------
    ValueError
        If ``p`` lies outside [0, 1].
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


@dataclass(frozen=True)
class QberPair:
    """Quantum bit error rates in the key (z) and check (x) bases."""

    e_z: float
    e_x: float


def qber(rho4: np.ndarray, delta: float) -> QberPair:
    """QBERs of a shared two-qubit state measured with bit-flip bias ``delta``.

    With Bell weights (w_pp, w_pm, w_sp, w_sm) of the state:
    ``e_z = (delta^2 + (1-delta)^2)(w_sp + w_sm) + 2 delta (1-delta)(w_pp + w_pm)``
    and ``e_x`` likewise with the phi-minus/psi-minus weights in the first
    bracket.  Tiny negative drift is clamped to the unit interval.
    """
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"delta must lie in [0, 0.5], got {delta}")
    w_pp, w_pm, w_sp, w_sm = bell_weights(rho4)
    both = delta * delta + (1.0 - delta) * (1.0 - delta)
    one = 2.0 * delta * (1.0 - delta)
    e_z = both * (w_sp + w_sm) + one * (w_pp + w_pm)
    e_x = both * (w_pm + w_sm) + one * (w_pp + w_sp)
    clamp = lambda e: float(min(max(e, 0.0), 1.0))
    return QberPair(e_z=clamp(e_z), e_x=clamp(e_x))


def secret_fraction(pair: QberPair) -> float:
    """Asymptotic BB84 secret fraction ``max(0, 1 - h(e_z) - h(e_x))``."""
    return max(0.0, 1.0 - binary_entropy(pair.e_z) - binary_entropy(pair.e_x))


class InfoMode(Enum):
    """How much outcome information the end users exploit.

    FULL_INFO keys on every (swap pattern, decoder outcome) branch;
    DECODER_ONLY only on decoder outcomes (swap branches averaged first);
    SWAP_ONLY only on swap patterns (decoder branches averaged); BLACK_BOX
    averages everything into one state.
    """

    FULL_INFO = "full"
    DECODER_ONLY = "decoder-only"
    SWAP_ONLY = "swap-only"
    BLACK_BOX = "blackbox"


@dataclass(frozen=True)
class ModeReport:
    """Aggregated secret fraction; class components only in FULL_INFO mode."""

    mode: InfoMode
    r_total: float
    r_golden: float | None = None
    r_good_not_golden: float | None = None
    r_bad: float | None = None


def _rate_of_mass(mass: np.ndarray, weight: float, delta: float) -> float:
    """Weighted secret fraction of an unnormalized branch mass."""
    if weight <= 1e-300:
        return 0.0
    return weight * secret_fraction(qber(mass / weight, delta))


def aggregate(
    records: Iterable["OutcomeRecord"], mode: InfoMode, delta: float
) -> ModeReport:
    """Total secret fraction of an outcome enumeration under ``mode``.

    Frame corrections are already folded into the records, so averaging over
    swap patterns is performed on corrected states.  Decoder-outcome
    averaging uses the linearity of the decode channel: branch masses with
    the same kept index are summed before rates are taken.
    """
    from .repeater import OutcomeClass

    records = list(records)
    if mode is InfoMode.FULL_INFO:
        totals = {klass: 0.0 for klass in OutcomeClass}
        for rec in records:
            if rec.cond_state is None:
                continue
            rate = secret_fraction(qber(rec.cond_state, delta))
            totals[rec.klass] += rec.multiplicity * rec.joint_prob * rate
        r_g = totals[OutcomeClass.GOLDEN]
        r_gng = totals[OutcomeClass.GOOD_NOT_GOLDEN]
        r_b = totals[OutcomeClass.BAD]
        return ModeReport(
            mode=mode,
            r_total=r_g + r_gng + r_b,
            r_golden=r_g,
            r_good_not_golden=r_gng,
            r_bad=r_b,
        )
    groups: dict[object, tuple[np.ndarray, float]] = {}
    for rec in records:
        if rec.cond_state is None:
            continue
        if mode is InfoMode.SWAP_ONLY:
            key = rec.m
        elif mode is InfoMode.DECODER_ONLY:
            key = rec.d
        elif mode is InfoMode.BLACK_BOX:
            key = None
        else:
            raise ValueError(f"unknown mode {mode!r}")
        mass = rec.multiplicity * rec.joint_prob * rec.cond_state
        if key in groups:
            acc, w = groups[key]
            groups[key] = (acc + mass, w + rec.multiplicity * rec.joint_prob)
        else:
            groups[key] = (mass, rec.multiplicity * rec.joint_prob)
    r_total = sum(_rate_of_mass(mass, w, delta) for mass, w in groups.values())
    return ModeReport(mode=mode, r_total=float(r_total))


_DEFAULT_BRACKETS = {
    "beta": (0.0, 0.15),
    "delta": (0.0, 0.05),
    "f0": (0.6, 1.0),
}

#: Closed set of rate definitions selectable in sweeps and cutoff searches.
RATE_MODES = ("golden-only", "full", "decoder-only", "swap-only", "blackbox")


def chain_rate(
    params: NoiseParams,
    nesting: int,
    enc: EncoderMode = EncoderMode.CODED,
    dec_noisy: bool = True,
    mode: str = "golden-only",
) -> float:
    """Secret fraction of the chain under one rate definition.

    ``golden-only`` works at any nesting level 1..3; the aggregation modes
    run the full nesting-1 enumeration and are rejected for deeper chains.
    """
    from .repeater import enumerate_outcomes_n1, golden_pipeline

    if mode not in RATE_MODES:
        raise ValueError(f"mode must be one of {RATE_MODES}, got {mode!r}")
    if mode == "golden-only":
        return golden_pipeline(nesting, params, enc, dec_noisy).r_golden
    if nesting != 1:
        raise ValueError(f"mode {mode!r} requires nesting 1, got {nesting}")
    records = enumerate_outcomes_n1(params, enc, dec_noisy)
    return aggregate(records, InfoMode(mode), params.delta).r_total


def find_cutoff(
    vary: str,
    fixed: NoiseParams,
    nesting: int,
    enc: EncoderMode = EncoderMode.CODED,
    dec_noisy: bool = True,
    mode: str = "golden-only",
    bracket: tuple[float, float] | None = None,
    tol: float = 1e-4,
) -> float:
    """Bisect the noise value where the secret fraction hits zero.

    ``vary`` is one of ``beta``, ``delta`` or ``f0``; the other parameters
    come from ``fixed``.  The default brackets are beta in [0, 0.15], delta
    in [0, 0.05] and f0 in [0.6, 1].  Exactly one bracket end must give a
    positive rate, otherwise a ValueError reports both endpoint rates.
    """
    if vary not in _DEFAULT_BRACKETS:
        raise ValueError(f"vary must be one of {sorted(_DEFAULT_BRACKETS)}, got {vary!r}")
    lo, hi = bracket if bracket is not None else _DEFAULT_BRACKETS[vary]
    if not lo < hi:
        raise ValueError(f"bracket must be increasing, got ({lo}, {hi})")

    def rate(x: float) -> float:
        return chain_rate(
            dataclasses.replace(fixed, **{vary: x}), nesting, enc, dec_noisy, mode
        )

    pos = 1e-12
    r_lo, r_hi = rate(lo), rate(hi)
    if (r_lo > pos) == (r_hi > pos):
        raise ValueError(
            f"no rate sign change on bracket [{lo}, {hi}]: "
            f"rate({lo}) = {r_lo:.6g}, rate({hi}) = {r_hi:.6g}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (rate(mid) > pos) == (r_lo > pos):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
