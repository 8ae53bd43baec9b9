"""Chain-level assembly: row tables across nesting levels, measurement-pattern
resolved encoded pair states, the golden-branch pipeline and the full outcome
enumeration at nesting level 1.

Register naming: the two end users keep banks (A1, A2, A3) and (D1, D2, D3);
a blocked layout lists one bank after the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import qmat
from .circuits import (
    EncoderMode,
    decode_channel,
    decode_outcome_masses,
    elementary_row,
    encoder_weight,
    extra_encoder_terms,
    swap_joint,
    swap_row,
)
from .noise import NoiseParams, pauli_correction

_CHUNK = 8192

#: Bit pair (codeword ket bit, bra bit) for each of the four row indices.
ROW_BITS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class RowTable:
    """All row operators of one nesting level.

    ``ops[c]`` is the 4x4 row operator for combo index ``c``; the combo's
    ``2**(level + 1)`` bits (most significant first) list the codeword ket
    and bra bits of every elementary link the row spans, leftmost link first.
    ``weights[c]`` is the product of encoder weights of those links.
    """

    level: int
    params: NoiseParams
    enc: EncoderMode
    ops: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=16)
def _swap_kernel(params: NoiseParams, m: int, b_out: int) -> np.ndarray:
    """Matrix of the swap step as a map from vec(16x16) to vec(4x4)."""
    kern = np.empty((16, 256), dtype=complex)
    basis = np.zeros((16, 16), dtype=complex)
    for p in range(16):
        for q in range(16):
            basis[p, q] = 1.0
            kern[:, p * 16 + q] = swap_joint(basis, params, m, b_out).reshape(16)
            basis[p, q] = 0.0
    return kern


def _level_up(
    ops: np.ndarray, weights: np.ndarray, params: NoiseParams
) -> tuple[np.ndarray, np.ndarray]:
    """One nesting step: swap every ordered pair of rows at the fixed outcome."""
    kern_t = _swap_kernel(params, 0, 0).T
    m = len(ops)
    n = m * m
    new_ops = np.empty((n, 4, 4), dtype=complex)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        idx = np.arange(lo, hi)
        left = ops[idx // m]
        right = ops[idx % m]
        joint = np.einsum("nab,ncd->nacbd", left, right).reshape(hi - lo, 256)
        new_ops[lo:hi] = (joint @ kern_t).reshape(hi - lo, 4, 4)
    return new_ops, np.outer(weights, weights).ravel()


def build_row_table(level: int, params: NoiseParams, enc: EncoderMode) -> RowTable:
    """Build the row table for ``level`` nesting steps (0 = elementary links).

    FULL encoder mode is rejected: its leakage terms are not per-row weights;
    use the pattern-state assembly at nesting level 1 instead.
    """
    if enc is EncoderMode.FULL:
        raise ValueError("row tables support IDEAL and CODED encoders only")
    if not 0 <= level <= 3:
        raise ValueError(f"level must lie in 0..3, got {level}")
    ops = np.stack([elementary_row(j, k, params) for j, k in ROW_BITS])
    weights = np.array(
        [encoder_weight(j, k, params.beta, enc) for j, k in ROW_BITS], dtype=float
    )
    for _ in range(level):
        ops, weights = _level_up(ops, weights, params)
    return RowTable(level=level, params=params, enc=enc, ops=ops, weights=weights)


_INTERLEAVED = ("A1", "D1", "A2", "D2", "A3", "D3")
_BLOCKED = ("A1", "A2", "A3", "D1", "D2", "D3")


def _blocked_from_interleaved(op: np.ndarray) -> np.ndarray:
    return qmat.reorder(op, _INTERLEAVED, _BLOCKED)


def assemble_es_state(table: RowTable) -> np.ndarray:
    """Unnormalized end-to-end encoded pair state after all swaps.

    Sums ``weight * row x row x row`` over all index combos with the
    codeword-split prefactor ``(1/2)**(2**level)`` and returns the 64x64
    operator on the blocked layout (A1, A2, A3, D1, D2, D3).  Its trace is
    the probability of the fixed golden measurement pattern divided by the
    pattern multiplicity ``16**(2**level - 1)``.
    """
    ops = table.ops
    weights = table.weights * 0.5 ** (2**table.level)
    acc = np.zeros((256, 16), dtype=complex)
    for lo in range(0, len(ops), _CHUNK):
        hi = min(lo + _CHUNK, len(ops))
        chunk = ops[lo:hi]
        pair = np.einsum(
            "n,nab,ncd->nacbd", weights[lo:hi], chunk, chunk, optimize=True
        ).reshape(hi - lo, 256)
        acc += pair.T @ chunk.reshape(hi - lo, 16)
    full = acc.reshape(4, 4, 4, 4, 4, 4).transpose(0, 1, 4, 2, 3, 5).reshape(64, 64)
    return qmat.symmetrize(_blocked_from_interleaved(full))


def link_terms(
    params: NoiseParams, enc: EncoderMode, rows: int = 3
) -> list[tuple[tuple[tuple[int, int], ...], float]]:
    """Decomposition of one encoded link input into weighted row patterns.

    Each term is ``(pairs, weight)`` where ``pairs[i]`` gives the (ket, bra)
    codeword bits feeding row ``i``.  Codeword terms carry half the encoder
    weight (the codeword-split prefactor); FULL mode appends the six diagonal
    leakage patterns of the noisy encoder.
    """
    if rows not in (1, 2, 3):
        raise ValueError(f"rows must be 1, 2 or 3, got {rows}")
    if enc is not EncoderMode.IDEAL and rows != 3:
        raise ValueError(f"{enc.name} encoder weights are defined for 3 rows only")
    base_mode = EncoderMode.IDEAL if enc is EncoderMode.IDEAL else EncoderMode.CODED
    terms: list[tuple[tuple[tuple[int, int], ...], float]] = [
        (((j, k),) * rows, 0.5 * encoder_weight(j, k, params.beta, base_mode))
        for j, k in ROW_BITS
    ]
    if enc is EncoderMode.FULL:
        terms.extend(
            (tuple((s, s) for s in pattern), w)
            for pattern, w in extra_encoder_terms(params.beta)
        )
    return terms


def linearized_link_state(
    params: NoiseParams, enc: EncoderMode = EncoderMode.IDEAL, rows: int = 3
) -> np.ndarray:
    """One encoded link as the weighted sum of row-operator products.

    Returns the ``2 rows``-qubit state on the blocked banks (A1..Ar,
    B1..Br); trace is 1 for the IDEAL and FULL encoders.
    """
    rows_cache = {bits: elementary_row(*bits, params) for bits in ROW_BITS}
    dim = 4**rows
    total = np.zeros((dim, dim), dtype=complex)
    for pairs, weight in link_terms(params, enc, rows):
        total += weight * qmat.tensor(*(rows_cache[p] for p in pairs))
    inter = tuple(f"{side}{i}" for i in range(1, rows + 1) for side in "AB")
    blocked = tuple(f"{side}{i}" for side in "AB" for i in range(1, rows + 1))
    return qmat.symmetrize(qmat.reorder(total, inter, blocked))


def frame_correction(
    op: np.ndarray, b_bits: Sequence[int], c_bits: Sequence[int]
) -> np.ndarray:
    """Pauli frame repair of a blocked post-swap state for pattern (b, c).

    The Z outcomes identify the encoded Bell pair: a strict majority of ones
    means the bit-flipped pair, repaired by X on every second-bank qubit.
    Each minus X outcome contributes a phase flip, repaired by Z on the
    matching second-bank qubit.  Applied on the D side throughout.
    """
    rows = len(b_bits)
    if len(c_bits) != rows or qmat.nqubits(op) != 2 * rows:
        raise ValueError("pattern length does not match operator size")
    maj = 1 if 2 * sum(c_bits) > rows else 0
    gates = [
        pauli_correction("X" if maj else "I") @ pauli_correction("Z" if b else "I")
        for b in b_bits
    ]
    corr = qmat.tensor(np.eye(2**rows), *gates)
    return corr @ op @ qmat.dagger(corr)


def pattern_es_state(
    params: NoiseParams,
    enc: EncoderMode,
    b_bits: Sequence[int],
    c_bits: Sequence[int],
    rows: int = 3,
) -> np.ndarray:
    """Unnormalized encoded pair state for one explicit swap outcome pattern.

    Single nesting level: two encoded links are swapped with X outcomes
    ``b_bits`` (0 = plus) and Z outcomes ``c_bits`` at the middle station.
    The frame correction for the pattern is already applied; the trace is the
    probability of exactly this pattern.  Blocked output layout.
    """
    b_bits = tuple(int(b) for b in b_bits)
    c_bits = tuple(int(c) for c in c_bits)
    if len(b_bits) != rows or len(c_bits) != rows:
        raise ValueError(f"need {rows} X and Z outcome bits")
    rows_cache = {bits: elementary_row(*bits, params) for bits in ROW_BITS}
    swap_cache: dict[tuple, np.ndarray] = {}

    def swapped(lbits, rbits, i):
        key = (lbits, rbits, b_bits[i], c_bits[i])
        if key not in swap_cache:
            swap_cache[key] = swap_row(
                rows_cache[lbits], rows_cache[rbits], c_bits[i], params, b_out=b_bits[i]
            )
        return swap_cache[key]

    terms = link_terms(params, enc, rows)
    dim = 4**rows
    total = np.zeros((dim, dim), dtype=complex)
    for pairs_l, w_l in terms:
        for pairs_r, w_r in terms:
            factors = [swapped(pairs_l[i], pairs_r[i], i) for i in range(rows)]
            total += (w_l * w_r) * qmat.tensor(*factors)
    inter = tuple(f"{side}{i}" for i in range(1, rows + 1) for side in "AD")
    blocked = tuple(f"{side}{i}" for side in "AD" for i in range(1, rows + 1))
    total = qmat.reorder(total, inter, blocked)
    return qmat.symmetrize(frame_correction(total, b_bits, c_bits))


def golden_multiplicity(nesting: int) -> int:
    """Number of measurement patterns equivalent to the all-golden one."""
    return 16 ** (2**nesting - 1)


@dataclass(frozen=True)
class GoldenReport:
    """Golden-branch summary: probability, decoded state and key rate."""

    nesting: int
    p_golden: float
    rho: np.ndarray
    e_z: float
    e_x: float
    r_conditional: float
    r_golden: float
    trace_es: float


def golden_pipeline(
    nesting: int,
    params: NoiseParams,
    enc: EncoderMode = EncoderMode.CODED,
    dec_noisy: bool = True,
) -> GoldenReport:
    """End-to-end figures of merit of the golden outcome branch.

    Assembles the encoded pair state at the given nesting level (1..3),
    decodes the all-zero decoder branch and reports the total golden
    probability (pattern multiplicity included), its conditional QBERs and
    the probability-weighted secret fraction.
    """
    if not 1 <= nesting <= 3:
        raise ValueError(f"nesting must lie in 1..3, got {nesting}")
    if enc is EncoderMode.FULL:
        if nesting != 1:
            raise ValueError("FULL encoder mode is defined for nesting 1 only")
        es = pattern_es_state(params, enc, (0, 0, 0), (0, 0, 0))
    else:
        es = assemble_es_state(build_row_table(nesting, params, enc))
    trace_es = float(np.real(np.trace(es)))
    state, p_dec = decode_channel(es, params, (0, 0, 0, 0), dec_noisy)
    p_golden = golden_multiplicity(nesting) * trace_es * p_dec
    from .qkd import qber, secret_fraction

    if state is None:
        e_z = e_x = float("nan")
        r_cond = 0.0
    else:
        pair = qber(state, params.delta)
        e_z, e_x = pair.e_z, pair.e_x
        r_cond = secret_fraction(pair)
    return GoldenReport(
        nesting=nesting,
        p_golden=p_golden,
        rho=state,
        e_z=e_z,
        e_x=e_x,
        r_conditional=r_cond,
        r_golden=p_golden * r_cond,
        trace_es=trace_es,
    )


class OutcomeClass(Enum):
    """Classification of nesting-1 outcome branches."""

    GOLDEN = "golden"
    GOOD_NOT_GOLDEN = "good-not-golden"
    BAD = "bad"


@dataclass(frozen=True)
class OutcomeRecord:
    """One (swap pattern, decoder outcome) branch at nesting level 1.

    ``m`` holds the swap station's (X outcomes, Z outcomes) bit tuples and
    ``d`` the four decoder bits.  ``joint_prob`` is the probability of this
    exact branch; ``multiplicity`` counts equivalent branches represented by
    it (equal conditional state after frame correction).  ``cond_state`` is
    None for vanishing probability.
    """

    m: tuple[tuple[int, int, int], tuple[int, int, int]]
    d: tuple[int, int, int, int]
    joint_prob: float
    cond_state: np.ndarray | None
    klass: OutcomeClass
    multiplicity: int


_REDUCED_PATTERNS = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))


def enumerate_outcomes_n1(
    params: NoiseParams,
    enc: EncoderMode = EncoderMode.IDEAL,
    dec_noisy: bool = True,
) -> list[OutcomeRecord]:
    """All outcome branches of the nesting-1 chain, reduced by symmetry.

    Enumerates the representative Z patterns 000 (good) and 001, 010, 100
    (one flipped row each) at the all-plus X pattern, each crossed with the
    16 decoder outcomes.  Every record carries multiplicity 16 (four Bell
    identifications times four X patterns); total probability over records,
    multiplicity included, is 1 for the trace-preserving encoder modes
    (IDEAL, FULL), and falls short of 1 by the discarded leakage mass under
    the CODED truncation.
    """
    records: list[OutcomeRecord] = []
    b_bits = (0, 0, 0)
    for c_bits in _REDUCED_PATTERNS:
        es = pattern_es_state(params, enc, b_bits, c_bits)
        masses = decode_outcome_masses(es, params, dec_noisy)
        for d in sorted(masses):
            mass = masses[d]
            p = float(np.real(np.trace(mass)))
            if c_bits == (0, 0, 0):
                klass = (
                    OutcomeClass.GOLDEN
                    if d == (0, 0, 0, 0)
                    else OutcomeClass.GOOD_NOT_GOLDEN
                )
            else:
                klass = OutcomeClass.BAD
            state = mass / p if p > 1e-300 else None
            records.append(
                OutcomeRecord(
                    m=(b_bits, c_bits),
                    d=d,
                    joint_prob=p,
                    cond_state=state,
                    klass=klass,
                    multiplicity=16,
                )
            )
    return records


def enumerate_outcomes_n1_exhaustive(
    params: NoiseParams,
    enc: EncoderMode = EncoderMode.IDEAL,
    dec_noisy: bool = True,
) -> list[OutcomeRecord]:
    """All 64 swap patterns times 16 decoder outcomes, multiplicity 1 each.

    Slower reference enumeration used to validate the reduced one: good
    patterns have uniform Z outcomes, every other pattern is one flip away
    from a uniform one and is bad.
    """
    records: list[OutcomeRecord] = []
    for b_bits in product((0, 1), repeat=3):
        for c_bits in product((0, 1), repeat=3):
            es = pattern_es_state(params, enc, b_bits, c_bits)
            masses = decode_outcome_masses(es, params, dec_noisy)
            good = sum(c_bits) in (0, 3)
            for d in sorted(masses):
                mass = masses[d]
                p = float(np.real(np.trace(mass)))
                if good:
                    klass = (
                        OutcomeClass.GOLDEN
                        if d == (0, 0, 0, 0)
                        else OutcomeClass.GOOD_NOT_GOLDEN
                    )
                else:
                    klass = OutcomeClass.BAD
                records.append(
                    OutcomeRecord(
                        m=(b_bits, c_bits),
                        d=d,
                        joint_prob=p,
                        cond_state=mass / p if p > 1e-300 else None,
                        klass=klass,
                        multiplicity=1,
                    )
                )
    return records


def verify_b_register_symmetry(
    params: NoiseParams,
    enc: EncoderMode = EncoderMode.IDEAL,
    dec_noisy: bool = True,
) -> float:
    """Max pairwise golden secret-fraction deviation across X patterns.

    Recomputes the golden branch for the X patterns +++, +--, -+-, --+ with
    their frame corrections; the result should vanish to numerical precision
    for every parameter set.
    """
    from .qkd import qber, secret_fraction

    rates = []
    for b_bits in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)):
        es = pattern_es_state(params, enc, b_bits, (0, 0, 0))
        state, _ = decode_channel(es, params, (0, 0, 0, 0), dec_noisy)
        rates.append(secret_fraction(qber(state, params.delta)))
    return max(abs(a - b) for a in rates for b in rates)
