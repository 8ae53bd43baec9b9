"""Building blocks of the encoded repeater: remote-CNOT link rows, swap rows,
encoder weights and the decoding channel.

The linear split of the codeword |0~> + |1~> reduces everything to operators
indexed by codeword bits (j, k).  A "row" is such an operator component; rows
with j != k are deliberately non-Hermitian and must not be symmetrized.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

import numpy as np

from . import qmat
from .noise import (
    CNOT,
    KET_0,
    KET_1,
    NoiseParams,
    ketbra,
    noisy_projector,
    noisy_two_qubit_gate,
    pauli_correction,
    werner_state,
)


class EncoderMode(Enum):
    """How codeword preparation noise enters link states.

    IDEAL: perfect codewords.  CODED: only the amplitudes surviving on the
    codeword components (per-row weights).  FULL: coded amplitudes plus the
    six diagonal leakage terms outside the code space (nesting level 1 only).
    """

    IDEAL = "ideal"
    CODED = "coded"
    FULL = "full"


_KETS = (KET_0, KET_1)

_ROW_LABELS = ("A", "a", "b", "B")
_SWAP_LABELS = ("A", "B", "C", "D")

#: Decoder measurement order behind outcome bit-tuples d (three-row code).
DECODE_MEASURED = ("A2", "A3", "D2", "D3")


def elementary_row(
    j: int, k: int, params: NoiseParams, a_out: int = 0, b_out: int = 0
) -> np.ndarray:
    """Row operator of one repeater link for codeword bits ``(j, k)``.

    A control qubit in ``|j><k|`` is joined to a fresh ``|0>`` target through
    a remote CNOT consuming one Werner pair: noisy CNOTs control->ancilla and
    ancilla->target, then biased Z readout on the first ancilla (result
    ``a_out``) and X readout on the second (result ``b_out``, 0 meaning
    plus).  The outcome branch is scaled by 4 and the standard teleportation
    corrections for nonzero outcomes (X on the target for ``a_out``, Z on the
    control for ``b_out``) are applied, so all four branches coincide.

    Returns the 4x4 operator on (control, target).
    """
    if j not in (0, 1) or k not in (0, 1):
        raise ValueError(f"codeword bits must be 0 or 1, got ({j}, {k})")
    rho = qmat.tensor(
        ketbra(_KETS[j], _KETS[k]), werner_state(params.f0), ketbra(KET_0)
    )
    rho = noisy_two_qubit_gate(rho, _ROW_LABELS, CNOT, ("A", "a"), params.beta)
    rho = noisy_two_qubit_gate(rho, _ROW_LABELS, CNOT, ("b", "B"), params.beta)
    meas = qmat.embed(noisy_projector("z", a_out, params.delta), _ROW_LABELS, ("a",))
    meas = meas @ qmat.embed(noisy_projector("x", b_out, params.delta), _ROW_LABELS, ("b",))
    out = 4.0 * qmat.partial_trace(meas @ rho, _ROW_LABELS, ("A", "B"))
    if a_out or b_out:
        corr = qmat.tensor(
            pauli_correction("Z" if b_out else "I"),
            pauli_correction("X" if a_out else "I"),
        )
        out = corr @ out @ qmat.dagger(corr)
    return out


def encoder_weight(j: int, k: int, beta: float, mode: EncoderMode) -> float:
    """Weight the noisy encoder leaves on the codeword row ``(j, k)``.

    IDEAL gives 1.  CODED gives the amplitude surviving two noisy encoding
    CNOTs on the component: ``1 + beta (beta/2 - 5/4)`` on the diagonal and
    ``(1 - beta)^2`` off it.  FULL is rejected here; its additional diagonal
    terms are produced by :func:`extra_encoder_terms`.
    """
    if j not in (0, 1) or k not in (0, 1):
        raise ValueError(f"codeword bits must be 0 or 1, got ({j}, {k})")
    if mode is EncoderMode.IDEAL:
        return 1.0
    if mode is EncoderMode.CODED:
        if j == k:
            return 1.0 + beta * (beta / 2.0 - 5.0 / 4.0)
        return (1.0 - beta) ** 2
    raise ValueError("FULL mode has no per-row weight; use extra_encoder_terms")


def extra_encoder_terms(beta: float) -> list[tuple[tuple[int, int, int], float]]:
    """Diagonal leakage terms of the noisy encoder outside the code space.

    Returns the six computational patterns with their weights: the two
    patterns reached by depolarizing only the second encoding CNOT carry
    ``beta/4 (3/2 - beta)``, the remaining four carry ``beta/8``.  Together
    with the coded weights the prepared state has trace exactly 1.
    """
    heavy = beta / 4.0 * (3.0 / 2.0 - beta)
    light = beta / 8.0
    return [
        ((1, 0, 1), heavy),
        ((0, 1, 0), heavy),
        ((0, 0, 1), light),
        ((1, 0, 0), light),
        ((1, 1, 0), light),
        ((0, 1, 1), light),
    ]


_SWAP_CNOT_TARGETS = ("B", "C")


def swap_joint(rho16: np.ndarray, params: NoiseParams, m: int, b_out: int = 0) -> np.ndarray:
    """Swap step on an arbitrary joint operator over (A, B, C, D).

    Same circuit as :func:`swap_row` but without assuming a product of two
    row operators; used to build the vectorized level-update kernel.
    """
    if m not in (0, 1) or b_out not in (0, 1):
        raise ValueError(f"outcomes must be 0 or 1, got m={m!r}, b_out={b_out!r}")
    if qmat.nqubits(rho16) != 4:
        raise ValueError("swap_joint expects a 4-qubit operator")
    rho = noisy_two_qubit_gate(rho16, _SWAP_LABELS, CNOT, _SWAP_CNOT_TARGETS, params.beta)
    meas = qmat.embed(noisy_projector("x", b_out, params.delta), _SWAP_LABELS, ("B",))
    meas = meas @ qmat.embed(noisy_projector("z", m, params.delta), _SWAP_LABELS, ("C",))
    return qmat.partial_trace(meas @ rho, _SWAP_LABELS, ("A", "D"))


def swap_row(
    left: np.ndarray,
    right: np.ndarray,
    m: int,
    params: NoiseParams,
    b_out: int = 0,
) -> np.ndarray:
    """Entanglement-swapping update of two row operators.

    ``left`` acts on (A, B), ``right`` on (C, D).  A noisy CNOT B->C is
    followed by biased X readout on B (result ``b_out``, 0 meaning plus) and
    biased Z readout on C (result ``m``); B and C are traced out.  No frame
    correction is applied here; corrections for nonzero outcomes are a
    property of the whole measurement pattern and live with the assembly.

    Returns the 4x4 operator on (A, D).
    """
    if qmat.nqubits(left) != 2 or qmat.nqubits(right) != 2:
        raise ValueError("swap_row expects two 2-qubit row operators")
    return swap_joint(qmat.tensor(left, right), params, m, b_out)


def decode_outcome_masses(
    rho: np.ndarray, params: NoiseParams, dec_noisy: bool = True, rows: int = 3
) -> dict[tuple[int, ...], np.ndarray]:
    """Unnormalized decoded masses for all decoder outcomes.

    For the default three-row code the input lives on (A1, A2, A3, D1, D2,
    D3).  Each side passes through noisy CNOTs 1->2 then 1->3 (ideal CNOTs
    when ``dec_noisy`` is false; readout bias always applies), qubits 2 and 3
    of both sides are read out in the Z basis, and the kept qubit of a side
    is X-flipped exactly when all of that side's outcome bits are 1.

    Returns a dict mapping the outcome tuple ``(d_A2, d_A3, d_D2, d_D3)`` to
    the 4x4 mass on (A1, D1); masses sum to the decoder-input reduced state.
    ``rows`` generalizes to repetition codes of other lengths (1, 2 or 3),
    with outcome tuples of ``2 (rows - 1)`` bits.
    """
    if rows not in (1, 2, 3):
        raise ValueError(f"rows must be 1, 2 or 3, got {rows}")
    if qmat.nqubits(rho) != 2 * rows:
        raise ValueError(f"decoder input must act on {2 * rows} qubits")
    labels = tuple(f"A{i}" for i in range(1, rows + 1)) + tuple(
        f"D{i}" for i in range(1, rows + 1)
    )
    measured = tuple(f"{side}{i}" for side in "AD" for i in range(2, rows + 1))
    beta = params.beta if dec_noisy else 0.0
    sigma = rho
    for side in "AD":
        for i in range(2, rows + 1):
            sigma = noisy_two_qubit_gate(
                sigma, labels, CNOT, (f"{side}1", f"{side}{i}"), beta
            )
    projs = {
        (lbl, out): qmat.embed(noisy_projector("z", out, params.delta), labels, (lbl,))
        for lbl in measured
        for out in (0, 1)
    }
    per_side = rows - 1
    masses: dict[tuple[int, ...], np.ndarray] = {}
    for d in product((0, 1), repeat=2 * per_side):
        meas = np.eye(2 ** (2 * rows), dtype=complex)
        for lbl, out in zip(measured, d):
            meas = meas @ projs[(lbl, out)]
        mass = qmat.partial_trace(meas @ sigma, labels, ("A1", "D1"))
        flip = qmat.tensor(
            pauli_correction("X" if per_side and all(d[:per_side]) else "I"),
            pauli_correction("X" if per_side and all(d[per_side:]) else "I"),
        )
        masses[d] = qmat.symmetrize(flip @ mass @ flip)
    return masses


def decode_channel(
    rho6: np.ndarray,
    params: NoiseParams,
    d: tuple[int, int, int, int],
    dec_noisy: bool = True,
) -> tuple[np.ndarray | None, float]:
    """Decode one outcome branch of a 6-qubit encoded pair.

    Returns ``(state, prob)`` where ``prob`` is the probability of outcome
    ``d`` conditioned on the (possibly unnormalized) input and ``state`` is
    the normalized 4x4 state on (A1, D1), or None when the branch has
    vanishing probability.
    """
    d = tuple(int(b) for b in d)  # type: ignore[assignment]
    if len(d) != 4 or any(b not in (0, 1) for b in d):
        raise ValueError(f"d must be four bits, got {d!r}")
    total = float(np.real(np.trace(rho6)))
    if total <= 0.0:
        raise ValueError("decoder input has non-positive trace")
    mass = decode_outcome_masses(rho6, params, dec_noisy)[d]
    weight = float(np.real(np.trace(mass)))
    prob = weight / total
    if weight < 1e-300:
        return None, prob
    return mass / weight, prob
