"""Noise models: Werner pairs, depolarizing two-qubit gates, biased readout.

Conventions: ``|phi+> = (|00> + |11>)/sqrt(2)``; a two-qubit gate matrix has
its first register as the most significant bit; the gate error channel with
strength ``beta`` replaces the two target qubits by the maximally mixed state
with probability ``beta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from . import qmat

KET_0 = np.array([1.0, 0.0], dtype=complex)
KET_1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: CNOT with the first (most significant) register as control.
CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)


class BellKind(Enum):
    """The four Bell states in the fixed order used for weight reports."""

    PHI_PLUS = 0
    PHI_MINUS = 1
    PSI_PLUS = 2
    PSI_MINUS = 3


_SQ2 = np.sqrt(2.0)
BELL_VECTORS: dict[BellKind, np.ndarray] = {
    BellKind.PHI_PLUS: np.array([1, 0, 0, 1], dtype=complex) / _SQ2,
    BellKind.PHI_MINUS: np.array([1, 0, 0, -1], dtype=complex) / _SQ2,
    BellKind.PSI_PLUS: np.array([0, 1, 1, 0], dtype=complex) / _SQ2,
    BellKind.PSI_MINUS: np.array([0, 1, -1, 0], dtype=complex) / _SQ2,
}


def ketbra(ket: np.ndarray, bra: np.ndarray | None = None) -> np.ndarray:
    """Outer product ``|ket><bra|`` (``bra`` defaults to ``ket``)."""
    if bra is None:
        bra = ket
    return np.outer(np.asarray(ket, dtype=complex), np.asarray(bra, dtype=complex).conj())


@dataclass(frozen=True)
class NoiseParams:
    """Bundle of the three error-model parameters.

    Parameters
    ----------
    f0 : float
        Werner fidelity of each distributed entangled pair, in [0.25, 1].
    beta : float
        Two-qubit gate depolarization probability, in [0, 1].
    delta : float
        Measurement bit-flip probability, in [0, 0.5].
    """

    f0: float = 1.0
    beta: float = 0.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        if not 0.25 <= self.f0 <= 1.0:
            raise ValueError(f"f0 must lie in [0.25, 1], got {self.f0}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if not 0.0 <= self.delta <= 0.5:
            raise ValueError(f"delta must lie in [0, 0.5], got {self.delta}")


def werner_state(f0: float) -> np.ndarray:
    """Werner state with fidelity ``f0`` to ``|phi+>``.

    Returns ``f0 |phi+><phi+| + (1 - f0)/3 (I - |phi+><phi+|)``.
    """
    if not 0.25 <= f0 <= 1.0:
        raise ValueError(f"f0 must lie in [0.25, 1], got {f0}")
    phi = ketbra(BELL_VECTORS[BellKind.PHI_PLUS])
    return f0 * phi + (1.0 - f0) / 3.0 * (np.eye(4) - phi)


def noisy_two_qubit_gate(
    rho: np.ndarray,
    labels: Sequence[str],
    gate: np.ndarray,
    targets: Sequence[str],
    beta: float,
) -> np.ndarray:
    """Apply a two-qubit unitary followed by two-qubit depolarization.

    Returns ``(1 - beta) U rho U^dag + (beta/4) Tr_targets(rho) (x) I_4``
    with the identity factor re-inserted at the target registers.  The input
    may be any (possibly unnormalized) operator; the map is linear and trace
    preserving.

    Raises
    ------
    ValueError
        If ``gate`` is not a 4x4 unitary or the labels are inconsistent.
    """
    targets = tuple(targets)
    if qmat.nqubits(gate) != 2 or len(targets) != 2:
        raise ValueError("gate must act on exactly two target registers")
    if np.max(np.abs(gate @ qmat.dagger(gate) - np.eye(4))) > 1e-9:
        raise ValueError("gate matrix is not unitary")
    labels = tuple(labels)
    u = qmat.embed(gate, labels, targets)
    out = (1.0 - beta) * (u @ rho @ qmat.dagger(u))
    if beta != 0.0:
        rest = tuple(lbl for lbl in labels if lbl not in targets)
        if rest:
            reduced = qmat.partial_trace(rho, labels, rest)
            mixed = qmat.reorder(
                qmat.tensor(reduced, np.eye(4)), rest + targets, labels
            )
        else:
            mixed = complex(np.trace(rho)) * np.eye(4)
        out = out + (beta / 4.0) * mixed
    return out


def noisy_projector(basis: str, outcome: int, delta: float) -> np.ndarray:
    """Biased single-qubit readout element.

    ``basis`` is ``"z"`` or ``"x"``; ``outcome`` is 0 or 1 (for x: 0 means
    the plus result).  The element assigns weight ``1 - delta`` to the stated
    result and ``delta`` to its complement, so the two outcomes of a basis
    sum to the identity for every ``delta``.
    """
    if basis not in ("z", "x"):
        raise ValueError(f"basis must be 'z' or 'x', got {basis!r}")
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"delta must lie in [0, 0.5], got {delta}")
    if basis == "z":
        p_a, p_b = ketbra(KET_0), ketbra(KET_1)
    else:
        p_a, p_b = ketbra(KET_PLUS), ketbra(KET_MINUS)
    if outcome == 1:
        p_a, p_b = p_b, p_a
    return (1.0 - delta) * p_a + delta * p_b


def bell_weights(rho4: np.ndarray) -> tuple[float, float, float, float]:
    """Diagonal weights of a two-qubit operator in the Bell basis.

    Order: ``(phi+, phi-, psi+, psi-)``.  Imaginary parts (Hermiticity
    drift) are discarded.
    """
    if qmat.nqubits(rho4) != 2:
        raise ValueError("bell_weights expects a two-qubit operator")
    return tuple(
        float(np.real(np.conj(vec) @ rho4 @ vec)) for vec in BELL_VECTORS.values()
    )  # type: ignore[return-value]


_PAULIS = {"I": PAULI_I, "X": PAULI_X, "Z": PAULI_Z, "XZ": PAULI_X @ PAULI_Z}


def pauli_correction(kind: str) -> np.ndarray:
    """Single-qubit frame-correction unitary: ``"I"``, ``"X"``, ``"Z"`` or ``"XZ"``."""
    try:
        return _PAULIS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_PAULIS)}, got {kind!r}") from None


def apply_pauli(
    rho: np.ndarray, labels: Sequence[str], kind: str, target: str
) -> np.ndarray:
    """Conjugate ``rho`` with a Pauli correction on one labeled register."""
    u = qmat.embed(pauli_correction(kind), tuple(labels), (target,))
    return u @ rho @ qmat.dagger(u)
