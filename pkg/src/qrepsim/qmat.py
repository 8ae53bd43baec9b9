"""Dense operator algebra over labeled qubit registers.

Operators are plain complex numpy arrays of shape ``(2**n, 2**n)``.  A
register layout is an ordered sequence of unique string labels; the leftmost
label is the most significant bit of the matrix index.  All functions are
pure and never modify their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Default tolerance for Hermiticity / positivity diagnostics.
HERMITICITY_TOL = 1e-10

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def nqubits(op: np.ndarray) -> int:
    """Return the number of qubits a square operator acts on.

    Raises
    ------
    ValueError
        If the array is not square or its dimension is not a power of two.
    """
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {op.shape}")
    dim = op.shape[0]
    n = dim.bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"operator dimension {dim} is not a power of two")
    return n


def _check_layout(labels: Sequence[str], op: np.ndarray | None = None) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"register labels must be unique, got {labels}")
    if op is not None and nqubits(op) != len(labels):
        raise ValueError(
            f"layout {labels} has {len(labels)} labels but operator acts on "
            f"{nqubits(op)} qubits"
        )
    return labels


def tensor(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product; earlier factors occupy the more significant bits."""
    if not ops:
        raise ValueError("tensor() needs at least one operator")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def reorder(op: np.ndarray, labels: Sequence[str], new_labels: Sequence[str]) -> np.ndarray:
    """Permute the register order of ``op`` from ``labels`` to ``new_labels``.

    Both layouts must contain the same label set.  The returned operator acts
    on the same physical registers, indexed with ``new_labels[0]`` as the
    most significant bit.
    """
    labels = _check_layout(labels, op)
    new_labels = _check_layout(new_labels)
    if set(labels) != set(new_labels):
        raise ValueError(f"layouts {labels} and {new_labels} differ in label set")
    if labels == new_labels:
        return np.array(op, dtype=complex)
    n = len(labels)
    perm = [labels.index(lbl) for lbl in new_labels]
    axes = perm + [n + p for p in perm]
    return (
        np.asarray(op, dtype=complex)
        .reshape((2,) * (2 * n))
        .transpose(axes)
        .reshape(2**n, 2**n)
    )


def embed(gate: np.ndarray, layout: Sequence[str], targets: Sequence[str]) -> np.ndarray:
    """Embed ``gate`` acting on ``targets`` into the full ``layout`` space.

    ``gate`` must act on exactly ``len(targets)`` qubits; ``targets`` gives
    the gate's own register order (first target = gate's most significant
    bit).  Identity acts on all other registers.
    """
    layout = _check_layout(layout)
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target labels {targets}")
    missing = [t for t in targets if t not in layout]
    if missing:
        raise ValueError(f"target labels {missing} not present in layout {layout}")
    if nqubits(gate) != len(targets):
        raise ValueError(
            f"gate acts on {nqubits(gate)} qubits but {len(targets)} targets given"
        )
    rest = tuple(lbl for lbl in layout if lbl not in targets)
    full = tensor(gate, np.eye(2 ** len(rest))) if rest else np.asarray(gate, dtype=complex)
    return reorder(full, targets + rest, layout)


def partial_trace(op: np.ndarray, labels: Sequence[str], keep: Sequence[str]) -> np.ndarray:
    """Trace out every register not listed in ``keep``.

    The result's register order follows the order of ``keep``.  ``keep`` must
    be a non-empty subset of ``labels``; use ``np.trace`` for the full trace.
    """
    labels = _check_layout(labels, op)
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must name at least one register")
    bad = [lbl for lbl in keep if lbl not in labels]
    if bad:
        raise ValueError(f"keep labels {bad} not present in layout {labels}")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate keep labels {keep}")
    n = len(labels)
    if 2 * n > len(_LETTERS):
        raise ValueError(f"partial_trace supports at most {len(_LETTERS) // 2} qubits")
    row = list(_LETTERS[:n])
    col = list(_LETTERS[n : 2 * n])
    for p, lbl in enumerate(labels):
        if lbl not in keep:
            col[p] = row[p]
    out_row = [row[labels.index(lbl)] for lbl in keep]
    out_col = [col[labels.index(lbl)] for lbl in keep]
    spec = "".join(row) + "".join(col) + "->" + "".join(out_row) + "".join(out_col)
    k = len(keep)
    return np.einsum(spec, np.asarray(op, dtype=complex).reshape((2,) * (2 * n))).reshape(
        2**k, 2**k
    )


def dagger(op: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(op).conj().T


def symmetrize(op: np.ndarray) -> np.ndarray:
    """Repair Hermiticity drift: return ``(op + op^dagger) / 2``."""
    return (op + dagger(op)) / 2


@dataclass(frozen=True)
class StateDiagnostics:
    """Validity report for a candidate density operator."""

    trace: complex
    herm_deviation: float
    min_eigenvalue: float
    valid: bool


def validate_state(op: np.ndarray, tol: float = 1e-9) -> StateDiagnostics:
    """Check Hermiticity and positivity of ``op`` within ``tol``.

    Trace is reported but not constrained; unnormalized masses are valid as
    long as they are Hermitian and have no eigenvalue below ``-tol``.
    """
    nqubits(op)
    herm_dev = float(np.max(np.abs(op - dagger(op))))
    if herm_dev <= tol:
        eigs = np.linalg.eigvalsh(symmetrize(op))
        min_eig = float(eigs[0])
        valid = min_eig >= -tol
    else:
        min_eig = float("nan")
        valid = False
    return StateDiagnostics(
        trace=complex(np.trace(op)),
        herm_deviation=herm_dev,
        min_eigenvalue=min_eig,
        valid=valid,
    )
