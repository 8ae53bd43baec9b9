"""Brute-force reference simulation on the full Hilbert space.

Simulates a complete nesting-1 chain (two encoded links, swap station,
decoders) without the codeword row split, for repetition codes of length 1,
2 or 3.  Gates are applied by axis-local contractions rather than embedded
matrix products, so this path shares no channel mechanics with the row
engine.  Worst case (length 3) works on 4096 x 4096 operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

import numpy as np

from . import qmat
from .circuits import EncoderMode
from .noise import (
    CNOT,
    KET_0,
    KET_PLUS,
    NoiseParams,
    ketbra,
    noisy_projector,
    werner_state,
)
from .repeater import frame_correction


@dataclass(frozen=True)
class OracleConfig:
    """Brute-force run configuration: code length 1..3, noise, encoder."""

    code_length: int
    params: NoiseParams
    enc: EncoderMode = EncoderMode.IDEAL

    def __post_init__(self) -> None:
        if self.code_length not in (1, 2, 3):
            raise ValueError(f"code_length must be 1, 2 or 3, got {self.code_length}")
        if self.enc is EncoderMode.CODED:
            raise ValueError(
                "CODED is a truncation with no physical preparation; "
                "the oracle supports IDEAL and FULL"
            )
        if self.enc is EncoderMode.FULL and self.code_length != 3:
            raise ValueError("FULL encoding is defined for code length 3 only")


def _front_perm(n: int, positions: list[int]) -> list[int]:
    return positions + [p for p in range(n) if p not in positions]


def _permute_qubits(rho: np.ndarray, n: int, perm: list[int]) -> np.ndarray:
    axes = perm + [n + p for p in perm]
    return rho.reshape((2,) * (2 * n)).transpose(axes).reshape(2**n, 2**n)


def _apply_noisy_cnot(
    rho: np.ndarray, labels: tuple[str, ...], control: str, target: str, beta: float
) -> np.ndarray:
    """Depolarizing CNOT on two registers, contracted on local axes."""
    n = len(labels)
    perm = _front_perm(n, [labels.index(control), labels.index(target)])
    inv = [perm.index(p) for p in range(n)]
    front = _permute_qubits(rho, n, perm)
    rest = 2 ** (n - 2)
    t = front.reshape(4, rest, 4, rest)
    out = (1.0 - beta) * np.einsum(
        "ab,brcs,dc->ards", CNOT, t, CNOT.conj(), optimize=True
    )
    if beta != 0.0:
        reduced = np.einsum("aras->rs", t)
        out += (beta / 4.0) * np.einsum(
            "ad,rs->ards", np.eye(4, dtype=complex), reduced
        )
    return _permute_qubits(out.reshape(2**n, 2**n), n, inv)


def _left_multiply_1q(
    rho: np.ndarray, labels: tuple[str, ...], op: np.ndarray, target: str
) -> np.ndarray:
    """Left multiplication by a single-register operator (row index only)."""
    n = len(labels)
    p = labels.index(target)
    view = rho.reshape(2**p, 2, -1)
    return np.einsum("ab,xby->xay", op, view).reshape(2**n, 2**n)


def _conjugate_1q(
    rho: np.ndarray, labels: tuple[str, ...], op: np.ndarray, target: str
) -> np.ndarray:
    n = len(labels)
    p = labels.index(target)
    out = _left_multiply_1q(rho, labels, op, target)
    view = out.reshape(2**n * 2**p, 2, -1)
    return np.einsum("xby,ab->xay", view, op.conj()).reshape(2**n, 2**n)


def encoded_input(code_length: int, params: NoiseParams, enc: EncoderMode) -> np.ndarray:
    """Codeword bank before link distribution.

    IDEAL returns the repetition-code plus state.  FULL prepares it
    physically: plus times zeros pushed through noisy encoding CNOTs 1->2
    then 1->3.
    """
    if enc is EncoderMode.IDEAL:
        ket = np.zeros(2**code_length, dtype=complex)
        ket[0] = ket[-1] = 1.0 / np.sqrt(2.0)
        return ketbra(ket)
    labels = tuple(f"q{i}" for i in range(1, code_length + 1))
    rho = ketbra(KET_PLUS)
    for _ in range(code_length - 1):
        rho = np.kron(rho, ketbra(KET_0))
    for i in range(2, code_length + 1):
        rho = _apply_noisy_cnot(rho, labels, "q1", f"q{i}", params.beta)
    return rho


def _bank(prefix: str, d: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, d + 1))


def brute_elementary(cfg: OracleConfig) -> np.ndarray:
    """One encoded link state on the blocked banks (A1..Ad, B1..Bd).

    Joins the encoded bank to fresh zeros through one remote CNOT per row
    (Werner pair, two noisy CNOTs, biased Z and X readout at the fixed
    outcomes) and scales by 4 per row, matching the row-engine convention.
    """
    d = cfg.code_length
    params = cfg.params
    labels = _bank("A", d) + _bank("B", d) + tuple(
        chain.from_iterable((f"a{i}", f"b{i}") for i in range(1, d + 1))
    )
    rho = encoded_input(d, params, cfg.enc)
    for _ in range(d):
        rho = np.kron(rho, ketbra(KET_0))
    werner = werner_state(params.f0)
    for _ in range(d):
        rho = np.kron(rho, werner)
    for i in range(1, d + 1):
        rho = _apply_noisy_cnot(rho, labels, f"A{i}", f"a{i}", params.beta)
        rho = _apply_noisy_cnot(rho, labels, f"b{i}", f"B{i}", params.beta)
    pz = noisy_projector("z", 0, params.delta)
    px = noisy_projector("x", 0, params.delta)
    for i in range(1, d + 1):
        rho = _left_multiply_1q(rho, labels, pz, f"a{i}")
        rho = _left_multiply_1q(rho, labels, px, f"b{i}")
    out = qmat.partial_trace(rho, labels, _bank("A", d) + _bank("B", d))
    return qmat.symmetrize(4.0**d * out)


def brute_swap_mass(
    cfg: OracleConfig, b_bits: tuple[int, ...], c_bits: tuple[int, ...]
) -> np.ndarray:
    """Post-swap mass on the end banks for one explicit outcome pattern.

    Two identical links (A, B) and (C, D) meet at the middle station: noisy
    CNOT B_i -> C_i per row, biased X readout of B (bits ``b_bits``) and Z
    readout of C (bits ``c_bits``), then the pattern's frame correction.
    Trace equals the pattern probability.
    """
    d = cfg.code_length
    if len(b_bits) != d or len(c_bits) != d:
        raise ValueError(f"need {d} X and Z outcome bits")
    params = cfg.params
    link = brute_elementary(cfg)
    labels = _bank("A", d) + _bank("B", d) + _bank("C", d) + _bank("D", d)
    joint = np.kron(link, link)
    for i in range(1, d + 1):
        joint = _apply_noisy_cnot(joint, labels, f"B{i}", f"C{i}", params.beta)
    for i, (b, c) in enumerate(zip(b_bits, c_bits), start=1):
        joint = _left_multiply_1q(
            joint, labels, noisy_projector("x", b, params.delta), f"B{i}"
        )
        joint = _left_multiply_1q(
            joint, labels, noisy_projector("z", c, params.delta), f"C{i}"
        )
    mass = qmat.partial_trace(joint, labels, _bank("A", d) + _bank("D", d))
    return qmat.symmetrize(frame_correction(mass, b_bits, c_bits))


def brute_swap_and_decode(
    cfg: OracleConfig,
    m: tuple[tuple[int, ...], tuple[int, ...]],
    d_outcome: tuple[int, ...],
    dec_noisy: bool = True,
) -> tuple[np.ndarray | None, float]:
    """Decoded end-user pair for one (swap pattern, decoder outcome) branch.

    ``m`` is the (X bits, Z bits) swap pattern; ``d_outcome`` holds the
    ``2 (d - 1)`` decoder bits, first bank then second.  Returns the
    normalized 4x4 state on (A1, D1) (None if unreachable) and the branch's
    joint probability.
    """
    d = cfg.code_length
    if len(d_outcome) != 2 * (d - 1):
        raise ValueError(f"need {2 * (d - 1)} decoder outcome bits")
    params = cfg.params
    beta = params.beta if dec_noisy else 0.0
    labels = _bank("A", d) + _bank("D", d)
    rho = brute_swap_mass(cfg, *m)
    for side in "AD":
        for i in range(2, d + 1):
            rho = _apply_noisy_cnot(rho, labels, f"{side}1", f"{side}{i}", beta)
    pz = {out: noisy_projector("z", out, params.delta) for out in (0, 1)}
    measured = tuple(f"{side}{i}" for side in "AD" for i in range(2, d + 1))
    for lbl, out in zip(measured, d_outcome):
        rho = _left_multiply_1q(rho, labels, pz[out], lbl)
    per_side = d - 1
    for side, bits in (("A", d_outcome[:per_side]), ("D", d_outcome[per_side:])):
        if per_side and all(bits):
            rho = _conjugate_1q(rho, labels, np.array([[0, 1], [1, 0]], complex), f"{side}1")
    mass = qmat.symmetrize(qmat.partial_trace(rho, labels, ("A1", "D1")))
    prob = float(np.real(np.trace(mass)))
    if prob < 1e-300:
        return None, prob
    return mass / prob, prob


def compare(a: np.ndarray, b: np.ndarray) -> float:
    """Max absolute entrywise difference; shapes must match exactly."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def run_verification(
    code_length: int = 2, n_points: int = 20, seed: int = 7
) -> dict[str, float]:
    """Compare the row engine against this module at random noise points.

    For each sampled parameter set the link state, a random-pattern post-swap
    mass and a random decoder branch (state and joint probability) are
    computed both ways.  Returns the worst absolute difference per stage,
    keyed ``elementary``, ``swap`` and ``decode``.
    """
    from .circuits import decode_outcome_masses
    from .repeater import linearized_link_state, pattern_es_state

    if n_points < 1:
        raise ValueError(f"n_points must be positive, got {n_points}")
    rng = np.random.default_rng(seed)
    worst = {"elementary": 0.0, "swap": 0.0, "decode": 0.0}
    d = code_length
    for _ in range(n_points):
        params = NoiseParams(
            f0=float(rng.uniform(0.8, 1.0)),
            beta=float(rng.uniform(0.0, 0.2)),
            delta=float(rng.uniform(0.0, 0.2)),
        )
        cfg = OracleConfig(d, params)
        link_brute = brute_elementary(cfg)
        link_rows = linearized_link_state(params, EncoderMode.IDEAL, rows=d)
        worst["elementary"] = max(worst["elementary"], compare(link_brute, link_rows))
        b_bits = tuple(int(x) for x in rng.integers(0, 2, size=d))
        c_bits = tuple(int(x) for x in rng.integers(0, 2, size=d))
        mass_brute = brute_swap_mass(cfg, b_bits, c_bits)
        mass_rows = pattern_es_state(params, EncoderMode.IDEAL, b_bits, c_bits, rows=d)
        worst["swap"] = max(worst["swap"], compare(mass_brute, mass_rows))
        d_out = tuple(int(x) for x in rng.integers(0, 2, size=2 * (d - 1)))
        state_brute, p_brute = brute_swap_and_decode(cfg, (b_bits, c_bits), d_out)
        mass_dec = decode_outcome_masses(mass_rows, params, dec_noisy=True, rows=d)[d_out]
        p_rows = float(np.real(np.trace(mass_dec)))
        diff = abs(p_brute - p_rows)
        if state_brute is not None and p_rows > 1e-300:
            diff = max(diff, compare(state_brute, mass_dec / p_rows))
        worst["decode"] = max(worst["decode"], diff)
    return worst
