"""Row-level protocol circuits: remote CNOT, swap station, decoder, encoder."""

import numpy as np
import pytest

from qrepsim.circuits import (
    EncoderMode,
    decode_channel,
    decode_outcome_masses,
    elementary_row,
    encoder_weight,
    extra_encoder_terms,
    swap_row,
)
from qrepsim.noise import KET_0, KET_1, NoiseParams, ketbra
from qrepsim.oracle import OracleConfig, brute_elementary, compare
from qrepsim.qmat import validate_state


def basis_ket(bits):
    kets = (KET_0, KET_1)
    vec = kets[bits[0]]
    for b in bits[1:]:
        vec = np.kron(vec, kets[b])
    return vec


ENCODED_BELL = ketbra((basis_ket((0,) * 6) + basis_ket((1,) * 6)) / np.sqrt(2.0))
IDEAL = NoiseParams()


def test_elementary_row_ideal_diagonal():
    out = elementary_row(0, 0, IDEAL)
    assert np.allclose(out, ketbra(basis_ket((0, 0))), atol=1e-14)
    assert np.isclose(np.trace(out), 1.0)


def test_elementary_row_ideal_coherence():
    out = elementary_row(0, 1, IDEAL)
    expect = np.outer(basis_ket((0, 0)), basis_ket((1, 1)).conj())
    assert np.allclose(out, expect, atol=1e-14)


def test_elementary_rows_assemble_unsplit_link():
    # The half-weighted sum over all four codeword components reconstructs
    # the unsplit single-row link computed by the independent full-space path.
    for params in (NoiseParams(f0=0.9), NoiseParams(f0=0.93, beta=0.04, delta=0.02)):
        brute = brute_elementary(OracleConfig(1, params))
        split = 0.5 * sum(
            elementary_row(j, k, params) for j in (0, 1) for k in (0, 1)
        )
        assert compare(split, brute) < 1e-12


def test_elementary_row_outcome_independent_after_correction():
    rng = np.random.default_rng(31)
    for _ in range(4):
        params = NoiseParams(
            f0=float(rng.uniform(0.7, 1.0)),
            beta=float(rng.uniform(0.0, 0.3)),
            delta=float(rng.uniform(0.0, 0.3)),
        )
        for j, k in ((0, 0), (0, 1)):
            reference = elementary_row(j, k, params)
            for a_out in (0, 1):
                for b_out in (0, 1):
                    out = elementary_row(j, k, params, a_out=a_out, b_out=b_out)
                    assert compare(out, reference) < 1e-12


def test_elementary_row_diagonal_trace_one():
    # The four remote-CNOT outcomes are equally likely, so one outcome
    # times four carries the full unit mass of a diagonal row.
    rng = np.random.default_rng(32)
    for _ in range(6):
        params = NoiseParams(
            f0=float(rng.uniform(0.7, 1.0)),
            beta=float(rng.uniform(0.0, 0.3)),
            delta=float(rng.uniform(0.0, 0.3)),
        )
        for j in (0, 1):
            assert np.isclose(np.trace(elementary_row(j, j, params)), 1.0)


def test_encoder_weight_values():
    for j, k in ((0, 0), (0, 1), (1, 0), (1, 1)):
        assert encoder_weight(j, k, 0.3, EncoderMode.IDEAL) == 1.0
        assert encoder_weight(j, k, 0.0, EncoderMode.CODED) == 1.0
    assert np.isclose(encoder_weight(0, 1, 0.1, EncoderMode.CODED), 0.81)
    assert np.isclose(encoder_weight(0, 0, 0.1, EncoderMode.CODED), 0.88)


def test_encoder_weight_rejects_full_mode():
    with pytest.raises(ValueError):
        encoder_weight(0, 0, 0.1, EncoderMode.FULL)


def test_extra_encoder_terms_values():
    assert all(w == 0.0 for _, w in extra_encoder_terms(0.0))
    weights = dict(extra_encoder_terms(0.1))
    assert np.isclose(weights[(1, 0, 1)], 0.035)
    assert np.isclose(weights[(0, 1, 0)], 0.035)
    for pattern in ((0, 0, 1), (1, 0, 0), (1, 1, 0), (0, 1, 1)):
        assert np.isclose(weights[pattern], 0.0125)


def test_noisy_encoder_expansion_is_normalized():
    # Codeword weight plus the six leakage weights carry unit trace exactly.
    for beta in np.linspace(0.0, 1.0, 21):
        total = encoder_weight(0, 0, beta, EncoderMode.CODED) + sum(
            w for _, w in extra_encoder_terms(beta)
        )
        assert np.isclose(total, 1.0, atol=1e-14)


def test_swap_row_ideal_golden_outcome():
    row = elementary_row(0, 0, IDEAL)
    out = swap_row(row, row, 0, IDEAL)
    assert np.allclose(out, 0.5 * ketbra(basis_ket((0, 0))), atol=1e-14)


def test_swap_row_ideal_impossible_outcome():
    row = elementary_row(0, 0, IDEAL)
    out = swap_row(row, row, 1, IDEAL)
    assert np.max(np.abs(out)) < 1e-14


def test_decode_channel_ideal_codeword_bell():
    state, prob = decode_channel(ENCODED_BELL, IDEAL, (0, 0, 0, 0))
    phi_plus = ketbra(basis_ket((0, 0)) + basis_ket((1, 1))) / 2.0
    assert np.isclose(prob, 1.0)
    assert np.allclose(state, phi_plus, atol=1e-12)


def test_decode_channel_unreachable_outcome():
    state, prob = decode_channel(ENCODED_BELL, IDEAL, (1, 0, 0, 0))
    assert state is None and prob < 1e-14


def test_decode_outcome_masses_complete():
    # The sixteen decoder branches partition the input mass exactly.
    rng = np.random.default_rng(33)
    raw = rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64))
    rho6 = raw @ raw.conj().T
    rho6 /= np.trace(rho6)
    params = NoiseParams(f0=0.9, beta=0.05, delta=0.03)
    masses = decode_outcome_masses(rho6, params)
    assert len(masses) == 16
    total = sum(np.trace(m) for m in masses.values())
    assert np.isclose(total, 1.0, atol=1e-9)


def test_decode_conditional_states_are_valid():
    params = NoiseParams(f0=0.92, beta=0.03, delta=0.02)
    masses = decode_outcome_masses(ENCODED_BELL, params)
    for mass in masses.values():
        prob = float(np.real(np.trace(mass)))
        assert prob >= -1e-12
        if prob > 1e-12:
            assert validate_state(mass / prob).valid
