"""Chain assembly: row tables, pattern states, golden branch, outcome records."""

import numpy as np
import pytest

from qrepsim.circuits import EncoderMode, elementary_row, swap_row
from qrepsim.noise import KET_0, KET_1, NoiseParams, ketbra
from qrepsim.oracle import compare
from qrepsim.qkd import InfoMode, aggregate
from qrepsim.qmat import validate_state
from qrepsim.repeater import (
    OutcomeClass,
    ROW_BITS,
    assemble_es_state,
    build_row_table,
    enumerate_outcomes_n1,
    enumerate_outcomes_n1_exhaustive,
    frame_correction,
    golden_multiplicity,
    golden_pipeline,
    linearized_link_state,
    pattern_es_state,
    verify_b_register_symmetry,
)

IDEAL = NoiseParams()
GOLDEN_PATTERN = ((0, 0, 0), (0, 0, 0))


def basis_ket(bits):
    kets = (KET_0, KET_1)
    vec = kets[bits[0]]
    for b in bits[1:]:
        vec = np.kron(vec, kets[b])
    return vec


ENCODED_BELL = ketbra((basis_ket((0,) * 6) + basis_ket((1,) * 6)) / np.sqrt(2.0))


def random_params(rng, beta_hi=0.2, delta_hi=0.2):
    return NoiseParams(
        f0=float(rng.uniform(0.8, 1.0)),
        beta=float(rng.uniform(0.0, beta_hi)),
        delta=float(rng.uniform(0.0, delta_hi)),
    )


def test_row_table_level0_ideal_entries():
    table = build_row_table(0, IDEAL, EncoderMode.IDEAL)
    assert len(table.ops) == 4
    for idx, (j, k) in enumerate(ROW_BITS):
        expect = np.outer(basis_ket((j, j)), basis_ket((k, k)).conj())
        assert compare(table.ops[idx], expect) < 1e-14


def test_row_table_sizes_and_rejections():
    assert len(build_row_table(1, IDEAL, EncoderMode.IDEAL).ops) == 16
    assert len(build_row_table(2, IDEAL, EncoderMode.IDEAL).ops) == 256
    with pytest.raises(ValueError):
        build_row_table(4, IDEAL, EncoderMode.IDEAL)
    with pytest.raises(ValueError):
        build_row_table(1, IDEAL, EncoderMode.FULL)


def test_row_table_level1_spot_reconstruction():
    # A level-1 entry is the swap of the two level-0 entries its bit-halves name.
    rng = np.random.default_rng(41)
    params = random_params(rng)
    t0 = build_row_table(0, params, EncoderMode.CODED)
    t1 = build_row_table(1, params, EncoderMode.CODED)
    for combo in (0, 5, 9, 14):
        direct = swap_row(t0.ops[combo >> 2], t0.ops[combo & 3], 0, params)
        assert compare(t1.ops[combo], direct) < 1e-12
        assert np.isclose(t1.weights[combo], t0.weights[combo >> 2] * t0.weights[combo & 3])


def test_row_table_level2_recomputed_from_scratch():
    # Three random 8-bit combos, rebuilt without the table machinery.
    rng = np.random.default_rng(42)
    params = random_params(rng)
    t2 = build_row_table(2, params, EncoderMode.IDEAL)
    for combo in rng.integers(0, 256, size=3):
        bits = [(combo >> shift) & 1 for shift in range(7, -1, -1)]
        rows = [
            elementary_row(bits[2 * i], bits[2 * i + 1], params) for i in range(4)
        ]
        left = swap_row(rows[0], rows[1], 0, params)
        right = swap_row(rows[2], rows[3], 0, params)
        direct = swap_row(left, right, 0, params)
        assert compare(t2.ops[combo], direct) < 1e-12


def test_assemble_ideal_level1():
    table = build_row_table(1, IDEAL, EncoderMode.IDEAL)
    es = assemble_es_state(table)
    assert compare(es, ENCODED_BELL / 16.0) < 1e-13


def test_assemble_trace_identity_ideal():
    for level in (1, 2):
        table = build_row_table(level, IDEAL, EncoderMode.IDEAL)
        trace = float(np.real(np.trace(assemble_es_state(table))))
        assert np.isclose(trace * golden_multiplicity(level), 1.0, atol=1e-12)


def test_assembly_matches_pattern_state_path():
    # Kernel-based assembly and the explicit per-pattern path must agree.
    rng = np.random.default_rng(43)
    for enc in (EncoderMode.IDEAL, EncoderMode.CODED):
        params = random_params(rng)
        es_table = assemble_es_state(build_row_table(1, params, enc))
        es_pattern = pattern_es_state(params, enc, (0, 0, 0), (0, 0, 0))
        assert compare(es_table, es_pattern) < 1e-12


def test_linearized_link_trace():
    rng = np.random.default_rng(44)
    for enc in (EncoderMode.IDEAL, EncoderMode.FULL):
        params = random_params(rng)
        link = linearized_link_state(params, enc)
        assert np.isclose(np.trace(link), 1.0, atol=1e-12)


def test_golden_pipeline_ideal_chain():
    phi_plus = ketbra(basis_ket((0, 0)) + basis_ket((1, 1))) / 2.0
    for nesting in (1, 2):
        report = golden_pipeline(nesting, IDEAL, EncoderMode.IDEAL, dec_noisy=False)
        assert np.isclose(report.p_golden, 1.0, atol=1e-12)
        assert np.isclose(report.r_golden, 1.0, atol=1e-12)
        assert compare(report.rho, phi_plus) < 1e-12


def test_golden_pipeline_validation():
    with pytest.raises(ValueError):
        golden_pipeline(0, IDEAL)
    with pytest.raises(ValueError):
        golden_pipeline(4, IDEAL)
    with pytest.raises(ValueError):
        golden_pipeline(2, IDEAL, EncoderMode.FULL)


def test_golden_trace_monotone_in_noise():
    base = dict(f0=0.96, beta=0.02, delta=0.01)
    traces_beta = [
        golden_pipeline(1, NoiseParams(**{**base, "beta": b})).trace_es
        for b in (0.0, 0.03, 0.06, 0.1)
    ]
    assert all(a > b for a, b in zip(traces_beta, traces_beta[1:]))
    traces_f0 = [
        golden_pipeline(1, NoiseParams(**{**base, "f0": f})).trace_es
        for f in (1.0, 0.95, 0.9, 0.85)
    ]
    assert all(a > b for a, b in zip(traces_f0, traces_f0[1:]))


def test_pattern_probabilities_partition_unity():
    params = NoiseParams(f0=0.95, beta=0.02, delta=0.01)
    records = enumerate_outcomes_n1(params)
    total = sum(rec.multiplicity * rec.joint_prob for rec in records)
    assert np.isclose(total, 1.0, atol=1e-9)


def test_partition_with_class_multiplicities():
    # One golden cell, fifteen good-not-golden cells and one bad location
    # with the class factor 48 carry the full probability.
    params = NoiseParams(f0=0.95, beta=0.02, delta=0.01)
    records = enumerate_outcomes_n1(params)
    p_golden = sum(r.joint_prob for r in records if r.klass is OutcomeClass.GOLDEN)
    p_gng = sum(
        r.joint_prob for r in records if r.klass is OutcomeClass.GOOD_NOT_GOLDEN
    )
    p_bad_one_location = sum(
        r.joint_prob
        for r in records
        if r.klass is OutcomeClass.BAD and r.m[1] == (1, 0, 0)
    )
    total = 16.0 * (p_golden + p_gng) + 48.0 * p_bad_one_location
    assert np.isclose(total, 1.0, atol=1e-9)


def test_bad_locations_equivalent():
    params = NoiseParams(f0=0.93, beta=0.04, delta=0.02)
    records = enumerate_outcomes_n1(params)
    masses, rates = [], []
    for location in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
        subset = [r for r in records if r.m[1] == location]
        masses.append(sum(r.joint_prob for r in subset))
        rates.append(aggregate(subset, InfoMode.FULL_INFO, params.delta).r_total)
    assert max(masses) - min(masses) < 1e-12
    assert max(rates) - min(rates) < 1e-9


def test_enumeration_ideal_concentrates_on_golden():
    records = enumerate_outcomes_n1(IDEAL, dec_noisy=False)
    for rec in records:
        if rec.klass is OutcomeClass.GOLDEN:
            assert np.isclose(16.0 * rec.joint_prob, 1.0, atol=1e-12)
        else:
            assert rec.joint_prob < 1e-12


def test_reduced_matches_exhaustive_enumeration():
    params = NoiseParams(f0=0.96, beta=0.015, delta=0.008)
    reduced = enumerate_outcomes_n1(params)
    exhaustive = enumerate_outcomes_n1_exhaustive(params)
    assert len(reduced) == 64 and len(exhaustive) == 1024
    for mode in InfoMode:
        r_red = aggregate(reduced, mode, params.delta).r_total
        r_exh = aggregate(exhaustive, mode, params.delta).r_total
        assert np.isclose(r_red, r_exh, atol=1e-12)
    mass_red = sum(r.multiplicity * r.joint_prob for r in reduced)
    mass_exh = sum(r.joint_prob for r in exhaustive)
    assert np.isclose(mass_red, mass_exh, atol=1e-12)


def test_conditional_states_valid():
    params = NoiseParams(f0=0.9, beta=0.05, delta=0.03)
    for rec in enumerate_outcomes_n1(params):
        assert 0.0 <= rec.joint_prob <= 1.0
        if rec.cond_state is not None:
            assert validate_state(rec.cond_state).valid


def test_equivalent_patterns_coincide_exactly():
    # Flipping X outcomes or the whole Z register leaves the frame-corrected
    # state unchanged, not just its derived rate.
    params = NoiseParams(f0=0.94, beta=0.03, delta=0.015)
    golden = pattern_es_state(params, EncoderMode.IDEAL, (0, 0, 0), (0, 0, 0))
    for b_bits in ((0, 1, 1), (1, 0, 1), (1, 1, 0)):
        other = pattern_es_state(params, EncoderMode.IDEAL, b_bits, (0, 0, 0))
        assert compare(golden, other) < 1e-12
    flipped = pattern_es_state(params, EncoderMode.IDEAL, (0, 0, 0), (1, 1, 1))
    assert compare(golden, flipped) < 1e-12


def test_b_register_symmetry():
    assert verify_b_register_symmetry(IDEAL, dec_noisy=False) < 1e-15
    assert verify_b_register_symmetry(NoiseParams(f0=0.98, beta=0.03, delta=0.005)) < 1e-9
    assert verify_b_register_symmetry(NoiseParams(f0=0.85, beta=0.12, delta=0.07)) < 1e-9


def test_frame_correction_validation():
    with pytest.raises(ValueError):
        frame_correction(np.eye(64), (0, 0), (0, 0, 0))
    with pytest.raises(ValueError):
        frame_correction(np.eye(16), (0, 0, 0), (0, 0, 0))


def test_golden_multiplicity_values():
    assert golden_multiplicity(1) == 16
    assert golden_multiplicity(2) == 16**3
    assert golden_multiplicity(3) == 16**7
