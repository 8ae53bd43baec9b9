"""Exact density-matrix simulation of QKD over quantum repeater chains that
transmit three-qubit repetition codewords through noisy gates, readout and
entangled pairs.
"""

from .circuits import (
    EncoderMode,
    decode_channel,
    decode_outcome_masses,
    elementary_row,
    encoder_weight,
    extra_encoder_terms,
    swap_row,
)
from .noise import BellKind, NoiseParams, bell_weights, noisy_projector, noisy_two_qubit_gate, werner_state
from .oracle import OracleConfig, brute_elementary, brute_swap_and_decode, compare, run_verification
from .qkd import (
    InfoMode,
    ModeReport,
    QberPair,
    aggregate,
    binary_entropy,
    chain_rate,
    find_cutoff,
    qber,
    secret_fraction,
)
from .repeater import (
    GoldenReport,
    OutcomeClass,
    OutcomeRecord,
    RowTable,
    assemble_es_state,
    build_row_table,
    enumerate_outcomes_n1,
    golden_pipeline,
    pattern_es_state,
    verify_b_register_symmetry,
)

__version__ = "0.1.0"

__all__ = [
    "BellKind",
    "EncoderMode",
    "GoldenReport",
    "InfoMode",
    "ModeReport",
    "NoiseParams",
    "OracleConfig",
    "OutcomeClass",
    "OutcomeRecord",
    "QberPair",
    "RowTable",
    "aggregate",
    "assemble_es_state",
    "bell_weights",
    "binary_entropy",
    "brute_elementary",
    "brute_swap_and_decode",
    "build_row_table",
    "chain_rate",
    "compare",
    "decode_channel",
    "decode_outcome_masses",
    "elementary_row",
    "encoder_weight",
    "enumerate_outcomes_n1",
    "extra_encoder_terms",
    "find_cutoff",
    "golden_pipeline",
    "noisy_projector",
    "noisy_two_qubit_gate",
    "pattern_es_state",
    "qber",
    "run_verification",
    "secret_fraction",
    "swap_row",
    "verify_b_register_symmetry",
    "werner_state",
]
