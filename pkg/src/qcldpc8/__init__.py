"""Girth-8 (3, L) QC-LDPC codes: constructions, lifting-degree bounds, girth checks and simulation."""

from .bounds import (
    BoundReport,
    best_bound,
    bound_classical,
    bound_lemma2,
    bound_lemma3,
    bound_pairs,
    bound_theorem1,
    detect_ap_structure,
    exhaustive_nonexistence,
    search_girth8,
)
from .constructions import (
    ConstructionParams,
    ConstructionResult,
    construct,
    construct_d1,
    construct_d2,
    emit_for_p,
    p_min,
)
from .exponent import (
    ExponentMatrix,
    Girth8Matrix,
    exponent_from_m8,
    m8_from_exponent,
    normalize,
    permute_columns,
    swap_rows,
)
from .girth import CycleWitness, ValidityReport, check_m8_validity, find_cycle, girth_exponent, girth_lifted
from .lifting import SparseBinaryMatrix, lift, rank_gf2, read_alist, write_alist
from .sim import MinSumDecoder, SimConfig, SimResult, ber_sweep, random_lifting, simulate

__version__ = "0.1.0"
