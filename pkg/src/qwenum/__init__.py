"""Quantum weight enumerators for stabilizer and explicitly given codes."""

from .catalog import CatalogEntry, builtin_codes, get_entry, load_codeword_file, load_stabilizer_file
from .codespace import CodeSpace, from_amplitude_table, is_real, xz_exactly_transversal
from .enumerator import (
    EnumeratorPair,
    TheoremReport,
    brute_force_enumerators,
    cd_decomposition,
    distance,
    macwilliams_transform,
    restricted_A,
    stabilizer_enumerators,
    theorem_check,
)
from .pauli import PauliString, WeightProfile, from_label, weight_profile
from .stabilizer import (
    StabilizerGroup,
    all_even_check,
    hadamard_conjugate,
    is_real_code,
    synthesize_codewords,
    transversality_report,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "CodeSpace",
    "EnumeratorPair",
    "PauliString",
    "StabilizerGroup",
    "TheoremReport",
    "WeightProfile",
    "all_even_check",
    "brute_force_enumerators",
    "builtin_codes",
    "cd_decomposition",
    "distance",
    "from_amplitude_table",
    "from_label",
    "get_entry",
    "hadamard_conjugate",
    "is_real",
    "is_real_code",
    "load_codeword_file",
    "load_stabilizer_file",
    "macwilliams_transform",
    "restricted_A",
    "stabilizer_enumerators",
    "synthesize_codewords",
    "theorem_check",
    "transversality_report",
    "validate",
    "weight_profile",
    "xz_exactly_transversal",
]
