"""Error-correcting Gray codes over permutations for rank modulation."""

from .aux import (
    AuxCode,
    Unsupported,
    aux_catalog,
    aux_flip,
    aux_stitched,
    build_phi_frame,
    verify_aux,
)
from .complete import CompleteCode, complete_code, rank_complete, unrank_complete
from .decoder import DecodeFailure, decode, quantize, valid_aux
from .lmrm import CodeParams, LmrmCode, construct, sigma0, size_formula, verify_lmrm
from .perm import (
    Permutation,
    Transition,
    apply_transition,
    compose,
    dist_kendall,
    dist_linf,
    inverse,
    sign,
)
from .ranking import NotInCode, RankableCode, rank, unrank
from .search import SearchFailure
from .snake import build_snake, verify_snake

__version__ = "0.1.0"

__all__ = [
    "AuxCode",
    "CodeParams",
    "CompleteCode",
    "DecodeFailure",
    "LmrmCode",
    "NotInCode",
    "Permutation",
    "RankableCode",
    "SearchFailure",
    "Transition",
    "Unsupported",
    "apply_transition",
    "aux_catalog",
    "aux_flip",
    "aux_stitched",
    "build_phi_frame",
    "build_snake",
    "complete_code",
    "compose",
    "construct",
    "decode",
    "dist_kendall",
    "dist_linf",
    "inverse",
    "quantize",
    "rank",
    "rank_complete",
    "sigma0",
    "sign",
    "size_formula",
    "unrank",
    "unrank_complete",
    "verify_aux",
    "verify_lmrm",
    "valid_aux",
    "verify_snake",
]
