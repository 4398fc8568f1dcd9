"""Perfect binary codes: invariants, propelinear structures, Vasil'ev and Mollard lifts, rank planning."""

from .code import (
    Code,
    CodeStream,
    Codeword,
    hamming_code,
    int_to_str,
    is_linear,
    is_perfect,
    kernel,
    kernel_coset_reps,
    kernel_dim,
    min_distance,
    rank,
    str_to_int,
    weight_distribution,
)
from .constructions import (
    LambdaFn,
    MollardSpec,
    is_propelinear_homomorphism,
    lambda_rank_bump,
    mollard,
    mollard_propelinear,
    predict_rank_mollard,
    predict_rank_vasiliev,
    vasiliev,
    vasiliev_propelinear,
)
from .errors import (
    AmbiguousStructureError,
    CapacityError,
    CodeFormatError,
    MissingBaseError,
    NoStructureError,
    NotPerfectError,
    PropelinearError,
    StructureError,
)
from .fileio import read_code, read_lambda, read_structure, write_code, write_lambda, write_structure
from .homs import Hom2, extend_hom, homs_to_z2, structure_homs
from .perm import Isometry, Permutation, apply, compose
from .plan import NodeNR, Recipe, paper_inventory, realize, reachable, theorem_coverage_check
from .structure import (
    PropelinearStructure,
    Verdict,
    build_normalized_propelinear,
    check_group_laws,
    pi_group,
    verify_propelinear,
)
from .symmetry import is_transitive, symmetry_group

__version__ = "0.1.0"

__all__ = [
    "AmbiguousStructureError",
    "CapacityError",
    "Code",
    "CodeFormatError",
    "CodeStream",
    "Codeword",
    "Hom2",
    "Isometry",
    "LambdaFn",
    "MissingBaseError",
    "MollardSpec",
    "NoStructureError",
    "NodeNR",
    "NotPerfectError",
    "Permutation",
    "PropelinearError",
    "PropelinearStructure",
    "Recipe",
    "StructureError",
    "Verdict",
    "apply",
    "build_normalized_propelinear",
    "check_group_laws",
    "compose",
    "extend_hom",
    "hamming_code",
    "homs_to_z2",
    "int_to_str",
    "is_linear",
    "is_perfect",
    "is_propelinear_homomorphism",
    "is_transitive",
    "kernel",
    "kernel_coset_reps",
    "kernel_dim",
    "lambda_rank_bump",
    "min_distance",
    "mollard",
    "mollard_propelinear",
    "paper_inventory",
    "pi_group",
    "predict_rank_mollard",
    "predict_rank_vasiliev",
    "rank",
    "reachable",
    "read_code",
    "read_lambda",
    "read_structure",
    "realize",
    "str_to_int",
    "structure_homs",
    "symmetry_group",
    "theorem_coverage_check",
    "vasiliev",
    "vasiliev_propelinear",
    "verify_propelinear",
    "weight_distribution",
    "write_code",
    "write_lambda",
    "write_structure",
]
