"""Proof translation and program extraction for arithmetic with a standardness predicate.

The package implements two functional interpretations over intuitionistic
arithmetic in all finite types with finite-sequence types: a herbrandised
translation whose witnesses are sequences of candidates, and a uniform
translation with computationally empty internal quantifiers. A Hilbert-style
kernel checks proofs in the matching characteristic systems, extracts closed
realiser terms, and a brute-force oracle certifies extracted bundles on
finite grids.
"""

from .ftypes import Arrow, FiniteType, Ground, N, Star, is_data_type
from .terms import Term, alpha_eq, substitute, type_check
from .reduce import CanonicalValue, eval_nat, eval_seq, normalize
from .formulas import Formula, classify, desugar
from .translate import Flavor, TranslatedFormula, dst_translate, u_translate
from .proofs import check_proof
from .extract import RealiserBundle, extract, extract_dst, extract_u
from .oracle import (
    CounterexampleFound,
    Grid,
    GridValid,
    Unknown,
    brute_force_witness,
    check_upward_closed,
    enumerate_values,
    eval_formula,
    verify_bundle,
)

__version__ = "0.1.0"
