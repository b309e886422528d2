"""Exact generating-function calculus for codimension sequences of PI-algebras."""

from .characters import CharacterSum, count_syt, hook_degree, lr_coefficients, outer_product, partition, young_rule
from .guessing import AlgebraicEquation, GuessReport, guess_algebraic, guess_rational, guess_recurrence
from .oracle import GeneratorSet, MultilinearElement, codimension, multilinearize, parse_polynomial
from .pi_model import (
    CATALOG,
    DEFAULT_VARIANT,
    catalog_terms,
    codim_to_proper,
    proper_to_codim,
    tideal_product,
    verify_exp_closed_form,
)
from .polynomial import Polynomial
from .rational import (
    ExpPolySum,
    LinearRecurrence,
    QuasiPolynomial,
    RationalFunction,
    expand_rational,
    hadamard_rational,
    lr_product_rational,
    rational_to_quasipolynomial,
)
from .series import EXPONENTIAL, ORDINARY, Sequence, TruncatedSeries, hadamard_series, lr_product_seq

__version__ = "0.1.0"
