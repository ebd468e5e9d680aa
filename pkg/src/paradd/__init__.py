"""Exact parallel addition in non-standard numeration systems."""

from .core import (
    Alphabet, BaseSpec, DigitString, NumerationSystem, digitwise_sum,
    format_digit_string, integer_base, make_base, make_system,
    negative_integer_base, negative_rational_base, negative_root_base,
    normalize, parse_digit_string, pisot_minus_base, pisot_plus_base,
    rational_base, root_base,
)
from .algebra import eval_approx, reduce_mod_base, to_poly, values_equal
from .expansions import (
    euclid_expansion, greedy_expansion, symmetric_expansion, tm_expansion,
)
from .local import (
    CarryRule, LocalRule, apply_rule, compose_rules, derive_local_rule,
    fixed_letters, negate_rule, rule_from_json, shift_alphabet,
)
from .rules import canonical_gde, rules_for_alphabet
from .adder import AdderPipeline, add, build_pipeline, reduce_to_alphabet, subtract
from .bounds import minimal_alphabet_report, minimal_form
from .oracle import (
    verify_addition, verify_boundary, verify_congruence, verify_conversion,
)

__version__ = "0.1.0"
