"""Quantitative automata: values, history-determinism, pruning, synthesis."""

from .model import (
    Automaton, BooleanThresholdAutomaton, Lasso, Leaf, And, Or, ModelError,
    ValueFunctionSpec, automaton_from_json, automaton_to_json,
    classify_automaton, normalize_weight_ranks, threshold_boolean_automaton,
    validate_automaton, value_function_traits, word_from_json, word_to_json,
)
from .valuation import (
    automaton_value, automaton_value_finite, automaton_value_lasso,
    enumerate_runs, run_value,
)

__version__ = "0.1.0"
