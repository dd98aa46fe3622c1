import random
from fractions import Fraction

import pytest

from qauto.model import (
    ALTERNATING, DETERMINISTIC, LIMSUP, NONDETERMINISTIC, SUM, SUP,
    And, Automaton, Lasso, Leaf, ModelError, Or, ValueFunctionSpec,
    automaton_from_json, automaton_to_json, classify_automaton,
    normalize_weight_ranks, threshold_boolean_automaton, validate_automaton,
    value_function_traits,
)
from qauto.randgen import random_automaton
from qauto.rationals import format_rational, parse_rational
from qauto.valuation import run_value


def test_rational_round_trip():
    for s in ["0", "1", "-1", "1/2", "-7/3", "10/4"]:
        f = parse_rational(s)
        assert parse_rational(format_rational(f)) == f
    assert format_rational(Fraction(10, 4)) == "5/2"


def test_parse_rational_rejects_garbage():
    for s in ["", "a", "1/0", "1/ 2"]:
        with pytest.raises(Exception):
            parse_rational(s)


def test_classify(fixtures):
    assert classify_automaton(fixtures["fig-thdA.json"]) == NONDETERMINISTIC
    assert classify_automaton(fixtures["fig-dbpalt.json"]) == ALTERNATING
    assert classify_automaton(fixtures["det-sup.json"]) == DETERMINISTIC


def test_json_round_trip_fixtures(fixtures):
    for a in fixtures.values():
        assert automaton_from_json(automaton_to_json(a)) == a


def test_json_round_trip_random():
    rng = random.Random(7)
    tags = ["Sum", "Avg", "Inf", "Sup", "DSum", "LimInf", "LimSup",
            "LimInfAvg", "LimSupAvg"]
    for i in range(500):
        a = random_automaton(rng, tags[i % len(tags)])
        assert automaton_from_json(automaton_to_json(a)) == a


def test_unknown_keys_rejected(fixtures):
    obj = automaton_to_json(fixtures["det-sup.json"])
    obj["comment"] = "nope"
    with pytest.raises(ModelError):
        automaton_from_json(obj)


def test_validate_catches_partial_delta():
    vf = ValueFunctionSpec(SUP)
    a = Automaton(("a", "b"), ("q0",), "q0",
                  {("q0", "a"): Leaf(Fraction(0), "q0")}, vf, "finite")
    errors = validate_automaton(a)
    assert any("MissingTransition" in e for e in errors)


def test_threshold_boolean_readings(fixtures):
    b = threshold_boolean_automaton(fixtures["fig-thdA.json"], 1)
    assert b.reading == "nfa"
    assert set(b.automaton.weights()) <= {Fraction(0), Fraction(1)}
    b2 = threshold_boolean_automaton(fixtures["fig-thdB.json"], 2)
    assert b2.reading == "buchi"


def test_normalize_weight_ranks(fixtures):
    ranked, ranks = normalize_weight_ranks(fixtures["fig-thdB.json"])
    assert sorted(ranks.values()) == [Fraction(1), Fraction(2), Fraction(3)]
    assert set(ranked.weights()) == {Fraction(1), Fraction(2), Fraction(3)}


def test_traits_present_focused():
    assert value_function_traits(ValueFunctionSpec(SUM), "finite")["present_focused"] == "yes"
    assert value_function_traits(ValueFunctionSpec(LIMSUP), "infinite")["present_focused"] == "no"
    dsum = ValueFunctionSpec("DSum", Fraction(1, 2))
    assert value_function_traits(dsum, "infinite")["present_focused"] == "yes"


def test_suffix_monotonicity_witnesses():
    # Inf/Sup are not suffix monotonic: the stored counterexample has
    # Inf(alpha beta) = Inf(alpha beta') while Inf(beta) < Inf(beta').
    alpha, beta, beta2 = [Fraction(0)], [Fraction(1)], [Fraction(2)]

    def inf_of(ws):
        return min(ws)

    assert inf_of(alpha + beta) == inf_of(alpha + beta2)
    assert inf_of(beta) < inf_of(beta2)
    # Sum/Avg/DSum satisfy the iff on random triples
    rng = random.Random(11)
    pool = [Fraction(w) for w in (-2, -1, 0, 1, 2)]
    lam = Fraction(1, 2)

    def dsum_of(ws):
        acc, mult = Fraction(0), Fraction(1)
        for w in ws:
            acc += mult * w
            mult *= lam
        return acc

    for _ in range(1000):
        alpha = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        beta = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        beta2 = [rng.choice(pool) for _ in range(len(beta))]
        assert (sum(alpha + beta) >= sum(alpha + beta2)) == (sum(beta) >= sum(beta2))
        k = len(alpha)
        assert ((dsum_of(alpha + beta) >= dsum_of(alpha + beta2))
                == (dsum_of(beta) >= dsum_of(beta2)))


def test_run_value_lasso_closed_forms():
    vf = ValueFunctionSpec("DSum", Fraction(1, 2))
    # weight 1 forever: 1/(1-1/2) = 2
    assert run_value(vf, ([], [Fraction(1)])) == 2
    vfa = ValueFunctionSpec("LimSupAvg")
    assert run_value(vfa, ([], [Fraction(0), Fraction(1)])) == Fraction(1, 2)
