import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qauto.model import Lasso, automaton_to_json
from qauto.randgen import random_automaton
from qauto.valuation import (
    ValuationError, automaton_value, automaton_value_finite,
    automaton_value_lasso, enumerate_runs, run_value,
)


def test_figure_values(fixtures, manifest):
    for name, spec in manifest.items():
        a = fixtures[name]
        for entry in spec.get("expect", {}).get("value", []):
            w = entry["word"]
            if isinstance(w, dict):
                w = Lasso(w["prefix"], w["cycle"])
            assert automaton_value(a, w) == Fraction(entry["value"]), (name, entry)


def test_empty_word_rejected(fixtures):
    with pytest.raises(ValuationError):
        automaton_value_finite(fixtures["fig-thdA.json"], "")


def test_mode_mismatch(fixtures):
    with pytest.raises(ValuationError):
        automaton_value_finite(fixtures["fig-thdB.json"], "ab")
    with pytest.raises(ValuationError):
        automaton_value_lasso(fixtures["fig-thdA.json"], Lasso("", "a"))


def _oracle_finite(a, w):
    # independent oracle: exhaustive run enumeration, outer max over
    # nondeterministic branches (nondeterministic automata only)
    return max(v for _, v in enumerate_runs(a, w))


def test_finite_values_against_run_enumeration():
    rng = random.Random(3)
    for tag in ("Sum", "Avg", "Inf", "Sup"):
        for _ in range(40):
            a = random_automaton(rng, tag)
            for w in ("a", "b", "ab", "ba", "aab", "bba"):
                assert automaton_value_finite(a, w) == _oracle_finite(a, w), \
                    (tag, w, automaton_to_json(a))


def test_lasso_values_against_run_enumeration():
    rng = random.Random(4)
    words = [Lasso("", "a"), Lasso("", "ab"), Lasso("b", "a"), Lasso("ab", "ba")]
    for tag in ("LimSup", "LimInf", "LimSupAvg", "LimInfAvg", "DSum"):
        for _ in range(25):
            a = random_automaton(rng, tag)
            for w in words:
                got = automaton_value_lasso(a, w)
                want = max(v for _, v in enumerate_runs(a, w))
                assert got == want, (tag, w, automaton_to_json(a))


def test_lasso_rotation_invariance():
    rng = random.Random(5)
    for tag in ("LimSup", "LimInf", "LimSupAvg", "LimInfAvg"):
        for _ in range(15):
            a = random_automaton(rng, tag)
            # (ab)^w == a(ba)^w and the unfolded ab(ab)^w
            v1 = automaton_value_lasso(a, Lasso("", "ab"))
            v2 = automaton_value_lasso(a, Lasso("a", "ba"))
            v3 = automaton_value_lasso(a, Lasso("ab", "ab"))
            assert v1 == v2 == v3, (tag, automaton_to_json(a))


@given(st.integers(min_value=-3, max_value=3),
       st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_dsum_lasso_closed_form(head, cycle):
    from qauto.model import ValueFunctionSpec
    lam = Fraction(1, 2)
    vf = ValueFunctionSpec("DSum", lam)
    pre = [Fraction(head)]
    cyc = [Fraction(c) for c in cycle]
    got = run_value(vf, (pre, cyc))
    # compare against a long truncation: tail bounded by 3 * lam^n / (1-lam)
    acc, mult = Fraction(0), Fraction(1)
    for w in pre + cyc * 40:
        acc += mult * w
        mult *= lam
    assert abs(got - acc) <= 3 * mult / (1 - lam)


@given(st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_limavg_ignores_prefix(cycle):
    from qauto.model import ValueFunctionSpec
    cyc = [Fraction(c) for c in cycle]
    for tag in ("LimSupAvg", "LimInfAvg"):
        vf = ValueFunctionSpec(tag)
        assert run_value(vf, ([Fraction(3)], cyc)) == run_value(vf, ([], cyc))
        assert run_value(vf, ([], cyc)) == sum(cyc) / len(cyc)
