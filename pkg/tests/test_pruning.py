import itertools
import random
from fractions import Fraction

import pytest

from qauto.model import Lasso, Leaf, Transition, automaton_to_json, classify_automaton
from qauto.rationals import parse_rational
from qauto.pruning import (
    cautious_transitions, enumerate_choices, equivalence_check,
    extract_dbp_witness, is_subautomaton, prune, pruning_slots,
    threshold_dbp_witness,
)
from qauto.randgen import random_automaton
from qauto.token_games import decide_hd
from qauto.valuation import automaton_value


def _all_words(alphabet, max_len):
    for n in range(1, max_len + 1):
        for tup in itertools.product(sorted(alphabet), repeat=n):
            yield "".join(tup)


def _all_lassos(alphabet, bound):
    letters = sorted(alphabet)
    for pn in range(0, bound):
        for cn in range(1, bound - pn + 1):
            for p in itertools.product(letters, repeat=pn):
                for c in itertools.product(letters, repeat=cn):
                    yield Lasso("".join(p), "".join(c))


def _choice_from_json(witness):
    return {(e["state"], e["letter"]): Leaf(parse_rational(e["weight"]), e["to"])
            for e in witness}


def test_fixture_dbp_verdicts(fixtures, manifest):
    for name, spec in manifest.items():
        exp = spec["expect"]
        a = fixtures[name]
        if "dbp" in exp:
            v = extract_dbp_witness(a)
            assert v.tag == exp["dbp"], (name, v.to_json())
            if v.is_yes and classify_automaton(a) != "alternating":
                b = prune(a, _choice_from_json(v.witness))
                assert is_subautomaton(b, a)
        for entry in exp.get("threshold-dbp", []):
            v = threshold_dbp_witness(a, Fraction(entry["t"]))
            assert v.tag == entry["verdict"], (name, entry, v.to_json())


def test_prune_is_value_sound():
    """A pruning never exceeds the original value on any sampled word."""
    rng = random.Random(31)
    for tag in ("Sum", "Sup", "DSum", "LimSup"):
        for _ in range(10):
            a = random_automaton(rng, tag, max_states=3)
            choices = list(enumerate_choices(a, max_enum=200))
            if not choices:
                continue
            b = prune(a, rng.choice(choices))
            words = (_all_words(a.alphabet, 3) if a.mode == "finite"
                     else _all_lassos(a.alphabet, 3))
            for w in words:
                assert automaton_value(b, w) <= automaton_value(a, w), \
                    (tag, w, automaton_to_json(a))


def test_dbp_witness_agrees_on_samples():
    rng = random.Random(32)
    for tag in ("Sum", "Sup", "Inf", "DSum", "LimSup"):
        for _ in range(15):
            a = random_automaton(rng, tag, max_states=3)
            v = extract_dbp_witness(a)
            if not v.is_yes:
                continue
            b = prune(a, _choice_from_json(v.witness))
            words = (_all_words(a.alphabet, 4) if a.mode == "finite"
                     else _all_lassos(a.alphabet, 3))
            for w in words:
                assert automaton_value(b, w) == automaton_value(a, w), \
                    (tag, w, automaton_to_json(a), v.to_json())


def test_hd_yes_gives_dbp_witness():
    """For the value functions with an exact route, history-determinism is
    equivalent to determinizability by pruning; the witness must verify."""
    rng = random.Random(33)
    for tag in ("Sum", "Avg", "DSum"):
        for _ in range(20):
            a = random_automaton(rng, tag, max_states=3)
            hd = decide_hd(a)
            dbp = extract_dbp_witness(a)
            assert hd.tag == dbp.tag, (tag, automaton_to_json(a),
                                       hd.to_json(), dbp.to_json())


def _best_word_value(a, q, w):
    """Max run value from q over a finite word (direct recursion oracle)."""
    from qauto.valuation import run_value
    best = [None]

    def rec(i, state, acc):
        if i == len(w):
            v = run_value(a.value_function, acc)
            if best[0] is None or v > best[0]:
                best[0] = v
            return
        for t in a.transitions_from(state, w[i]):
            rec(i + 1, t.target, acc + [t.weight])

    rec(0, q, [])
    return best[0]


def test_cautious_against_word_quantified_oracle():
    """t = (q, sigma, x, q') is non-cautious iff some continuation word u has
    best(q, sigma u) > x + best(q', u), checked exhaustively to length 5."""
    rng = random.Random(34)
    for _ in range(25):
        a = random_automaton(rng, "Sum", max_states=3)
        cautious = cautious_transitions(a)
        for (q, sigma), leaves in pruning_slots(a):
            for leaf in leaves:
                beaten = False
                for u in [""] + list(_all_words(a.alphabet, 4)):
                    lhs = _best_word_value(a, q, sigma + u)
                    rhs = leaf.weight + (_best_word_value(a, leaf.target, u)
                                         if u else Fraction(0))
                    if rhs is None or (lhs is not None and lhs > rhs):
                        beaten = True
                        break
                t = Transition(q, sigma, leaf.weight, leaf.target)
                if beaten:
                    assert t not in cautious, (t, automaton_to_json(a))
                # the converse can need longer words, so only the sound
                # direction is asserted exhaustively


def test_cautious_pruning_preserves_short_words():
    rng = random.Random(35)
    for _ in range(20):
        a = random_automaton(rng, "Sum", max_states=3)
        if not decide_hd(a).is_yes:
            continue
        v = extract_dbp_witness(a)
        assert v.is_yes, automaton_to_json(a)
        b = prune(a, _choice_from_json(v.witness))
        for w in _all_words(a.alphabet, 4):
            assert automaton_value(b, w) == automaton_value(a, w), \
                (w, automaton_to_json(a))


def test_equivalence_check_detects_weight_drop(fixtures):
    rng = random.Random(36)
    for tag in ("Sup", "Inf"):
        for _ in range(10):
            a = random_automaton(rng, tag, max_states=3)
            choices = list(enumerate_choices(a, max_enum=200))
            for c in choices[:20]:
                b = prune(a, c)
                v = equivalence_check(a, b)
                agree = all(automaton_value(a, w) == automaton_value(b, w)
                            for w in _all_words(a.alphabet, 4))
                if v.is_yes:
                    assert agree, (tag, automaton_to_json(a))
                if v.is_no and isinstance(v.witness, str):
                    w = v.witness
                    assert automaton_value(a, w) != automaton_value(b, w), \
                        (tag, automaton_to_json(a))
