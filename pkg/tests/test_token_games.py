import random
from fractions import Fraction

import pytest

from qauto.letter_oracle import bounded_letter_game
from qauto.model import automaton_to_json
from qauto.randgen import random_automaton, random_finite_game, random_lasso_game
from qauto.token_games import (
    composition_test, decide_gfg, decide_gfg_limsup, decide_hd,
    decide_threshold_hd, g2_semicheck,
)


def test_fixture_hd_verdicts(fixtures, manifest):
    for name, spec in manifest.items():
        exp = spec["expect"]
        a = fixtures[name]
        if "hd" in exp:
            v = decide_hd(a)
            assert v.tag == exp["hd"], (name, v.to_json())
        if "gfg" in exp:
            v = decide_gfg(a)
            assert v.tag == exp["gfg"], (name, v.to_json())
        if "gfg-limsup" in exp:
            v = decide_gfg_limsup(a)
            assert v.tag == exp["gfg-limsup"], (name, v.to_json())
        if "g2-semicheck" in exp:
            v = g2_semicheck(a)
            assert v.tag == exp["g2-semicheck"], (name, v.to_json())
        for entry in exp.get("threshold-hd", []):
            v = decide_threshold_hd(a, Fraction(entry["t"]))
            assert v.tag == entry["verdict"], (name, entry, v.to_json())


def test_deterministic_always_hd():
    rng = random.Random(21)
    for tag in ("Sum", "Sup", "LimSup", "DSum"):
        for _ in range(10):
            a = random_automaton(rng, tag, deterministic=True)
            assert decide_hd(a).is_yes


def test_decider_vs_bounded_oracle():
    """An exact Yes must never be contradicted by a bounded refutation."""
    rng = random.Random(22)
    for tag in ("Sup", "Inf", "Sum", "DSum", "LimSup"):
        for _ in range(12):
            a = random_automaton(rng, tag, max_states=3)
            v = decide_hd(a)
            if not v.is_yes:
                continue
            o = bounded_letter_game(a, side="eve", depth=3, lasso_bound=2)
            assert not o.is_no, (tag, automaton_to_json(a), v.to_json())


def test_threshold_vs_bounded_oracle():
    rng = random.Random(23)
    for tag in ("Sup", "Inf", "LimSup"):
        for _ in range(25):
            a = random_automaton(rng, tag, max_states=3)
            for t in a.weights():
                v = decide_threshold_hd(a, t)
                if not v.is_yes:
                    continue
                o = bounded_letter_game(a, side="eve", threshold=t,
                                        depth=3, lasso_bound=3)
                assert not o.is_no, (tag, str(t), automaton_to_json(a))


def test_gfg_limsup_monotone_in_tokens():
    """A win with 2 tokens implies a win with 3 tokens."""
    rng = random.Random(24)
    for _ in range(20):
        a = random_automaton(rng, "LimSup", max_states=3)
        v2 = decide_gfg_limsup(a, k=2)
        v3 = decide_gfg_limsup(a, k=3)
        if v2.is_yes:
            assert v3.is_yes, automaton_to_json(a)


def test_composition_on_gfg_fixtures(fixtures, manifest):
    rng = random.Random(25)
    for name, spec in manifest.items():
        exp = spec["expect"]
        if exp.get("gfg") != "yes" and exp.get("hd") != "yes":
            continue
        a = fixtures[name]
        for _ in range(5):
            if a.mode == "finite":
                g = random_finite_game(rng, a.alphabet, depth=3)
            else:
                g = random_lasso_game(rng, a.alphabet)
            res = composition_test(a, g)
            assert res["equal"], (name, res)


def test_composition_can_fail_without_gfg(fixtures):
    """The product may undershoot the letter-by-letter game value when the
    automaton is not good-for-games; it can never overshoot it."""
    rng = random.Random(26)
    a = fixtures["fig-thdA.json"]
    for _ in range(10):
        g = random_finite_game(rng, a.alphabet, depth=3)
        res = composition_test(a, g)
        assert res["value_product"] <= res["value_game"], res
