"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Every numeric comparison is exact rational equality (fractions.Fraction);
no tolerances anywhere.
"""

import contextlib
import itertools
import random
from fractions import Fraction

import pytest

from qauto.letter_oracle import bounded_letter_game
from qauto.model import Automaton, Lasso, automaton_to_json
from qauto.pruning import (
    cautious_transitions, enumerate_choices, extract_dbp_witness, prune,
    threshold_dbp_witness,
)
from qauto.randgen import random_automaton, random_finite_game, random_lasso_game
from qauto.synthesis import (
    hd_to_synthesis_instance, local_best_value_synthesis, project_to_input,
)
from qauto.token_games import (
    composition_test, decide_gfg, decide_gfg_limsup, decide_hd,
    decide_hd_dsum, decide_hd_inf_sup_finite, decide_threshold_hd,
    g2_semicheck,
)
from qauto.valuation import automaton_value_finite, automaton_value_lasso


@contextlib.contextmanager
def criterion(capsys, k, label):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"CRITERION {k}: FAIL ({label})")
        raise
    with capsys.disabled():
        print(f"CRITERION {k}: PASS ({label})")


def _choices(witness):
    """(state, letter) -> target map from a pruning-witness JSON list."""
    return {(e["state"], e["letter"]): e["to"] for e in witness}


def test_criterion_1_dsum_figure(capsys, fixtures):
    with criterion(capsys, 1, "DSum figure: value, HD infinite, not finite, witness"):
        a = fixtures["fig-hdinf.json"]
        assert automaton_value_lasso(a, Lasso("", "a")) == Fraction(1)
        assert decide_hd_dsum(a).is_yes
        finite = Automaton(a.alphabet, a.states, a.initial, a.delta,
                           a.value_function, "finite")
        o = bounded_letter_game(finite, side="eve", threshold=Fraction(1), depth=3)
        assert o.is_no
        w = extract_dbp_witness(a)
        assert w.is_yes
        assert _choices(w.witness)[("q0", "a")] == "q1"


def test_criterion_2_threshold_figure_a(capsys, fixtures):
    with criterion(capsys, 2, "Sup figure: THD without HD, threshold witnesses"):
        a = fixtures["fig-thdA.json"]
        assert decide_hd_inf_sup_finite(a).is_no
        assert decide_threshold_hd(a, Fraction(1)).is_yes
        assert decide_threshold_hd(a, Fraction(2)).is_yes
        w1 = threshold_dbp_witness(a, Fraction(1))
        assert w1.is_yes
        c1 = _choices(w1.witness)
        assert c1[("q0", "a")] == "q1" and c1[("q0", "b")] == "q1"
        w2 = threshold_dbp_witness(a, Fraction(2))
        assert w2.is_yes
        c2 = _choices(w2.witness)
        assert c2[("q0", "a")] == "q2" and c2[("q0", "b")] == "q2"
        assert decide_gfg(a).is_yes
        assert extract_dbp_witness(a).is_no


def test_criterion_3_threshold_figure_b(capsys, fixtures):
    with criterion(capsys, 3, "LimSup figure: G2 refuted, all thresholds HD"):
        a = fixtures["fig-thdB.json"]
        assert decide_gfg_limsup(a).is_no
        for t in a.weights():
            assert decide_threshold_hd(a, t).is_yes, str(t)


def test_criterion_4_limavg_figure(capsys, fixtures):
    with criterion(capsys, 4, "LimAvg figure: values, no pruning, G2 open"):
        a = fixtures["fig-limavg.json"]
        assert automaton_value_lasso(a, Lasso("", "a")) == Fraction(1)
        assert automaton_value_lasso(a, Lasso("", "ab")) == Fraction(1)
        assert automaton_value_lasso(a, Lasso("", "aaab")) == Fraction(1, 2)
        for c in enumerate_choices(a):
            b = prune(a, c)
            assert (automaton_value_lasso(b, Lasso("", "a")) < Fraction(1)
                    or automaton_value_lasso(b, Lasso("", "ab")) < Fraction(1)), c
        assert extract_dbp_witness(a).is_no
        assert g2_semicheck(a).is_unknown
        assert not bounded_letter_game(a, side="eve", depth=8).is_no


def test_criterion_5_alternating_figure(capsys, fixtures):
    with criterion(capsys, 5, "alternating figure: DBP without HD"):
        a = fixtures["fig-dbpalt.json"]
        w = extract_dbp_witness(a)
        assert w.is_yes
        words = ["".join(t) for n in range(1, 7)
                 for t in itertools.product(sorted(a.alphabet), repeat=n)]
        found = False
        for c in enumerate_choices(a):
            b = prune(a, c)
            if all(automaton_value_finite(b, u) == Fraction(0)
                   == automaton_value_finite(a, u) for u in words):
                found = True
                break
        assert found
        assert bounded_letter_game(a, side="adam", depth=3).is_no


@pytest.fixture(scope="module")
def limsup_corpus():
    """300 random LimSup automata with G2/G3/threshold verdicts, shared by
    criteria 6 and 7."""
    rng = random.Random(20240817)
    out = []
    for _ in range(300):
        a = random_automaton(rng, "LimSup")
        g2 = decide_gfg_limsup(a, k=2)
        g3 = decide_gfg_limsup(a, k=3) if g2.is_yes else None
        thd = {t: decide_threshold_hd(a, t) for t in a.weights()}
        out.append((a, g2, g3, thd))
    return out


def test_criterion_6_decider_oracle_agreement(capsys, limsup_corpus):
    with criterion(capsys, 6, "300/tag random automata: deciders vs oracle"):
        rng = random.Random(20240818)
        for tag in ("Sup", "Inf", "Sum", "DSum"):
            for _ in range(300):
                a = random_automaton(rng, tag)
                v = decide_hd(a)
                assert v.tag in ("yes", "no"), (tag, v.to_json())
                if v.is_yes:
                    o = bounded_letter_game(a, side="eve", depth=3, lasso_bound=2)
                    assert not o.is_no, (tag, automaton_to_json(a))
        for a, g2, _, thd in limsup_corpus:
            if g2.is_yes:
                o = bounded_letter_game(a, side="eve", depth=3, lasso_bound=2)
                assert not o.is_no, automaton_to_json(a)
            for t, tv in thd.items():
                if tv.is_yes:
                    o = bounded_letter_game(a, side="eve", threshold=t,
                                            depth=3, lasso_bound=2)
                    assert not o.is_no, (str(t), automaton_to_json(a))


def test_criterion_7_token_game_laws(capsys, limsup_corpus):
    with criterion(capsys, 7, "token-game laws: G2=>G3, G2=>thresholds"):
        for a, g2, g3, thd in limsup_corpus:
            if not g2.is_yes:
                continue
            assert g3.is_yes, automaton_to_json(a)
            for t, tv in thd.items():
                assert tv.is_yes, (str(t), automaton_to_json(a))


def test_criterion_8_composition(capsys, fixtures, manifest):
    with criterion(capsys, 8, "composition: value(GxA) = value(G) on yes fixtures"):
        rng = random.Random(20240819)

        def games(a, count=50):
            for _ in range(count):
                if a.mode == "finite":
                    yield random_finite_game(rng, a.alphabet, depth=3)
                else:
                    yield random_lasso_game(rng, a.alphabet)

        for name, spec in manifest.items():
            exp = spec["expect"]
            a = fixtures[name]
            if exp.get("hd") == "yes" or exp.get("gfg") == "yes":
                for g in games(a):
                    res = composition_test(a, g)
                    assert res["equal"], (name, res)
            for entry in exp.get("threshold-hd", []):
                if entry["verdict"] != "yes":
                    continue
                t = Fraction(entry["t"])
                for g in games(a):
                    res = composition_test(a, g)
                    assert ((res["value_game"] >= t)
                            == (res["value_product"] >= t)), (name, entry, res)


def test_criterion_9_synthesis_round_trip(capsys):
    with criterion(capsys, 9, "synthesis round trip on 100 random Sup automata"):
        rng = random.Random(20240820)
        for _ in range(100):
            a = random_automaton(rng, "Sup", max_states=3)
            inst = hd_to_synthesis_instance(a)
            verdict, tr = local_best_value_synthesis(inst)
            hd = decide_hd(a)
            assert hd.is_yes == verdict.is_yes, (hd.to_json(), verdict.to_json())
            if not verdict.is_yes:
                continue
            proj = project_to_input(inst)
            for n in range(1, 7):
                for inp in itertools.product(sorted(inst.inputs), repeat=n):
                    got = automaton_value_finite(inst.automaton, tr.run(inp))
                    assert got == automaton_value_finite(proj, inp), \
                        (inp, automaton_to_json(a))


def test_criterion_10_cautiousness_oracle(capsys):
    with criterion(capsys, 10, "cautious_transitions vs word-quantified brute force"):
        rng = random.Random(20240817)
        for _ in range(150):
            a = random_automaton(rng, "Sum")
            assert cautious_transitions(a) == _brute_cautious(a), \
                automaton_to_json(a)


def _brute_cautious(a, max_len=6):
    """Word-quantified definition: t survives iff no alternative strictly
    beats it on some continuation of length <= max_len (including empty)."""
    memo = {}

    def best(q, w):
        if not w:
            return Fraction(0)
        if (q, w) not in memo:
            memo[(q, w)] = max(t.weight + best(t.target, w[1:])
                               for t in a.transitions_from(q, w[0]))
        return memo[(q, w)]

    words = [""]
    layer = [""]
    for _ in range(max_len):
        layer = [w + s for w in layer for s in sorted(a.alphabet)]
        words += layer
    return {t for q in a.states for sig in a.alphabet
            for t in a.transitions_from(q, sig)
            if all(best(q, sig + u) <= t.weight + best(t.target, u)
                   for u in words)}
