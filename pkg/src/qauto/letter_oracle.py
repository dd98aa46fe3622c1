"""Bounded letter-game oracle: exhaustive game-tree search for refutations.

Eve's letter game: Adam picks letters; Eve resolves Or, Adam resolves And.
Finite mode, Eve wins a play iff Val(run[0..i]) >= A(word[0..i]) at every i
(threshold variant: A(word[0..i]) >= t implies Val(run[0..i]) >= t).
Adam's letter game: Eve picks letters (Or/And roles unchanged); Adam wins iff
Val(run[0..i]) <= A(word[0..i]) at every i (threshold: A(w) < t implies
Val(run) < A(w), implemented verbatim; see notes on the asymmetry).

Infinite mode has no prefix condition; the refuter instead commits, at any
state reached within the depth bound, to an ultimately periodic continuation
and wins if even the defender's best completion violates the condition.
Refutations are exact; absence of refutation is Unknown.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .model import (
    AVG, DSUM, INF, SUM, SUP,
    And, Automaton, Lasso, Leaf, ModelError, Or, classify_automaton,
)
from .valuation import automaton_value_finite, automaton_value_lasso
from .verdicts import EXACT, Verdict, no, unknown

DEFAULT_DEPTH = 6
DEFAULT_LASSO_BOUND = 5
MAX_DEPTH_CAP = int(os.environ.get("QAUTO_MAX_DEPTH", "16"))


class OracleError(ModelError):
    pass


def _summary_init(vf):
    if vf.tag == DSUM:
        return (Fraction(0), Fraction(1))
    return None


def _summary_step(vf, summary, w):
    if vf.tag in (SUM, AVG):
        return w if summary is None else summary + w
    if vf.tag == INF:
        return w if summary is None else min(summary, w)
    if vf.tag == SUP:
        return w if summary is None else max(summary, w)
    if vf.tag == DSUM:
        acc, pw = summary
        return (acc + pw * w, pw * vf.lam)
    # limit value functions: prefixes are irrelevant
    return summary


def _prefix_value(vf, summary, length):
    if vf.tag == AVG:
        return Fraction(summary, length)
    if vf.tag == DSUM:
        return summary[0]
    return summary


def _tail_value(vf, summary, tail):
    """Run value when the summarised prefix continues with a run of value tail."""
    if vf.tag == INF:
        return tail if summary is None else min(summary, tail)
    if vf.tag == SUP:
        return tail if summary is None else max(summary, tail)
    if vf.tag == DSUM:
        acc, pw = summary
        return acc + pw * tail
    # LimInf/LimSup/LimInfAvg/LimSupAvg
    return tail


def _all_lassos(alphabet, size_bound):
    letters = sorted(alphabet)
    out = []
    for total in range(1, size_bound + 1):
        for cyc_len in range(1, total + 1):
            pre_len = total - cyc_len
            for u in _words_of(letters, pre_len):
                for v in _words_of(letters, cyc_len):
                    out.append(Lasso(u, v))
    return out


def _words_of(letters, n):
    if n == 0:
        return [""]
    shorter = _words_of(letters, n - 1)
    return [w + c for w in shorter for c in letters]


def bounded_letter_game(a: Automaton, side: str = "eve",
                        threshold: Fraction | None = None,
                        depth: int = DEFAULT_DEPTH,
                        lasso_bound: int = DEFAULT_LASSO_BOUND) -> Verdict:
    """Depth-bounded search of the side player's letter game.

    Returns No(counter-play) when the opposing player forces a violation
    within the depth bound (exact refutation), else Unknown("bounded").
    """
    if side not in ("eve", "adam"):
        raise OracleError(f"bad side {side!r}")
    if depth < 1 or depth > MAX_DEPTH_CAP:
        raise OracleError(f"DepthTooLarge: depth must be in 1..{MAX_DEPTH_CAP}")
    vf = a.value_function
    finite = a.mode == "finite"
    word_cache = {}

    def word_value(w):
        if w not in word_cache:
            word_cache[w] = automaton_value_finite(a, w)
        return word_cache[w]

    lasso_cache = {}

    def lasso_value(q, w: Lasso):
        key = (q, w.prefix, w.cycle)
        if key not in lasso_cache:
            lasso_cache[key] = automaton_value_lasso(a.with_initial(q), w)
        return lasso_cache[key]

    lassos = None if finite else _all_lassos(a.alphabet, lasso_bound)

    def violated(word, summary):
        """Has the refuter won on the finite prefix?"""
        run_val = _prefix_value(vf, summary, len(word))
        aval = word_value(word)
        if side == "eve":
            if threshold is None:
                return run_val < aval
            return aval >= threshold and run_val < threshold
        if threshold is None:
            return run_val > aval
        # Adam's threshold condition, verbatim (paper-ambiguous asymmetry)
        return aval < threshold and run_val >= aval

    def lasso_refutation(q, word, summary):
        """Refuter commits to an ultimately periodic continuation."""
        for w in lassos:
            full = Lasso(word + w.prefix, w.cycle)
            tail = lasso_value(q, w)
            best = _tail_value(vf, summary, tail)
            aval = automaton_value_lasso(a, full)
            if side == "eve":
                if threshold is None:
                    if best < aval:
                        return [("commit", w.prefix, w.cycle)]
                elif aval >= threshold and best < threshold:
                    return [("commit", w.prefix, w.cycle)]
            else:
                if threshold is None:
                    if best > aval:
                        return [("commit", w.prefix, w.cycle)]
                elif aval < threshold and best >= aval:
                    return [("commit", w.prefix, w.cycle)]
        return None

    def refute_state(q, word, summary, budget):
        """Counter-play if the refuter forces a violation; None otherwise."""
        if not finite:
            hit = lasso_refutation(q, word, summary)
            if hit is not None:
                return hit
        if budget == 0:
            return None
        # the letter picker is the refuter in both games
        for sig in sorted(a.alphabet):
            sub = refute_cond(a.delta[(q, sig)], word + sig, summary, budget)
            if sub is not None:
                return [("letter", sig)] + sub
        return None

    def refute_cond(cond, word, summary, budget):
        if isinstance(cond, Leaf):
            nxt = _summary_step(vf, summary, cond.weight)
            if finite and violated(word, nxt):
                return [("transition", cond.target, cond.weight), ("violation",)]
            deeper = refute_state(cond.target, word, nxt, budget - 1)
            if deeper is None:
                return None
            return [("transition", cond.target, cond.weight)] + deeper
        # Eve resolves Or, Adam resolves And, in both games.
        # The refuter is Adam in Eve's game and Eve in Adam's game.
        refuter_chooses = isinstance(cond, And) if side == "eve" else isinstance(cond, Or)
        subs = []
        for child in cond.children:
            sub = refute_cond(child, word, summary, budget)
            if refuter_chooses:
                if sub is not None:
                    return [("resolve", "refuter")] + sub
            else:
                if sub is None:
                    return None
                subs.append(sub)
        if refuter_chooses:
            return None
        return [("resolve", "defender-forced")] + subs[0]

    counter = refute_state(a.initial, "", _summary_init(vf), depth)
    if counter is not None:
        return no(method=f"bounded-letter-game:{side}", witness=counter,
                  soundness=EXACT)
    return unknown(method=f"bounded-letter-game:{side}",
                   reason=f"no refutation within depth {depth}")
