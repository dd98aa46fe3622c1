"""Finite-duration games on DAG arenas: exact values by backward induction."""

from __future__ import annotations

from fractions import Fraction

from ..model import AVG, DSUM, INF, SUM, SUP, ValueFunctionSpec
from .arena import EVE, Arena, GameError


def _check_dag(arena: Arena):
    state = {}
    for root in arena.positions():
        if state.get(root):
            continue
        stack = [(root, iter(arena.succ[root]))]
        state[root] = "open"
        while stack:
            v, it = stack[-1]
            advanced = False
            for e in it:
                u = e.dst
                s = state.get(u)
                if s == "open":
                    raise GameError("finite-duration game has a cycle")
                if s is None:
                    state[u] = "open"
                    stack.append((u, iter(arena.succ[u])))
                    advanced = True
                    break
            if not advanced:
                state[v] = "done"
                stack.pop()


def solve_finite_duration_value(arena: Arena, vf: ValueFunctionSpec):
    """Value of the play's weight sequence under vf; plays end at terminals.

    Edges without weight contribute nothing to the sequence. Eve maximises.
    Returns (values, eve_strategy, adam_strategy); values map positions to the
    optimal value of the remaining play (None at terminals).
    """
    if vf.tag not in (SUM, AVG, INF, SUP, DSUM):
        raise GameError(f"finite-duration game unsupported for {vf.tag}")
    _check_dag(arena)
    lam = vf.lam
    EMPTY = object()

    # summaries: per-position value of the suffix sequence; AVG needs (sum, count)
    def combine(w, suffix):
        if w is None:
            return suffix
        if suffix is EMPTY:
            if vf.tag == AVG:
                return (w, 1)
            return w
        if vf.tag == SUM:
            return w + suffix
        if vf.tag == AVG:
            return (w + suffix[0], suffix[1] + 1)
        if vf.tag == INF:
            return min(w, suffix)
        if vf.tag == SUP:
            return max(w, suffix)
        return w + lam * suffix

    def numeric(x):
        if x is EMPTY:
            return None
        if vf.tag == AVG:
            return Fraction(x[0], x[1])
        return Fraction(x)

    memo = {}
    choice = {}

    def solve(v):
        if v in memo:
            return memo[v]
        if not arena.succ[v]:
            memo[v] = EMPTY
            return EMPTY
        best = None
        best_num = None
        count = None
        for e in arena.succ[v]:
            val = combine(e.weight, solve(e.dst))
            num = numeric(val)
            if num is None:
                raise GameError("play with no weighted edge has no value")
            if vf.tag == AVG:
                # averages only compose when every play from v has the same
                # number of weighted edges
                if count is None:
                    count = val[1]
                elif val[1] != count:
                    raise GameError("AVG game needs uniform play length")
            better = best is None or (
                num > best_num if arena.owner[v] == EVE else num < best_num)
            if better:
                best, best_num, choice[v] = val, num, e
        memo[v] = best
        return best

    for v in arena.positions():
        solve(v)
    values = {v: numeric(memo[v]) for v in arena.positions()}
    eve = {v: e for v, e in choice.items() if arena.owner[v] == EVE}
    adam = {v: e for v, e in choice.items() if arena.owner[v] != EVE}
    return values, eve, adam
