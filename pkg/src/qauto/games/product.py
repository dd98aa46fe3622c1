"""Products of games with automata, and a per-value-function arena solver.

Product arenas carry weights only on automaton-transition edges; every cycle
must contain one (checked) so infinite-mode objectives are well defined.
"""

from __future__ import annotations

from fractions import Fraction

from ..model import (
    AVG, DSUM, INF, LIMINF, LIMINFAVG, LIMSUP, LIMSUPAVG, SUM, SUP,
    And, Automaton, Lasso, Leaf, Or, ValueFunctionSpec,
)
from ..valuation import lasso_positions
from .arena import ADAM, EVE, Arena, Edge, GameError, attractor_edges


def expand_condition(owner, edges, src, cond, dest_of, key, discount=None):
    """Add arena nodes/edges resolving a transition condition from src.

    Or nodes belong to Eve, And nodes to Adam; leaves become weighted edges
    to dest_of(leaf). key makes intermediate node names unique.
    """
    if isinstance(cond, Leaf):
        edges.append(Edge(src, dest_of(cond), weight=cond.weight, discount=discount))
        return
    node = ("cond", key)
    if node not in owner:
        owner[node] = EVE if isinstance(cond, Or) else ADAM
        for i, child in enumerate(cond.children):
            expand_condition(owner, edges, node, child, dest_of, key + (i,), discount)
    edges.append(Edge(src, node))


def lasso_product_arena(a: Automaton, w: Lasso) -> Arena:
    """Arena for evaluating an alternating automaton on a lasso word."""
    length, nxt = lasso_positions(w)
    word = w.prefix + w.cycle
    discount = a.value_function.lam if a.value_function.tag == DSUM else None
    owner = {}
    edges = []
    todo = [(a.initial, 0)]
    seen = set()
    while todo:
        q, i = todo.pop()
        if (q, i) in seen:
            continue
        seen.add((q, i))
        owner[("s", q, i)] = EVE

        def dest(leaf, i=i):
            node = (leaf.target, nxt(i))
            if node not in seen:
                todo.append(node)
            return ("s", leaf.target, nxt(i))

        expand_condition(owner, edges, ("s", q, i), a.delta[(q, word[i])],
                         dest, key=(q, i), discount=discount)
    return Arena(owner, edges, ("s", a.initial, 0))


def check_weighted_cycles(arena: Arena):
    """Every cycle must traverse a weighted edge."""
    succ = {}
    for e in arena.edges:
        if e.weight is None:
            succ.setdefault(e.src, []).append(e.dst)
    state = {}
    for root in arena.positions():
        if state.get(root):
            continue
        stack = [(root, iter(succ.get(root, ())))]
        state[root] = "open"
        while stack:
            v, it = stack[-1]
            advanced = False
            for u in it:
                s = state.get(u)
                if s == "open":
                    raise GameError("cycle without a weighted edge")
                if s is None:
                    state[u] = "open"
                    stack.append((u, iter(succ.get(u, ()))))
                    advanced = True
                    break
            if not advanced:
                state[v] = "done"
                stack.pop()


def arena_value(arena: Arena, vf: ValueFunctionSpec, mode: str) -> Fraction:
    """Game value at the initial position. Eve maximises the play's weight
    sequence under vf; unweighted edges are skipped by the sequence."""
    if mode == "finite":
        from .finite_duration import solve_finite_duration_value
        values, _, _ = solve_finite_duration_value(arena, vf)
        return values[arena.initial]
    if vf.tag in (SUM, AVG):
        raise GameError(f"{vf.tag} has no infinite-mode value")
    check_weighted_cycles(arena)
    weights = sorted({e.weight for e in arena.edges if e.weight is not None})

    if vf.tag == SUP:
        best = weights[0]
        for t in reversed(weights):
            attr, _ = attractor_edges(
                arena, lambda e: e.weight is not None and e.weight >= t, EVE)
            if arena.initial in attr:
                return t
        return best
    if vf.tag == INF:
        best = weights[0]
        for t in reversed(weights):
            if t == weights[0]:
                return t
            attr, _ = attractor_edges(
                arena, lambda e: e.weight is not None and e.weight < t, ADAM)
            if arena.initial not in attr:
                return t
        return best
    if vf.tag in (LIMSUP, LIMINF):
        from .parity import solve_parity
        for t in reversed(weights):
            if t == weights[0]:
                return t
            if vf.tag == LIMSUP:
                pri = lambda e, t=t: 0 if e.weight is None else (2 if e.weight >= t else 1)
            else:
                pri = lambda e, t=t: 0 if e.weight is None else (1 if e.weight < t else 0)
            sol = solve_parity(arena, priority_of=pri)
            if arena.initial in sol["eve_region"]:
                return t
        return weights[0]
    if vf.tag in (LIMINFAVG, LIMSUPAVG):
        from .meanpayoff import solve_mean_payoff_value
        values, _ = solve_mean_payoff_value(
            arena,
            weight_of=lambda e: Fraction(0) if e.weight is None else e.weight,
            cost_of=lambda e: 0 if e.weight is None else 1)
        return values[arena.initial]
    if vf.tag == DSUM:
        from .dsum import solve_discounted_value
        values, _, _ = solve_discounted_value(
            arena,
            weight_of=lambda e: Fraction(0) if e.weight is None else e.weight,
            discount_of=lambda e: Fraction(1) if e.weight is None else e.discount)
        return values[arena.initial]
    raise GameError(f"unsupported value function {vf.tag}")


def product_game_automaton(game: Arena, a: Automaton) -> Arena:
    """Product of a letter-labelled game with an automaton.

    Game edges must carry letters from the automaton's alphabet; the automaton
    transition for the emitted letter is resolved right after the edge (Eve
    resolves Or, Adam resolves And). Terminal game positions stay terminal.
    """
    discount = a.value_function.lam if a.value_function.tag == DSUM else None
    owner = {}
    edges = []
    terminals = set()
    todo = [(game.initial, a.initial)]
    seen = set()
    while todo:
        gp, q = todo.pop()
        if (gp, q) in seen:
            continue
        seen.add((gp, q))
        owner[(gp, q)] = game.owner[gp]
        if not game.succ[gp]:
            terminals.add((gp, q))
        for gi, e in enumerate(game.succ[gp]):
            if e.letter is None:
                raise GameError(f"game edge without a letter: {e}")
            if (q, e.letter) not in a.delta:
                raise GameError(f"automaton cannot read {e.letter!r} from {q!r}")

            def dest(leaf, e=e):
                node = (e.dst, leaf.target)
                if node not in seen:
                    todo.append(node)
                return node

            expand_condition(owner, edges, (gp, q), a.delta[(q, e.letter)],
                             dest, key=(gp, q, gi), discount=discount)
    return Arena(owner, edges, (game.initial, a.initial), terminals)
