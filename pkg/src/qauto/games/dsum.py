"""Discounted-sum games with per-edge discounts, solved by policy iteration."""

from __future__ import annotations

from fractions import Fraction

from .arena import ADAM, EVE, Arena, GameError


def _check_discounting_cycles(arena: Arena):
    """Discount-1 edges may not form a cycle, so every cycle contracts."""
    succ = {}
    for e in arena.edges:
        if e.discount == 1:
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
                    raise GameError("cycle without a discounting edge")
                if s is None:
                    state[u] = "open"
                    stack.append((u, iter(succ.get(u, ()))))
                    advanced = True
                    break
            if not advanced:
                state[v] = "done"
                stack.pop()


def _evaluate(arena: Arena, choice):
    """Exact values when both players follow `choice` (one edge per position)."""
    values = {}
    for start in arena.positions():
        if start in values:
            continue
        path = []
        seen = {}
        v = start
        while v not in values and v not in seen:
            seen[v] = len(path)
            path.append(choice[v])
            v = choice[v].dst
        if v in values:
            tail = values[v]
        else:
            # closed form on the cycle starting at v
            k = seen[v]
            cycle = path[k:]
            acc = Fraction(0)
            disc = Fraction(1)
            for e in cycle:
                acc += disc * e.weight
                disc *= e.discount
            tail = acc / (1 - disc)
            values[v] = tail
            path = path[:k]
        for e in reversed(path):
            tail = e.weight + e.discount * tail
            values[e.src] = tail
    return values


def solve_discounted_value(arena: Arena, weight_of=None, discount_of=None):
    """Eve maximises the discounted sum of edge weights; exact rational values.

    Every edge needs a weight and a discount in (0, 1). Returns
    (values, eve_strategy, adam_strategy).
    """
    if arena.terminals:
        raise GameError("discounted game must be terminal-free")
    if weight_of is not None or discount_of is not None:
        from .arena import Edge
        edges = [Edge(e.src, e.dst, letter=e.letter,
                      weight=e.weight if weight_of is None else weight_of(e),
                      discount=e.discount if discount_of is None else discount_of(e))
                 for e in arena.edges]
        arena = Arena(arena.owner, edges, arena.initial)
    for e in arena.edges:
        if e.weight is None or e.discount is None or not (0 < e.discount <= 1):
            raise GameError(f"discounted game needs weight and discount in (0,1]: {e}")
    _check_discounting_cycles(arena)

    choice = {v: arena.succ[v][0] for v in arena.positions()}
    while True:
        # best response for Adam against Eve's current choices
        while True:
            values = _evaluate(arena, choice)
            improved = False
            for v in arena.positions():
                if arena.owner[v] != ADAM:
                    continue
                for e in arena.succ[v]:
                    if e.weight + e.discount * values[e.dst] < values[v]:
                        choice[v] = e
                        values = _evaluate(arena, choice)
                        improved = True
            if not improved:
                break
        improved = False
        for v in arena.positions():
            if arena.owner[v] != EVE:
                continue
            best = choice[v]
            best_val = best.weight + best.discount * values[best.dst]
            for e in arena.succ[v]:
                val = e.weight + e.discount * values[e.dst]
                if val > best_val:
                    best, best_val = e, val
            if best is not choice[v] and best_val > values[v]:
                choice[v] = best
                improved = True
        if not improved:
            break

    values = _evaluate(arena, choice)
    for v in arena.positions():
        opt = (max if arena.owner[v] == EVE else min)(
            e.weight + e.discount * values[e.dst] for e in arena.succ[v])
        if opt != values[v]:
            raise GameError("policy iteration failed the optimality certificate")
    eve = {v: choice[v] for v in arena.positions() if arena.owner[v] == EVE}
    adam = {v: choice[v] for v in arena.positions() if arena.owner[v] == ADAM}
    return values, eve, adam
