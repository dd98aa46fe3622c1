"""Streett games via the index appearance record reduction to parity."""

from __future__ import annotations

from .arena import Arena, Edge
from .parity import solve_parity


def reduce_streett_to_parity(arena: Arena, pairs_count: int, events):
    """Build the IAR parity arena for a Streett game on edge events.

    events(e) -> (E_fired, F_fired): sets of pair indices. Eve wins iff for
    every pair, E firing infinitely often implies F firing infinitely often.

    Product positions are (position, permutation); fired-F indices move to the
    front of the permutation. Edge priority (max-parity, even good for Eve):
    2*posF + 2 if posF >= posE else 2*posE + 1, where posE/posF are the largest
    1-based permutation positions of firing indices (0 if none fire).
    """
    init_perm = tuple(range(pairs_count))
    initial = (arena.initial, init_perm)
    owner = {}
    edges = []
    stack = [initial]
    while stack:
        node = stack.pop()
        if node in owner:
            continue
        v, perm = node
        owner[node] = arena.owner[v]
        for e in arena.succ[v]:
            efired, ffired = events(e)
            pos = {i: k + 1 for k, i in enumerate(perm)}
            pos_e = max((pos[i] for i in efired), default=0)
            pos_f = max((pos[i] for i in ffired), default=0)
            if pos_f >= pos_e:
                pri = 2 * pos_f + 2
            else:
                pri = 2 * pos_e + 1
            moved = [i for i in perm if i in ffired]
            rest = [i for i in perm if i not in ffired]
            nxt = (e.dst, tuple(moved + rest))
            edges.append(Edge(node, nxt, letter=e.letter, priority=pri))
            if nxt not in owner:
                stack.append(nxt)
    return Arena(owner, edges, initial)


def solve_streett(arena: Arena, pairs_count: int, events):
    """Returns (eve_wins_initial, parity solution, IAR arena)."""
    iar = reduce_streett_to_parity(arena, pairs_count, events)
    sol = solve_parity(iar)
    return iar.initial in sol["eve_region"], sol, iar
