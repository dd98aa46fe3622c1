"""Parity games: Zielonka's algorithm, with edge priorities via edge splitting."""

from __future__ import annotations

import sys

from .arena import ADAM, EVE, Arena, Edge, GameError, attractor

sys.setrecursionlimit(200000)


def _zielonka(arena: Arena, prio, nodes):
    """Max-parity: even max priority seen infinitely often means Eve wins.

    prio: dict position -> int. Returns (win, strategy) where win maps each
    position in nodes to EVE/ADAM and strategy gives the winner's move.
    """
    if not nodes:
        return {}, {}
    p = max(prio[v] for v in nodes)
    player = EVE if p % 2 == 0 else ADAM
    opponent = ADAM if player == EVE else EVE
    targets = {v for v in nodes if prio[v] == p}
    attr, attr_strat = attractor(arena, targets, player, within=nodes)
    win_rest, strat_rest = _zielonka(arena, prio, nodes - attr)
    opp_region = {v for v, w in win_rest.items() if w == opponent}
    if not opp_region:
        win = {v: player for v in nodes}
        strat = dict(strat_rest)
        strat.update(attr_strat)
        for v in targets:
            if arena.owner[v] == player and v not in strat:
                for e in arena.succ[v]:
                    if e.dst in nodes:
                        strat[v] = e
                        break
        for v in attr - targets:
            if arena.owner[v] == player and v not in strat:
                for e in arena.succ[v]:
                    if e.dst in nodes:
                        strat[v] = e
                        break
        return win, strat
    battr, battr_strat = attractor(arena, opp_region, opponent, within=nodes)
    win_final, strat_final = _zielonka(arena, prio, nodes - battr)
    win = dict(win_final)
    strat = dict(strat_final)
    for v in battr:
        win[v] = opponent
    for v, e in strat_rest.items():
        if v in opp_region and win_rest[v] == opponent:
            strat[v] = e
    for v, e in battr_strat.items():
        if v not in opp_region:
            strat[v] = e
    return win, strat


def solve_parity_nodes(arena: Arena, prio):
    """Solve a node-priority max-parity game on the full arena."""
    for v in arena.positions():
        if v in arena.terminals:
            raise GameError("parity game must be terminal-free")
    return _zielonka(arena, prio, set(arena.positions()))


def split_edge_priorities(arena: Arena, default_priority=0):
    """Turn edge priorities into node priorities by inserting midpoint nodes."""
    owner = {}
    prio = {}
    edges = []
    for v in arena.positions():
        owner[v] = arena.owner[v]
        prio[v] = default_priority
    for i, e in enumerate(arena.edges):
        if e.priority is None or e.priority == default_priority:
            edges.append(e)
            continue
        mid = ("edge", i, e.src, e.dst)
        owner[mid] = EVE
        prio[mid] = e.priority
        edges.append(Edge(e.src, mid))
        edges.append(Edge(mid, e.dst))
    split = Arena(owner, edges, arena.initial)
    return split, prio


def solve_parity(arena: Arena, priority_of=None):
    """Solve a max-parity game with priorities on edges.

    priority_of: optional edge -> int; defaults to Edge.priority (None -> 0).
    Returns dict with eve_region, adam_region, eve_strategy, adam_strategy,
    where strategies map original positions to original edges.
    """
    if priority_of is not None:
        relabeled = []
        for e in arena.edges:
            relabeled.append(Edge(e.src, e.dst, letter=e.letter, weight=e.weight,
                                  priority=priority_of(e), discount=e.discount))
        arena = Arena(arena.owner, relabeled, arena.initial, arena.terminals)
    split, prio = split_edge_priorities(arena)
    win, strat = _zielonka(split, prio, set(split.owner))
    eve_region = {v for v in arena.positions() if win[v] == EVE}
    adam_region = {v for v in arena.positions() if win[v] == ADAM}

    def back(v):
        e = strat.get(v)
        if e is None:
            return None
        if isinstance(e.dst, tuple) and len(e.dst) == 4 and e.dst[0] == "edge":
            return arena.edges[e.dst[1]]
        return e

    eve_strategy = {v: back(v) for v in eve_region
                    if arena.owner[v] == EVE and back(v) is not None}
    adam_strategy = {v: back(v) for v in adam_region
                     if arena.owner[v] == ADAM and back(v) is not None}
    return {
        "eve_region": eve_region,
        "adam_region": adam_region,
        "eve_strategy": eve_strategy,
        "adam_strategy": adam_strategy,
    }


def solve_buchi(arena: Arena, good_edge):
    """Eve wins iff she forces traversing `good_edge` edges infinitely often.

    Greatest fixpoint Z = {positions from which Eve forces a good edge into Z}.
    Independent of the parity solver; used as a cross-check.
    Returns the set of positions winning for Eve.
    """
    from .arena import attractor_edges

    if arena.terminals:
        raise GameError("buechi game must be terminal-free")
    region = set(arena.positions())
    while True:
        attr, _ = attractor_edges(
            arena, lambda e: good_edge(e) and e.dst in region, EVE)
        if attr == region:
            return region
        region = attr
