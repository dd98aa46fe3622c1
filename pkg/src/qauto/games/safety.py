"""Safety and reachability games."""

from __future__ import annotations

from .arena import ADAM, EVE, Arena, attractor


def solve_reachability(arena: Arena, targets):
    """Eve tries to reach `targets`. Returns (eve_region, eve_strategy)."""
    attr, strat = attractor(arena, targets, EVE)
    return attr, strat


def solve_safety(arena: Arena, bad):
    """Eve tries to avoid `bad` forever (terminals outside bad count as safe).

    Returns dict with eve_region, adam_region, eve_strategy, adam_strategy.
    """
    adam_attr, adam_strat = attractor(arena, bad, ADAM)
    eve_region = set(arena.positions()) - adam_attr
    eve_strat = {}
    for v in eve_region:
        if arena.owner[v] == EVE:
            for e in arena.succ[v]:
                if e.dst in eve_region:
                    eve_strat[v] = e
                    break
    return {
        "eve_region": eve_region,
        "adam_region": adam_attr,
        "eve_strategy": eve_strat,
        "adam_strategy": adam_strat,
    }
