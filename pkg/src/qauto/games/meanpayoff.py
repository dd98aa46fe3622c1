"""Mean-payoff games: exact values through energy-game threshold queries."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .arena import EVE, Arena, GameError
from .energy import INF, NEG, solve_energy


def mean_payoff_at_least(arena: Arena, t: Fraction, weight_of=None, cost_of=None):
    """Can Eve force lim-inf-average >= t from each position?

    cost_of(e) in {0, 1} says whether the edge counts as a step (default 1);
    the average is over counted edges, and every cycle must contain one.
    Returns (eve_region, eve_strategy).
    """
    if weight_of is None:
        weight_of = lambda e: Fraction(0) if e.weight is None else e.weight
    if cost_of is None:
        cost_of = lambda e: 1
    shifted = lambda e: Fraction(weight_of(e)) - t * cost_of(e)
    need, strategy = solve_energy(arena, weight_of=shifted)
    region = {v for v, n in need.items() if n is not INF}
    return region, {v: e for v, e in strategy.items() if v in region}


def _value_denominator_bound(arena: Arena, weight_of, cost_of):
    d = 1
    for e in arena.edges:
        w = Fraction(weight_of(e))
        d = d // gcd(d, w.denominator) * w.denominator
    n = sum(cost_of(e) and 1 for e in arena.edges)
    n = max(n, len(arena.owner))
    return n * d


def solve_mean_payoff_value(arena: Arena, weight_of=None, cost_of=None):
    """Exact optimal lim-average value per position (Eve maximises).

    Values are cycle averages, so denominators are bounded; binary search on
    threshold queries pins each value down, then we snap to the nearest
    representable rational. Returns (values, eve_strategy_for(t) closure).
    """
    if arena.terminals:
        raise GameError("mean payoff game must be terminal-free")
    if weight_of is None:
        weight_of = lambda e: Fraction(0) if e.weight is None else e.weight
    if cost_of is None:
        cost_of = lambda e: 1

    weights = [Fraction(weight_of(e)) for e in arena.edges]
    lo_all = min(weights)
    hi_all = max(weights)
    D = _value_denominator_bound(arena, weight_of, cost_of)
    gap = Fraction(1, 2 * D * D)

    values = {}
    groups = [(set(arena.positions()), lo_all, hi_all + 1)]
    # invariant: value >= lo holds, value >= hi fails, for every v in the group
    while groups:
        group, lo, hi = groups.pop()
        if hi - lo <= gap:
            snapped = _snap(Fraction(lo + hi, 2), D)
            for v in group:
                values[v] = snapped
            continue
        mid = Fraction(lo + hi, 2)
        region, _ = mean_payoff_at_least(arena, mid, weight_of, cost_of)
        above = group & region
        below = group - region
        if above:
            groups.append((above, mid, hi))
        if below:
            groups.append((below, lo, mid))

    def strategy_for(t):
        _, strat = mean_payoff_at_least(arena, t, weight_of, cost_of)
        return strat

    return values, strategy_for


def _snap(x: Fraction, max_denominator: int) -> Fraction:
    return x.limit_denominator(max_denominator)
