"""Energy games: minimal initial credit via least-fixpoint lifting."""

from __future__ import annotations

from fractions import Fraction

from .arena import EVE, Arena, GameError

INF = object()  # no finite credit suffices
NEG = object()  # no constraint applies (minimal credit is unbounded below)


def _key(x):
    if x is NEG:
        return (0, 0)
    if x is INF:
        return (2, 0)
    return (1, x)


def _lt(a, b):
    return _key(a) < _key(b)


def _scale_weights(arena: Arena, weight_of):
    """Clear denominators so lifting runs on integers. Returns (ints, scale)."""
    from math import gcd
    fracs = {}
    denom = 1
    for e in arena.edges:
        w = weight_of(e)
        w = Fraction(0) if w is None else Fraction(w)
        fracs[id(e)] = w
        denom = denom // gcd(denom, w.denominator) * w.denominator
    return {k: int(w * denom) for k, w in fracs.items()}, denom


def solve_energy(arena: Arena, weight_of=None, checkpoints=None):
    """Minimal initial credit for Eve so that every play prefix ending in a
    checkpoint has nonnegative credit (all positions if checkpoints is None).

    Eve maximises accumulated weight. Returns (need, strategy): need[v] is a
    Fraction, NEG (no constraint reachable under optimal play) or INF; the
    strategy is Eve's optimal positional choice on her finite-need positions.
    """
    if arena.terminals:
        raise GameError("energy game must be terminal-free")
    if weight_of is None:
        weight_of = lambda e: e.weight
    iw, scale = _scale_weights(arena, weight_of)
    positions = list(arena.positions())
    checkpoints = set(positions) if checkpoints is None else set(checkpoints)
    max_abs = max((abs(w) for w in iw.values()), default=0)
    cap = len(positions) * max_abs + 1

    def base(v):
        return 0 if v in checkpoints else NEG

    def via(e):
        nv = need[e.dst]
        if nv is INF or nv is NEG:
            return nv
        return nv - iw[id(e)]

    need = {v: base(v) for v in positions}
    changed = True
    while changed:
        changed = False
        for v in positions:
            vals = [via(e) for e in arena.succ[v]]
            if arena.owner[v] == EVE:
                lifted = min(vals, key=_key)
            else:
                lifted = max(vals, key=_key)
            new = max(need[v], lifted, base(v), key=_key)
            if new is not INF and new is not NEG and new > cap:
                new = INF
            if _key(new) != _key(need[v]):
                need[v] = new
                changed = True

    result = {}
    for v in positions:
        nv = need[v]
        result[v] = nv if nv is INF or nv is NEG else Fraction(nv, scale)
    strategy = {}
    for v in positions:
        if arena.owner[v] != EVE or result[v] is INF:
            continue
        strategy[v] = min(arena.succ[v], key=lambda e: _key(via(e)))
    return result, strategy
