"""Two-player game arenas shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..rationals import format_rational, parse_rational

EVE = "E"
ADAM = "A"


class GameError(Exception):
    pass


@dataclass(frozen=True)
class Edge:
    src: object
    dst: object
    letter: str | None = None
    weight: Fraction | None = None
    priority: int | None = None
    discount: Fraction | None = None


class Arena:
    """owner maps positions to EVE/ADAM; terminals may have no outgoing edges."""

    def __init__(self, owner, edges, initial, terminals=()):
        self.owner = dict(owner)
        self.edges = list(edges)
        self.initial = initial
        self.terminals = set(terminals)
        self.succ = {v: [] for v in self.owner}
        self.pred = {v: [] for v in self.owner}
        for e in self.edges:
            if e.src not in self.owner or e.dst not in self.owner:
                raise GameError(f"edge endpoint not a position: {e}")
            self.succ[e.src].append(e)
            self.pred[e.dst].append(e)
        if self.initial not in self.owner:
            raise GameError("initial not a position")
        for v in self.owner:
            if not self.succ[v] and v not in self.terminals:
                raise GameError(f"dead end position {v!r}")

    def positions(self):
        return self.owner.keys()

    def restrict(self, keep):
        keep = set(keep)
        owner = {v: p for v, p in self.owner.items() if v in keep}
        edges = [e for e in self.edges if e.src in keep and e.dst in keep]
        init = self.initial if self.initial in keep else next(iter(keep))
        terms = {v for v in keep if not any(e.src == v for e in edges)}
        return Arena(owner, edges, init, self.terminals | terms)


def attractor(arena: Arena, targets, player, within=None):
    """Positions from which `player` forces reaching `targets`; plus a strategy.

    `within` restricts the subgame. Edges leaving `within` are ignored.
    Returns (attractor set, strategy dict pos -> Edge for player positions).
    """
    if within is None:
        within = set(arena.positions())
    else:
        within = set(within)
    attr = set(t for t in targets if t in within)
    strategy = {}
    out = {}
    for v in within:
        out[v] = sum(1 for e in arena.succ[v] if e.dst in within)
    queue = list(attr)
    while queue:
        u = queue.pop()
        for e in arena.pred[u]:
            v = e.src
            if v not in within or v in attr:
                continue
            if arena.owner[v] == player:
                attr.add(v)
                strategy[v] = e
                queue.append(v)
            else:
                out[v] -= 1
                if out[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strategy


def attractor_edges(arena: Arena, good_edge, player, within=None):
    """Positions from which `player` forces traversing an edge in `good_edge`."""
    if within is None:
        within = set(arena.positions())
    else:
        within = set(within)
    goal = object()
    owner = {v: arena.owner[v] for v in within}
    owner[goal] = EVE
    edges = []
    for e in arena.edges:
        if e.src not in within:
            continue
        if good_edge(e):
            edges.append(Edge(e.src, goal))
        elif e.dst in within:
            edges.append(e)
    sub = Arena(owner, edges, next(iter(within)), terminals={goal} | {
        v for v in within if not any(e.src == v for e in edges)})
    attr, strat = attractor(sub, {goal}, player)
    attr.discard(goal)
    mapped = {}
    for v, e in strat.items():
        if e.dst is goal:
            orig = next(oe for oe in arena.succ[v] if good_edge(oe))
            mapped[v] = orig
        else:
            mapped[v] = e
    return attr, mapped


def arena_to_json(arena: Arena) -> dict:
    def enc(v):
        return v if isinstance(v, str) else repr(v)
    edges = []
    for e in arena.edges:
        d = {"src": enc(e.src), "dst": enc(e.dst)}
        if e.letter is not None:
            d["letter"] = e.letter
        if e.weight is not None:
            d["weight"] = format_rational(e.weight)
        if e.priority is not None:
            d["priority"] = e.priority
        if e.discount is not None:
            d["discount"] = format_rational(e.discount)
        edges.append(d)
    return {
        "positions": {enc(v): p for v, p in arena.owner.items()},
        "initial": enc(arena.initial),
        "edges": edges,
        "terminals": sorted(enc(v) for v in arena.terminals),
    }


def arena_from_json(data: dict) -> Arena:
    edges = []
    for d in data["edges"]:
        edges.append(Edge(
            d["src"], d["dst"],
            letter=d.get("letter"),
            weight=parse_rational(d["weight"]) if "weight" in d else None,
            priority=d.get("priority"),
            discount=parse_rational(d["discount"]) if "discount" in d else None,
        ))
    return Arena(data["positions"], edges, data["initial"], data.get("terminals", ()))
