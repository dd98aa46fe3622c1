"""Seeded random automata and games for cross-validation corpora."""

from __future__ import annotations

import random
from fractions import Fraction

from .games.arena import ADAM, EVE, Arena, Edge
from .model import (
    DSUM, LIMINF, LIMSUP, SUM, SUP, INF, AVG, LIMINFAVG, LIMSUPAVG,
    Automaton, Leaf, Or, ValueFunctionSpec, validate_automaton,
)

FINITE_TAGS = {SUM, AVG, INF, SUP}


def _mode_for(tag: str) -> str:
    if tag in FINITE_TAGS:
        return "finite"
    if tag == DSUM:
        return "infinite"
    return "infinite"


def random_automaton(rng: random.Random, tag: str, max_states: int = 4,
                     letters: int = 2, max_weights: int = 3,
                     mode: str | None = None,
                     deterministic: bool = False) -> Automaton:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    alphabet = tuple("abcdefgh"[:letters])
    lo = -2 if tag in (SUM, AVG, DSUM) else 0
    pool = list(range(lo, lo + 5))
    weights = [Fraction(w) for w in rng.sample(pool, rng.randint(1, max_weights))]
    delta = {}
    for q in states:
        for sig in alphabet:
            k = 1 if deterministic else rng.randint(1, 3)
            leaves = []
            seen = set()
            for _ in range(k):
                leaf = Leaf(rng.choice(weights), rng.choice(states))
                if (leaf.weight, leaf.target) not in seen:
                    seen.add((leaf.weight, leaf.target))
                    leaves.append(leaf)
            delta[(q, sig)] = leaves[0] if len(leaves) == 1 else Or(tuple(leaves))
    lam = Fraction(1, 2) if tag == DSUM else None
    a = Automaton(alphabet, states, "q0", delta,
                  ValueFunctionSpec(tag, lam), mode or _mode_for(tag))
    validate_automaton(a)
    return a


def random_finite_game(rng: random.Random, alphabet, depth: int = 3) -> Arena:
    """Letter-labelled DAG arena with uniform play length (every play reads
    exactly `depth` letters), random owners and letter menus."""
    letters = sorted(alphabet)
    owner = {}
    edges = []
    terminals = set()

    def build(path):
        pos = ("n",) + path
        if len(path) == depth:
            owner[pos] = EVE
            terminals.add(pos)
            return pos
        owner[pos] = rng.choice([EVE, ADAM])
        menu = rng.sample(letters, rng.randint(1, len(letters)))
        for sig in sorted(menu):
            child = build(path + (sig,))
            edges.append(Edge(pos, child, letter=sig))
        return pos

    initial = build(())
    return Arena(owner, edges, initial, terminals=terminals)


def random_lasso_game(rng: random.Random, alphabet, branches: int = 3,
                      max_prefix: int = 2, max_cycle: int = 3) -> Arena:
    """One-player arena: the owner chooses one of several disjoint letter
    lassos at the initial position, then the play is forced."""
    letters = sorted(alphabet)
    player = rng.choice([EVE, ADAM])
    owner = {"root": player}
    edges = []
    for b in range(rng.randint(1, branches)):
        pre = [rng.choice(letters) for _ in range(rng.randint(0, max_prefix))]
        cyc = [rng.choice(letters) for _ in range(rng.randint(1, max_cycle))]
        word = pre + cyc
        nodes = [("b", b, i) for i in range(len(word))]
        src = "root"
        for i, sig in enumerate(word):
            owner[nodes[i]] = player
            edges.append(Edge(src, nodes[i], letter=sig))
            src = nodes[i]
        edges.append(Edge(src, nodes[len(pre)], letter=cyc[0]))
    return Arena(owner, edges, "root")
