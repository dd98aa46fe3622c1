"""Run values and automaton values on finite words and lassos."""

from __future__ import annotations

from fractions import Fraction

from .model import (
    AVG, DSUM, INF, LIMINF, LIMINFAVG, LIMSUP, LIMSUPAVG, SUM, SUP,
    ALTERNATING, DETERMINISTIC, NONDETERMINISTIC, UNIVERSAL,
    And, Automaton, Lasso, Leaf, ModelError, Or, ValueFunctionSpec,
    classify_automaton, condition_leaves,
)


class ValuationError(ModelError):
    pass


# ---------------------------------------------------------------------------
# run values


def run_value(vf: ValueFunctionSpec, seq) -> Fraction:
    """Value of a weight sequence: list of rationals, or (prefix, cycle) lasso."""
    if isinstance(seq, tuple):
        prefix, cycle = seq
        if not cycle:
            raise ValuationError("IncompatibleSequence: empty lasso cycle")
        if vf.tag in (SUM, AVG):
            raise ValuationError(f"IncompatibleSequence: {vf.tag} undefined on lassos")
        if vf.tag == INF:
            return min(list(prefix) + list(cycle))
        if vf.tag == SUP:
            return max(list(prefix) + list(cycle))
        if vf.tag == LIMINF:
            return min(cycle)
        if vf.tag == LIMSUP:
            return max(cycle)
        if vf.tag in (LIMINFAVG, LIMSUPAVG):
            return Fraction(sum(cycle), len(cycle))
        if vf.tag == DSUM:
            lam = vf.lam
            dsum_prefix = _dsum_finite(prefix, lam)
            dsum_cycle = _dsum_finite(cycle, lam)
            return dsum_prefix + lam ** len(prefix) * dsum_cycle / (1 - lam ** len(cycle))
        raise ValuationError(f"IncompatibleSequence: {vf.tag}")
    seq = list(seq)
    if not seq:
        raise ValuationError("IncompatibleSequence: empty sequence")
    if vf.tag == SUM:
        return Fraction(sum(seq))
    if vf.tag == AVG:
        return Fraction(sum(seq), len(seq))
    if vf.tag == INF:
        return min(seq)
    if vf.tag == SUP:
        return max(seq)
    if vf.tag == DSUM:
        return _dsum_finite(seq, vf.lam)
    raise ValuationError(f"IncompatibleSequence: {vf.tag} needs an infinite (lasso) sequence")


def _dsum_finite(seq, lam: Fraction) -> Fraction:
    total = Fraction(0)
    for x in reversed(list(seq)):
        total = x + lam * total
    return total


# ---------------------------------------------------------------------------
# finite words


def automaton_value_finite(a: Automaton, w: str, initial: str | None = None) -> Fraction:
    """Value of the finite-duration game G(A, w): Eve resolves Or, Adam resolves And."""
    if a.mode != "finite":
        raise ValuationError("ModeMismatch: automaton is not finite-mode")
    if not w:
        raise ValuationError("EmptyWord")
    vf = a.value_function
    lam = vf.lam
    n = len(w)
    EMPTY = object()

    def combine(x, v):
        if vf.tag in (SUM, AVG):
            return x if v is EMPTY else x + v
        if vf.tag == INF:
            return x if v is EMPTY else min(x, v)
        if vf.tag == SUP:
            return x if v is EMPTY else max(x, v)
        if vf.tag == DSUM:
            return x if v is EMPTY else x + lam * v
        raise ValuationError(f"ModeMismatch: {vf.tag} on finite words")

    memo = {}

    def state_value(i, q):
        if i == n:
            return EMPTY
        key = (i, q)
        if key not in memo:
            memo[key] = cond_value(i, a.delta[(q, w[i])])
        return memo[key]

    def cond_value(i, cond):
        if isinstance(cond, Leaf):
            return combine(cond.weight, state_value(i + 1, cond.target))
        vals = [cond_value(i, c) for c in cond.children]
        return max(vals) if isinstance(cond, Or) else min(vals)

    result = state_value(0, initial if initial is not None else a.initial)
    if vf.tag == AVG:
        return Fraction(result, n)
    return Fraction(result)


def automaton_value_finite_forward(a: Automaton, w: str) -> Fraction:
    """Forward DP over (position, state); nondeterministic Sum/Avg/Inf/Sup only."""
    vf = a.value_function
    if vf.tag not in (SUM, AVG, INF, SUP):
        raise ValuationError(f"forward DP unsupported for {vf.tag}")
    if classify_automaton(a) not in (DETERMINISTIC, NONDETERMINISTIC):
        raise ValuationError("forward DP needs a nondeterministic automaton")
    if not w:
        raise ValuationError("EmptyWord")
    frontier = {a.initial: None}
    for sig in w:
        nxt = {}
        for q, acc in frontier.items():
            for t in a.transitions_from(q, sig):
                if vf.tag in (SUM, AVG):
                    val = t.weight if acc is None else acc + t.weight
                elif vf.tag == INF:
                    val = t.weight if acc is None else min(acc, t.weight)
                else:
                    val = t.weight if acc is None else max(acc, t.weight)
                if t.target not in nxt or val > nxt[t.target]:
                    nxt[t.target] = val
        frontier = nxt
    best = max(frontier.values())
    if vf.tag == AVG:
        return Fraction(best, len(w))
    return best


# ---------------------------------------------------------------------------
# lasso product graph (deterministic / nondeterministic / universal)


def lasso_positions(w: Lasso):
    length = len(w.prefix) + len(w.cycle)
    def nxt(i):
        return i + 1 if i + 1 < length else len(w.prefix)
    return length, nxt


def build_product_graph(a: Automaton, w: Lasso):
    """Nodes (state, pos); edges (node, weight, node'). Or/And flattened to leaves."""
    length, nxt = lasso_positions(w)
    word = w.prefix + w.cycle
    nodes = set()
    edges = []
    stack = [(a.initial, 0)]
    succ = {}
    while stack:
        node = stack.pop()
        if node in nodes:
            continue
        nodes.add(node)
        q, i = node
        succ[node] = []
        for leaf in condition_leaves(a.delta[(q, word[i])]):
            child = (leaf.target, nxt(i))
            edge = (node, leaf.weight, child)
            edges.append(edge)
            succ[node].append(edge)
            if child not in nodes:
                stack.append(child)
    return nodes, edges, succ


def _scc_decomposition(nodes, succ):
    """Tarjan SCCs; returns list of sets."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]

    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack.add(v)
            children = succ[v]
            recursed = False
            while pi < len(children):
                u = children[pi][2]
                pi += 1
                if u not in index:
                    work[-1] = (v, pi)
                    work.append((u, 0))
                    recursed = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if recursed:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = set()
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.add(u)
                    if u == v:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def _max_mean_cycle(nodes, edges) -> Fraction | None:
    """Karp's algorithm per SCC; None if the graph is acyclic."""
    succ = {v: [] for v in nodes}
    for e in edges:
        succ[e[0]].append(e)
    best = None
    for comp in _scc_decomposition(nodes, succ):
        comp_edges = [e for e in edges if e[0] in comp and e[2] in comp]
        if not comp_edges:
            continue
        order = sorted(comp, key=str)
        idx = {v: i for i, v in enumerate(order)}
        n = len(order)
        NEG = None
        # D[k][v] = max weight of a k-edge path ending at v (within the SCC)
        D = [[NEG] * n for _ in range(n + 1)]
        for v in range(n):
            D[0][v] = Fraction(0)
        for k in range(1, n + 1):
            for (u, wgt, v) in comp_edges:
                du = D[k - 1][idx[u]]
                if du is None:
                    continue
                cand = du + wgt
                dv = D[k][idx[v]]
                if dv is None or cand > dv:
                    D[k][idx[v]] = cand
        for v in range(n):
            if D[n][v] is None:
                continue
            worst = None
            for k in range(n):
                if D[k][v] is None:
                    continue
                ratio = Fraction(D[n][v] - D[k][v], n - k)
                if worst is None or ratio < worst:
                    worst = ratio
            if worst is not None and (best is None or worst > best):
                best = worst
    return best


def _reachable_cycle_exists(nodes, edges):
    succ = {v: [] for v in nodes}
    for e in edges:
        succ[e[0]].append(e)
    for comp in _scc_decomposition(nodes, succ):
        if len(comp) > 1:
            return True
        v = next(iter(comp))
        if any(e[2] == v for e in succ[v]):
            return True
    return False


def _one_player_lasso_value(a: Automaton, w: Lasso, maximize: bool) -> Fraction:
    nodes, edges, succ = build_product_graph(a, w)
    vf = a.value_function
    weights = sorted({e[1] for e in edges})
    if not maximize:
        # min over runs of Val = -(max over runs of Val on negated weights), for
        # Inf/Sup/LimInf/LimSup/LimAvg; DSum handled below symmetrically.
        pass
    if vf.tag in (LIMINFAVG, LIMSUPAVG):
        if maximize:
            return _max_mean_cycle(nodes, edges)
        neg = [(u, -x, v) for (u, x, v) in edges]
        return -_max_mean_cycle(nodes, neg)
    if vf.tag == DSUM:
        from .games.dsum import solve_discounted_value
        from .games.arena import Arena, Edge
        owner = {v: ("E" if maximize else "A") for v in nodes}
        arena_edges = [Edge(u, v, weight=x, discount=vf.lam) for (u, x, v) in edges]
        arena = Arena(owner, arena_edges, (a.initial, 0))
        values, _, _ = solve_discounted_value(arena)
        return values[(a.initial, 0)]
    if maximize:
        if vf.tag == SUP:
            return max(e[1] for e in edges)
        if vf.tag == INF:
            best = None
            for t in sorted(weights, reverse=True):
                sub = [e for e in edges if e[1] >= t]
                if _reachable_from(sub, (a.initial, 0)):
                    best = t
                    break
            return best
        if vf.tag == LIMSUP:
            best = None
            for t in sorted(weights, reverse=True):
                if _cycle_with_good_edge(nodes, edges, lambda e: e[1] >= t):
                    best = t
                    break
            return best
        if vf.tag == LIMINF:
            best = None
            for t in sorted(weights, reverse=True):
                sub = [e for e in edges if e[1] >= t]
                sub_nodes = {e[0] for e in sub} | {e[2] for e in sub}
                if _reachable_cycle_exists(sub_nodes, sub):
                    best = t
                    break
            return best
    else:
        if vf.tag == INF:
            return min(e[1] for e in edges)
        if vf.tag == SUP:
            for t in sorted(weights):
                sub = [e for e in edges if e[1] <= t]
                if _reachable_from(sub, (a.initial, 0)):
                    return t
        if vf.tag == LIMINF:
            for t in sorted(weights):
                if _cycle_with_good_edge(nodes, edges, lambda e: e[1] <= t):
                    return t
        if vf.tag == LIMSUP:
            for t in sorted(weights):
                sub = [e for e in edges if e[1] <= t]
                sub_nodes = {e[0] for e in sub} | {e[2] for e in sub}
                if _reachable_cycle_exists(sub_nodes, sub):
                    return t
    raise ValuationError(f"ModeMismatch: {vf.tag} on lassos")


def _reachable_from(edges, start):
    """Does start reach (and continue along) an infinite path in the edge subgraph?

    True iff start reaches a cycle of the subgraph through subgraph edges.
    """
    succ = {}
    for e in edges:
        succ.setdefault(e[0], []).append(e)
    seen = set()
    stack = [start]
    reach = set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        reach.add(v)
        for e in succ.get(v, []):
            stack.append(e[2])
    sub_nodes = reach
    sub_edges = [e for e in edges if e[0] in sub_nodes and e[2] in sub_nodes]
    return _reachable_cycle_exists(sub_nodes, sub_edges)


def _cycle_with_good_edge(nodes, edges, good):
    """Is there a reachable cycle containing an edge satisfying `good`?

    Nodes/edges are already the reachable product graph.
    """
    succ = {v: [] for v in nodes}
    for e in edges:
        succ[e[0]].append(e)
    comp_of = {}
    for comp in _scc_decomposition(nodes, succ):
        for v in comp:
            comp_of[v] = id(comp)
        # an edge inside a nontrivial SCC lies on a cycle
    for e in edges:
        if not good(e):
            continue
        u, _, v = e
        if comp_of[u] == comp_of[v]:
            comp = [n for n in nodes if comp_of[n] == comp_of[u]]
            if len(comp) > 1 or u == v:
                return True
    return False


def automaton_value_lasso(a: Automaton, w: Lasso) -> Fraction:
    if a.mode != "infinite":
        raise ValuationError("ModeMismatch: automaton is not infinite-mode")
    cls = classify_automaton(a)
    if cls in (DETERMINISTIC, NONDETERMINISTIC):
        return _one_player_lasso_value(a, w, maximize=True)
    if cls == UNIVERSAL:
        return _one_player_lasso_value(a, w, maximize=False)
    from .games.product import lasso_product_arena, arena_value
    arena = lasso_product_arena(a, w)
    return arena_value(arena, a.value_function, "infinite")


def automaton_value(a: Automaton, w) -> Fraction:
    if isinstance(w, Lasso):
        return automaton_value_lasso(a, w)
    return automaton_value_finite(a, w)


# ---------------------------------------------------------------------------
# run enumeration (oracle support)


def enumerate_runs(a: Automaton, w, bound: int = 100000) -> list:
    """All runs with values. Finite words: exhaustive. Lassos: positional runs."""
    cls = classify_automaton(a)
    if cls not in (DETERMINISTIC, NONDETERMINISTIC):
        raise ValuationError("ClassError: run enumeration needs a nondeterministic automaton")
    results = []
    if isinstance(w, str):
        def rec(i, q, acc):
            if len(results) > bound:
                raise ValuationError("BoundExceeded")
            if i == len(w):
                results.append((tuple(acc), run_value(a.value_function, [t.weight for t in acc])))
                return
            for t in a.transitions_from(q, w[i]):
                acc.append(t)
                rec(i + 1, t.target, acc)
                acc.pop()
        rec(0, a.initial, [])
        return results

    length, nxt = lasso_positions(w)
    word = w.prefix + w.cycle

    def follow(choice, path, node):
        """Extend the positional run; branch on unassigned nodes."""
        if len(results) > bound:
            raise ValuationError("BoundExceeded")
        if node in choice:
            seen_at = [i for i, (n, _) in enumerate(path) if n == node]
            if seen_at:
                k = seen_at[0]
                prefix_w = [t.weight for _, t in path[:k]]
                cycle_w = [t.weight for _, t in path[k:]]
                run = tuple(t for _, t in path)
                results.append((run, run_value(a.value_function, (prefix_w, cycle_w))))
                return
            t = choice[node]
            follow(choice, path + [(node, t)], (t.target, nxt(node[1])))
            return
        q, i = node
        for t in a.transitions_from(q, word[i]):
            choice[node] = t
            follow(choice, path + [(node, t)], (t.target, nxt(i)))
            del choice[node]

    follow({}, [], (a.initial, 0))
    return results
