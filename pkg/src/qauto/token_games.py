"""Letter and token games: HD / GFG / threshold-HD deciders.

G_k: Adam picks letters; Eve moves one token along her run; Adam moves k
tokens along runs of his own. Eve wins iff her run's value matches the best
token's value. G_1 with the right objective decides HD for present-focused
value functions; G_2 characterises GFG for LimSup and Boolean Buechi/coBuechi.
"""

from __future__ import annotations

from fractions import Fraction

from .games.arena import ADAM, EVE, Arena, Edge, GameError
from .model import (
    AVG, DSUM, INF, LIMINF, LIMINFAVG, LIMSUP, LIMSUPAVG, SUM, SUP,
    DETERMINISTIC, NONDETERMINISTIC,
    Automaton, Lasso, ModelError, classify_automaton, normalize_weight_ranks,
    threshold_boolean_automaton,
)
from .letter_oracle import bounded_letter_game
from .valuation import automaton_value_finite, automaton_value_lasso
from .verdicts import (
    BOUNDED, EXACT, SOUND_REFUTATION, Verdict, no, unknown, yes,
)


class DeciderError(ModelError):
    pass


def _require_nondet(a: Automaton, op: str):
    cls = classify_automaton(a)
    if cls not in (DETERMINISTIC, NONDETERMINISTIC):
        raise DeciderError(f"ClassError: {op} needs a nondeterministic automaton")
    return cls


def _strategy_witness(strategy):
    return {repr(v): repr(e.dst) for v, e in strategy.items()}


# ---------------------------------------------------------------------------
# G_k arena


def build_Gk_arena(a: Automaton, k: int) -> Arena:
    """Token-game arena. Position kinds:

    ("l", qE, ps)                  Adam picks a letter
    ("e", sig, qE, ps)             Eve picks her transition
    ("a", sig, wE, qE', ps, done)  Adam moves his tokens one at a time;
                                   done = weights of tokens moved so far

    Eve's transition edge carries her weight; each token edge carries that
    token's weight. The letter edge carries the letter.
    """
    if k < 1:
        raise DeciderError("k must be >= 1")
    _require_nondet(a, "build_Gk_arena")
    owner = {}
    edges = []
    initial = ("l", a.initial, (a.initial,) * k)
    stack = [initial]
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        kind = pos[0]
        if kind == "l":
            _, qE, ps = pos
            owner[pos] = ADAM
            for sig in sorted(a.alphabet):
                nxt = ("e", sig, qE, ps)
                edges.append(Edge(pos, nxt, letter=sig))
                stack.append(nxt)
        elif kind == "e":
            _, sig, qE, ps = pos
            owner[pos] = EVE
            for t in a.transitions_from(qE, sig):
                nxt = ("a", sig, t.weight, t.target, ps, ())
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
        else:
            _, sig, wE, qE2, ps, done = pos
            owner[pos] = ADAM
            j = len(done)
            for t in a.transitions_from(ps[j], sig):
                if j + 1 == k:
                    moved = tuple(list(_done_targets(pos)) + [t.target])
                    nxt = ("l", qE2, moved)
                else:
                    nxt = ("a", sig, wE, qE2, ps, done + ((t.weight, t.target),))
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
    return Arena(owner, edges, initial)


def _done_targets(pos):
    return [tgt for (_, tgt) in pos[5]]


def _edge_kind(e):
    """('letter',) | ('eve', rank) | ('token', j, rank) for G_k edges."""
    if e.src[0] == "l":
        return ("letter",)
    if e.src[0] == "e":
        return ("eve", e.weight)
    return ("token", len(e.src[5]) + 1, e.weight)


def _round_ranks(e):
    """On the final token edge, (eve rank, [token ranks]) of the round."""
    wE = e.src[2]
    done = [w for (w, _) in e.src[5]]
    return wE, done + [e.weight]


# ---------------------------------------------------------------------------
# LimSup: G_2 parity encoding


def decide_gfg_limsup(a: Automaton, k: int = 2) -> Verdict:
    cls = _require_nondet(a, "decide_gfg_limsup")
    if a.value_function.tag != LIMSUP:
        raise DeciderError("ValueFunctionError: decide_gfg_limsup needs LimSup")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    ranked, _ = normalize_weight_ranks(a)
    arena = build_Gk_arena(ranked, k)

    def priority(e):
        kind = _edge_kind(e)
        if kind[0] == "letter":
            return 0
        if kind[0] == "eve":
            return 2 * int(kind[1])
        if e.dst[0] == "l":
            wE, ws = _round_ranks(e)
            return 2 * int(max(ws)) - 1
        return 0

    from .games.parity import solve_parity
    sol = solve_parity(arena, priority_of=priority)
    if arena.initial in sol["eve_region"]:
        return yes(method=f"G{k}-parity",
                   witness=_strategy_witness(sol["eve_strategy"]))
    return no(method=f"G{k}-parity",
              witness=_strategy_witness(sol["adam_strategy"]))


def buchi_decomposition(a: Automaton):
    """Boolean slices A_x of a rank-normalized LimSup automaton.

    A_x (for x in 2..v) is a Buechi-read LimSup automaton with weight 2 on
    transitions of rank >= x and 1 otherwise; L(A_x) = {w : A(w) >= x}.
    """
    if a.value_function.tag != LIMSUP:
        raise DeciderError("ValueFunctionError: buchi_decomposition needs LimSup")
    ranked, _ = normalize_weight_ranks(a)
    v = max((int(w) for w in ranked.weights()), default=1)
    return [threshold_boolean_automaton(ranked, Fraction(x)) for x in range(2, v + 1)]


# ---------------------------------------------------------------------------
# LimInf: G_2 as a Streett game (index appearance record)


def _g2_streett_solve(a: Automaton, k: int = 2):
    """Eve wins G_k(A) for rank-normalized LimInf: Streett pairs (x, j) with
    E-event = Eve plays rank < x, F-event = token j plays rank < x."""
    ranked, _ = normalize_weight_ranks(a)
    arena = build_Gk_arena(ranked, k)
    v = max((int(w) for w in ranked.weights()), default=1)
    pairs = [(x, j) for x in range(2, v + 1) for j in range(1, k + 1)]
    index = {p: i for i, p in enumerate(pairs)}

    def events(e):
        kind = _edge_kind(e)
        if kind[0] == "letter":
            return (), ()
        if kind[0] == "eve":
            rank = int(kind[1])
            fired = [index[(x, j)] for (x, j) in pairs if rank < x]
            return fired, ()
        _, j, w = kind
        rank = int(w)
        fired = [index[(x, jj)] for (x, jj) in pairs if jj == j and rank < x]
        return (), fired

    from .games.streett import solve_streett
    eve_wins, sol, iar = solve_streett(arena, len(pairs), events)
    return eve_wins, sol


# ---------------------------------------------------------------------------
# LimAvg: sound G_2 refutation via the min-token mean-payoff difference game


def _g2_meanpayoff_refuted(a: Automaton, k: int = 2):
    """Adam wins G_2 whenever the difference game value is negative.

    Per round the payoff is w_Eve - min_j w_token_j, which can only favour
    Eve against the true objective Val(pi_E) >= max_j Val(pi_j); so a
    negative value at the initial position soundly refutes Eve winning G_2.
    """
    arena = build_Gk_arena(a, k)

    def weight(e):
        if e.src[0] == "a" and e.dst[0] == "l":
            wE, ws = _round_ranks(e)
            return wE - min(ws)
        return Fraction(0)

    from .games.meanpayoff import mean_payoff_at_least
    region, _ = mean_payoff_at_least(arena, Fraction(0), weight_of=weight)
    return arena.initial not in region


def g2_semicheck(a: Automaton, k: int = 2) -> Verdict:
    """Adam winning G_2 refutes HD; Eve winning it proves nothing here."""
    cls = _require_nondet(a, "g2_semicheck")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    tag = a.value_function.tag
    if tag == LIMINF:
        eve_wins, sol = _g2_streett_solve(a, k)
        if not eve_wins:
            return no(method="G2-streett-IAR")
        return unknown(method="G2-streett-IAR",
                       reason="G2 characterization not established for this value function")
    if tag in (LIMINFAVG, LIMSUPAVG):
        if _g2_meanpayoff_refuted(a, k):
            return no(method="G2-meanpayoff-min-difference")
        return unknown(method="G2-meanpayoff-min-difference",
                       reason="G2 characterization not established for this value function")
    raise DeciderError(f"ValueFunctionError: g2_semicheck unsupported for {tag}")


# ---------------------------------------------------------------------------
# G_1 encodings: exact HD deciders


def decide_hd_inf_sup_finite(a: Automaton) -> Verdict:
    """Safety G_1 tracking both running aggregates; bad = Eve behind at a
    round boundary."""
    cls = _require_nondet(a, "decide_hd_inf_sup_finite")
    if a.value_function.tag not in (INF, SUP):
        raise DeciderError("ValueFunctionError: needs Inf or Sup")
    if a.mode != "finite":
        raise DeciderError("ModeError: needs finite mode")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    arena, bad, sol = _inf_sup_safety_parts(a)
    if arena.initial in sol["eve_region"]:
        return yes(method="safety-G1",
                   witness=_strategy_witness(sol["eve_strategy"]))
    return no(method="safety-G1",
              witness=_strategy_witness(sol["adam_strategy"]))


def _g1_round_arena(a: Automaton, all_pairs: bool = False):
    """G_1 skeleton over (qE, qA): letter, Eve transition, Adam transition.

    Eve's transition edge weight is +w, Adam's is -w, so accumulated weight
    along a play is Sum(Eve run) - Sum(Adam run); round boundaries are the
    "l" positions.
    """
    owner = {}
    edges = []
    initial = ("l", a.initial, a.initial)
    stack = [initial]
    if all_pairs:
        stack.extend(("l", q1, q2) for q1 in a.states for q2 in a.states)
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        kind = pos[0]
        if kind == "l":
            _, qE, qA = pos
            owner[pos] = ADAM
            for sig in sorted(a.alphabet):
                nxt = ("e", sig, qE, qA)
                edges.append(Edge(pos, nxt, letter=sig, weight=Fraction(0)))
                stack.append(nxt)
        elif kind == "e":
            _, sig, qE, qA = pos
            owner[pos] = EVE
            for t in a.transitions_from(qE, sig):
                nxt = ("a", sig, t.target, qA)
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
        else:
            _, sig, qE2, qA = pos
            owner[pos] = ADAM
            for t in a.transitions_from(qA, sig):
                nxt = ("l", qE2, t.target)
                edges.append(Edge(pos, nxt, weight=-t.weight))
                stack.append(nxt)
    return Arena(owner, edges, initial), initial


def _copycat_round_arena(a: Automaton):
    """G_1 skeleton with Adam moving first in each round: letter, Adam
    transition (-w), Eve transition (+w).

    Eve responding after Adam matches the copycat construction behind
    cautiousness: a transition only has to preserve the best achievable
    value, not to be playable blind. All state pairs are seeded so every
    (offset, pair) query is answerable from one solve.
    """
    owner = {}
    edges = []
    initial = ("l", a.initial, a.initial)
    stack = [("l", q1, q2) for q1 in a.states for q2 in a.states]
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        kind = pos[0]
        if kind == "l":
            _, qE, qA = pos
            owner[pos] = ADAM
            for sig in sorted(a.alphabet):
                nxt = ("x", sig, qE, qA)
                edges.append(Edge(pos, nxt, letter=sig, weight=Fraction(0)))
                stack.append(nxt)
        elif kind == "x":
            _, sig, qE, qA = pos
            owner[pos] = ADAM
            for t in a.transitions_from(qA, sig):
                nxt = ("e", sig, qE, t.target)
                edges.append(Edge(pos, nxt, weight=-t.weight))
                stack.append(nxt)
        else:
            _, sig, qE, qA2 = pos
            owner[pos] = EVE
            for t in a.transitions_from(qE, sig):
                nxt = ("l", t.target, qA2)
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
    return Arena(owner, edges, initial), initial


def copycat_need(a: Automaton):
    """Minimal offsets for the Adam-first copycat energy game, all pairs."""
    arena, _ = _copycat_round_arena(a)
    checkpoints = {p for p in arena.positions() if p[0] == "l"}
    from .games.energy import solve_energy
    need, _ = solve_energy(arena, checkpoints=checkpoints)
    return need


def copycat_dsum_values(a: Automaton):
    """Discounted-difference values of the Adam-first copycat game."""
    lam = a.value_function.lam
    arena, _ = _copycat_round_arena(a)
    owner = dict(arena.owner)
    edges = []
    for e in arena.edges:
        if e.src[0] == "e":
            edges.append(Edge(e.src, e.dst, weight=e.weight, discount=lam))
        else:
            edges.append(Edge(e.src, e.dst, letter=e.letter,
                              weight=e.weight, discount=Fraction(1)))
    if a.mode == "finite":
        owner["stop"] = ADAM
        edges.append(Edge("stop", "stop", weight=Fraction(0), discount=lam))
        for p in list(owner):
            if isinstance(p, tuple) and p[0] == "l":
                edges.append(Edge(p, "stop", weight=Fraction(0), discount=lam))
    arena2 = Arena(owner, edges, next(iter(owner)))
    from .games.dsum import solve_discounted_value
    values, _, _ = solve_discounted_value(arena2)
    return values


def inf_sup_safety_strategy(a: Automaton):
    """Eve's winning choices in the HD safety game, as a map
    (state, letter) -> set of (weight, target); None if Eve loses."""
    cls = _require_nondet(a, "inf_sup_safety_strategy")
    if cls == DETERMINISTIC:
        return {(q, sig): {(t.weight, t.target) for t in a.transitions_from(q, sig)}
                for q in a.states for sig in sorted(a.alphabet)}
    v = decide_hd_inf_sup_finite(a)
    if not v.is_yes:
        return None
    arena, bad, sol = _inf_sup_safety_parts(a)
    used = {}
    for pos, e in sol["eve_strategy"].items():
        if pos[0] != "e":
            continue
        sig, qE = pos[1], pos[2]
        used.setdefault((qE, sig), set()).add((e.weight, e.dst[2]))
    return used


def _inf_sup_safety_parts(a: Automaton):
    agg = min if a.value_function.tag == INF else max
    owner = {}
    edges = []
    initial = ("l", a.initial, a.initial, None, None)
    stack = [initial]
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        kind = pos[0]
        if kind == "l":
            _, qE, qA, xE, xA = pos
            owner[pos] = ADAM
            for sig in sorted(a.alphabet):
                nxt = ("e", sig, qE, qA, xE, xA)
                edges.append(Edge(pos, nxt, letter=sig))
                stack.append(nxt)
        elif kind == "e":
            _, sig, qE, qA, xE, xA = pos
            owner[pos] = EVE
            for t in a.transitions_from(qE, sig):
                nx = t.weight if xE is None else agg(xE, t.weight)
                nxt = ("a", sig, t.target, qA, nx, xA)
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
        else:
            _, sig, qE2, qA, xE, xA = pos
            owner[pos] = ADAM
            for t in a.transitions_from(qA, sig):
                nx = t.weight if xA is None else agg(xA, t.weight)
                nxt = ("l", qE2, t.target, xE, nx)
                edges.append(Edge(pos, nxt, weight=t.weight))
                stack.append(nxt)
    arena = Arena(owner, edges, initial)
    bad = {p for p in arena.positions()
           if p[0] == "l" and p[3] is not None and p[3] < p[4]}
    from .games.safety import solve_safety
    return arena, bad, solve_safety(arena, bad)


def decide_hd_sum_avg_finite(a: Automaton) -> Verdict:
    cls = _require_nondet(a, "decide_hd_sum_avg_finite")
    if a.value_function.tag not in (SUM, AVG):
        raise DeciderError("ValueFunctionError: needs Sum or Avg")
    if a.mode != "finite":
        raise DeciderError("ModeError: needs finite mode")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    need, strategy, initial = sum_avg_g1_need(a)
    from .games.energy import INF as EINF
    if need[initial] is not EINF and need[initial] <= 0:
        return yes(method="energy-G1", witness=_strategy_witness(strategy))
    return no(method="energy-G1")


def sum_avg_g1_need(a: Automaton, all_pairs: bool = False):
    """Minimal initial credits for the Sum/Avg G_1 energy game."""
    arena, initial = _g1_round_arena(a, all_pairs=all_pairs)
    checkpoints = {p for p in arena.positions() if p[0] == "l"}
    from .games.energy import solve_energy
    need, strategy = solve_energy(arena, checkpoints=checkpoints)
    return need, strategy, initial


def decide_hd_dsum(a: Automaton) -> Verdict:
    """Macro-collapse discounted G_1: one macro edge per round of weight
    w_Eve - w_Adam, discounted by lambda per round; Eve needs value >= 0.
    Finite mode adds an Adam stop option at round boundaries."""
    cls = _require_nondet(a, "decide_hd_dsum")
    if a.value_function.tag != DSUM:
        raise DeciderError("ValueFunctionError: needs DSum")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    values, eve_strat, initial = dsum_g1_values(a)
    if values[initial] >= 0:
        return yes(method="discounted-G1", witness=_strategy_witness(eve_strat))
    return no(method="discounted-G1")


def dsum_g1_values(a: Automaton, all_pairs: bool = False):
    """Optimal discounted-difference values of the macro G_1 arena."""
    lam = a.value_function.lam
    arena, initial = _g1_round_arena(a, all_pairs=all_pairs)
    owner = dict(arena.owner)
    edges = []
    for e in arena.edges:
        if e.src[0] == "a":
            edges.append(Edge(e.src, e.dst, weight=e.weight, discount=lam))
        else:
            edges.append(Edge(e.src, e.dst, letter=e.letter,
                              weight=e.weight, discount=Fraction(1)))
    if a.mode == "finite":
        owner["stop"] = ADAM
        edges.append(Edge("stop", "stop", weight=Fraction(0), discount=lam))
        for p in list(owner):
            if isinstance(p, tuple) and p[0] == "l":
                edges.append(Edge(p, "stop", weight=Fraction(0), discount=lam))
    arena2 = Arena(owner, edges, initial)
    from .games.dsum import solve_discounted_value
    values, eve_strat, _ = solve_discounted_value(arena2)
    return values, eve_strat, initial


# ---------------------------------------------------------------------------
# threshold HD


def _flagged_subset_game(a: Automaton, t: Fraction):
    """Finite-mode threshold letter game on Q x 2^(Q x flag), as safety.

    Sup: flag = run has seen weight >= t; A(w[0..i]) >= t iff some flagged
    reachable run. Inf: flag = run still clean (never saw weight < t).
    Eve is behind iff her flag is off while the subset has a flagged entry.
    """
    sup_like = a.value_function.tag == SUP

    def step(flag, w):
        good = w >= t
        if sup_like:
            return flag or good
        return flag and good

    init_flag = False if sup_like else True
    owner = {}
    edges = []
    initial = ("l", a.initial, init_flag, frozenset({(a.initial, init_flag)}))
    stack = [initial]
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        if pos[0] == "l":
            _, qE, fE, S = pos
            owner[pos] = ADAM
            for sig in sorted(a.alphabet):
                S2 = frozenset({(tt.target, step(f, tt.weight))
                                for (q, f) in S for tt in a.transitions_from(q, sig)})
                nxt = ("e", sig, qE, fE, S2)
                edges.append(Edge(pos, nxt, letter=sig))
                stack.append(nxt)
        else:
            _, sig, qE, fE, S2 = pos
            owner[pos] = EVE
            for tt in a.transitions_from(qE, sig):
                nxt = ("l", tt.target, step(fE, tt.weight), S2)
                edges.append(Edge(pos, nxt, weight=tt.weight))
                stack.append(nxt)
    arena = Arena(owner, edges, initial)
    bad = {p for p in arena.positions()
           if p[0] == "l" and not p[2] and any(f for (_, f) in p[3])}
    return arena, bad


def decide_threshold_hd(a: Automaton, t: Fraction) -> Verdict:
    cls = _require_nondet(a, "decide_threshold_hd")
    tag = a.value_function.tag
    if tag not in (INF, SUP, LIMINF, LIMSUP):
        return unknown(method="threshold-hd",
                       reason=f"UnsupportedValueFunction: {tag} has no exact threshold decider",
                       soundness=BOUNDED)
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    t = Fraction(t)
    if a.mode == "finite":
        arena, bad = _flagged_subset_game(a, t)
        from .games.safety import solve_safety
        sol = solve_safety(arena, bad)
        if arena.initial in sol["eve_region"]:
            return yes(method="threshold-subset-safety",
                       witness=_strategy_witness(sol["eve_strategy"]))
        return no(method="threshold-subset-safety",
                  witness=_strategy_witness(sol["adam_strategy"]))
    boolean = threshold_boolean_automaton(a, t)
    if boolean.reading in ("buchi",):
        return _relabel(decide_gfg_limsup(boolean.automaton), "threshold-G2-buchi")
    # coBuechi: LimInf-read Boolean automaton; G2 is exact for coBuechi
    eve_wins, _ = _g2_streett_solve(boolean.automaton)
    if eve_wins:
        return yes(method="threshold-G2-cobuchi")
    return no(method="threshold-G2-cobuchi")


def _relabel(v: Verdict, method: str) -> Verdict:
    return Verdict(v.tag, method, v.soundness, witness=v.witness, reason=v.reason)


# ---------------------------------------------------------------------------
# top-level deciders


def decide_gfg(a: Automaton) -> Verdict:
    cls = _require_nondet(a, "decide_gfg")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    tag = a.value_function.tag
    if tag in (INF, SUP, LIMINF, LIMSUP):
        for t in a.weights():
            v = decide_threshold_hd(a, t)
            if not v.is_yes:
                return no(method="all-weight-thresholds",
                          witness={"threshold": t, "sub": v.to_json()})
        return yes(method="all-weight-thresholds")
    if tag in (SUM, AVG, DSUM):
        hd = decide_hd(a)
        if hd.is_yes:
            return yes(method=f"hd-implies-gfg({hd.method})", witness=hd.witness)
        for t in sorted(set(a.weights()) | {Fraction(0)}):
            v = bounded_letter_game(a, side="eve", threshold=t)
            if v.is_no:
                return no(method="bounded-threshold-refutation",
                          witness={"threshold": t, "counter_play": v.witness},
                          soundness=SOUND_REFUTATION)
        return unknown(method="dense-thresholds",
                       reason="no finite sufficient threshold set for this value function")
    # LimAvg family
    v = g2_semicheck(a)
    if v.is_no:
        return no(method=v.method, soundness=v.soundness)
    return unknown(method=v.method,
                   reason="G2 characterization not established for this value function")


def decide_hd(a: Automaton) -> Verdict:
    cls = _require_nondet(a, "decide_hd")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path")
    tag = a.value_function.tag
    if tag in (SUM, AVG):
        return decide_hd_sum_avg_finite(a)
    if tag == DSUM:
        return decide_hd_dsum(a)
    if tag in (INF, SUP) and a.mode == "finite":
        return decide_hd_inf_sup_finite(a)
    if tag == LIMSUP:
        g2 = decide_gfg_limsup(a)
        if g2.is_no:
            return no(method="G2-refutation", witness=g2.witness)
    elif tag in (LIMINF, LIMINFAVG, LIMSUPAVG):
        g2 = g2_semicheck(a)
        if g2.is_no:
            return no(method=g2.method)
    oracle = bounded_letter_game(a, side="eve")
    if oracle.is_no:
        return no(method=oracle.method, witness=oracle.witness)
    return unknown(method="bounded-letter-game",
                   reason="no exact HD decider for this value function and mode")


# ---------------------------------------------------------------------------
# composition


def letter_game_value(g: Arena, a: Automaton):
    """Value of the Sigma-labelled game g with payoff w -> A(w).

    Finite mode: g must be a DAG with terminals. Infinite mode: every
    position except possibly the initial one must have a single successor,
    so plays are finitely many lassos.
    """
    if a.mode == "finite":
        memo = {}

        def val(pos, word):
            key = (pos, word)
            if key in memo:
                return memo[key]
            if not g.succ[pos]:
                if not word:
                    raise DeciderError("finite play with an empty word")
                result = automaton_value_finite(a, word)
            else:
                opt = max if g.owner[pos] == EVE else min
                result = opt(val(e.dst, word + e.letter) for e in g.succ[pos])
            memo[key] = result
            return result

        return val(g.initial, "")

    for p in g.positions():
        if p != g.initial and len(g.succ[p]) != 1:
            raise DeciderError("UnsolvableObjective: infinite-mode game value "
                               "needs a lasso-union arena")
    values = []
    for first in g.succ[g.initial] or [None]:
        word = []
        seen = {g.initial: 0}
        pos = g.initial
        e = first
        while True:
            if e is None:
                raise DeciderError("UnsolvableObjective: dead end")
            word.append(e.letter)
            pos = e.dst
            if pos in seen:
                k = seen[pos]
                values.append(Lasso("".join(word[:k]), "".join(word[k:])))
                break
            seen[pos] = len(word)
            e = g.succ[pos][0] if g.succ[pos] else None
    vals = [automaton_value_lasso(a, w) for w in values]
    opt = max if g.owner[g.initial] == EVE else min
    return opt(vals)


def composition_test(a: Automaton, g: Arena) -> dict:
    """Compare value(g) with value(g x a); exact equality is the GFG witness."""
    from .games.product import arena_value, product_game_automaton
    vg = letter_game_value(g, a)
    product = product_game_automaton(g, a)
    vp = arena_value(product, a.value_function, a.mode)
    return {"value_game": vg, "value_product": vp, "equal": vg == vp}
