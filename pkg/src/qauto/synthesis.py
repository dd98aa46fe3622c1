"""Quantitative synthesis over input/output alphabets.

Letters of an IOAutomaton are "input|output" pairs. Global synthesis solves
the synthesis game directly (the automaton must be a reliable monitor, hence
the threshold-HD / GFG preconditions); local synthesis reduces to history
determinism of the input projection and extracts the transducer from a
pruning witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .games.arena import ADAM, EVE, Arena, Edge, GameError
from .model import (
    AVG, DSUM, INF, LIMINF, LIMINFAVG, LIMSUP, LIMSUPAVG, SUM, SUP,
    DETERMINISTIC, NONDETERMINISTIC,
    And, Automaton, Leaf, ModelError, Or, classify_automaton, condition_leaves,
)
from .rationals import format_rational, parse_rational
from .verdicts import BOUNDED, EXACT, Verdict, no, unknown, yes


class SynthesisError(ModelError):
    pass


# ---------------------------------------------------------------------------
# IO automata and transducers


def split_letter(letter: str):
    if "|" not in letter:
        raise SynthesisError(f"AlphabetError: letter {letter!r} is not input|output")
    i, o = letter.split("|", 1)
    return i, o


def join_letter(i: str, o: str) -> str:
    return f"{i}|{o}"


@dataclass(frozen=True)
class IOAutomaton:
    automaton: Automaton
    inputs: tuple
    outputs: tuple


def io_automaton(a: Automaton) -> IOAutomaton:
    pairs = [split_letter(l) for l in a.alphabet]
    inputs = tuple(sorted({i for i, _ in pairs}))
    outputs = tuple(sorted({o for _, o in pairs}))
    if not outputs:
        raise SynthesisError("AlphabetError: empty output alphabet")
    expect = {join_letter(i, o) for i in inputs for o in outputs}
    if expect != set(a.alphabet):
        raise SynthesisError("AlphabetError: alphabet is not a full input x output product")
    return IOAutomaton(a, inputs, outputs)


@dataclass(frozen=True)
class Transducer:
    states: tuple
    initial: str
    delta: dict  # (state, input) -> (output, state)

    def run(self, inputs):
        """IO word produced on an input sequence, as a tuple of letters."""
        q = self.initial
        out = []
        for i in inputs:
            if (q, i) not in self.delta:
                raise SynthesisError(f"TransducerError: no move at ({q}, {i})")
            o, q = self.delta[(q, i)]
            out.append(join_letter(i, o))
        return tuple(out)

    def to_json(self):
        delta = {}
        for (q, i), (o, q2) in self.delta.items():
            delta.setdefault(q, {})[i] = {"output": o, "to": q2}
        return {"states": list(self.states), "initial": self.initial,
                "delta": delta}


def transducer_from_json(obj) -> Transducer:
    delta = {}
    for q, by_input in obj["delta"].items():
        for i, move in by_input.items():
            delta[(q, i)] = (move["output"], move["to"])
    return Transducer(tuple(obj["states"]), obj["initial"], delta)


# ---------------------------------------------------------------------------
# synthesis game


def build_synthesis_game(a_io: IOAutomaton) -> Arena:
    """Adam picks inputs, Eve picks outputs and resolves Or, Adam resolves
    And; weights come from the automaton's transitions."""
    from .games.product import expand_condition
    a = a_io.automaton
    discount = a.value_function.lam if a.value_function.tag == DSUM else None
    owner = {}
    edges = []
    initial = ("i", a.initial)
    stack = [initial]
    seen = set()
    while stack:
        pos = stack.pop()
        if pos in seen:
            continue
        seen.add(pos)
        _, q = pos
        owner[pos] = ADAM
        for i in a_io.inputs:
            opos = ("o", i, q)
            owner[opos] = EVE
            edges.append(Edge(pos, opos, letter=i))
            for o in a_io.outputs:
                cond = a.delta[(q, join_letter(i, o))]
                expand_condition(owner, edges, opos, cond,
                                 dest_of=lambda leaf: ("i", leaf.target),
                                 key=(q, i, o), discount=discount)
                for leaf in condition_leaves(cond):
                    stack.append(("i", leaf.target))
    return Arena(owner, edges, initial)


def _round_arena(a_io: IOAutomaton, summary_init, summary_step):
    """Nondeterministic synthesis arena with a per-run summary baked into
    round-boundary positions; Eve picks output and transition jointly."""
    a = a_io.automaton
    cls = classify_automaton(a)
    if cls not in (DETERMINISTIC, NONDETERMINISTIC):
        raise SynthesisError("ClassError: transducer synthesis needs a "
                             "nondeterministic automaton")
    owner = {}
    edges = []
    initial = ("i", a.initial, summary_init)
    stack = [initial]
    while stack:
        pos = stack.pop()
        if pos in owner:
            continue
        _, q, s = pos
        owner[pos] = ADAM
        for i in a_io.inputs:
            opos = ("o", i, q, s)
            owner[opos] = EVE
            edges.append(Edge(pos, opos, letter=i))
            for o in a_io.outputs:
                for leaf in condition_leaves(a.delta[(q, join_letter(i, o))]):
                    nxt = ("i", leaf.target, summary_step(s, leaf.weight))
                    edges.append(Edge(opos, nxt, letter=o, weight=leaf.weight))
                    stack.append(nxt)
    return Arena(owner, edges, initial)


def _extract_transducer(arena: Arena, strategy, inputs) -> Transducer:
    states = []
    delta = {}
    stack = [arena.initial]
    seen = {arena.initial}
    while stack:
        pos = stack.pop()
        states.append(repr(pos))
        for i in inputs:
            opos = next(e.dst for e in arena.succ[pos] if e.letter == i)
            if opos not in strategy:
                raise SynthesisError(f"UnsolvableObjective: no strategy at {opos}")
            move = strategy[opos]
            delta[(repr(pos), i)] = (move.letter, repr(move.dst))
            if move.dst not in seen:
                seen.add(move.dst)
                stack.append(move.dst)
    return Transducer(tuple(states), repr(arena.initial), delta)


def _check_precondition(a_io: IOAutomaton, verdict, assume: bool, what: str):
    if assume:
        return "assumed"
    if classify_automaton(a_io.automaton) == DETERMINISTIC:
        return "deterministic"
    if verdict is not None and verdict.is_yes:
        return verdict.method
    raise SynthesisError(f"PreconditionUnverified: automaton not known {what}")


def _threshold_solution(a_io: IOAutomaton, t: Fraction):
    """(realizable, arena, eve_strategy) for the t-threshold objective on
    Eve's run."""
    a = a_io.automaton
    tag = a.value_function.tag

    if tag in (INF, SUP):
        if tag == SUP:
            init = False
            step = lambda s, w: s or w >= t
        else:
            init = True
            step = lambda s, w: s and w >= t
        arena = _round_arena(a_io, (init, False), lambda s, w: (step(s[0], w), True))
        bad = {p for p in arena.positions()
               if p[0] == "i" and p[2][1] and not p[2][0]}
        from .games.safety import solve_safety
        sol = solve_safety(arena, bad)
        return arena.initial in sol["eve_region"], arena, sol["eve_strategy"]

    if tag in (SUM, AVG):
        shift = t if tag == AVG else Fraction(0)
        arena = _round_arena(a_io, False, lambda s, w: True)
        checkpoints = {p for p in arena.positions() if p[0] == "i" and p[2]}
        from .games.energy import INF as EINF, solve_energy
        need, strategy = solve_energy(
            arena, weight_of=lambda e: (e.weight - shift) if e.weight is not None else Fraction(0),
            checkpoints=checkpoints)
        from .games.energy import NEG
        n0 = need[arena.initial]
        bound = Fraction(0) if tag == AVG else -t
        ok = n0 is NEG or (n0 is not EINF and n0 <= bound)
        return ok, arena, strategy

    if tag == DSUM:
        lam = a.value_function.lam
        arena = _round_arena(a_io, None, lambda s, w: None)
        owner = dict(arena.owner)
        edges = []
        for e in arena.edges:
            d = lam if e.weight is not None else Fraction(1)
            edges.append(Edge(e.src, e.dst, letter=e.letter, weight=e.weight,
                              discount=d))
        if a.mode == "finite":
            owner["stop"] = ADAM
            edges.append(Edge("stop", "stop", weight=Fraction(0), discount=lam))
            for p in arena.positions():
                if p[0] == "i" and p != arena.initial:
                    edges.append(Edge(p, "stop", weight=Fraction(0), discount=lam))
        arena2 = Arena(owner, edges, arena.initial)
        from .games.dsum import solve_discounted_value
        values, eve_strat, _ = solve_discounted_value(
            arena2, weight_of=lambda e: Fraction(0) if e.weight is None else e.weight)
        return values[arena2.initial] >= t, arena2, eve_strat

    if tag in (LIMSUP, LIMINF):
        arena = _round_arena(a_io, None, lambda s, w: None)

        def priority(e):
            if e.weight is None:
                return 0
            if tag == LIMSUP:
                return 2 if e.weight >= t else 1
            return 2 if e.weight >= t else 3  # cobuechi: < t must stop
        from .games.parity import solve_parity
        sol = solve_parity(arena, priority_of=priority)
        return arena.initial in sol["eve_region"], arena, sol["eve_strategy"]

    if tag in (LIMINFAVG, LIMSUPAVG):
        arena = _round_arena(a_io, None, lambda s, w: None)
        from .games.meanpayoff import mean_payoff_at_least
        region, strategy = mean_payoff_at_least(
            arena, t,
            weight_of=lambda e: Fraction(0) if e.weight is None else e.weight,
            cost_of=lambda e: 1 if e.weight is not None else 0)
        return arena.initial in region, arena, strategy

    raise SynthesisError(f"UnsupportedValueFunction({tag})")


def global_threshold_synthesis(a_io: IOAutomaton, t, assume_gfg: bool = False):
    """Transducer T with value(a, I (x) T(I)) >= t on every input, or an
    Unrealizable/Unknown verdict."""
    t = parse_rational(t)
    from .token_games import decide_threshold_hd
    tag = a_io.automaton.value_function.tag
    pre = None
    if classify_automaton(a_io.automaton) != DETERMINISTIC and not assume_gfg:
        if tag in (INF, SUP, LIMINF, LIMSUP):
            pre = decide_threshold_hd(a_io.automaton, t)
    basis = _check_precondition(a_io, pre, assume_gfg, f"{t}-threshold history deterministic")
    ok, arena, strategy = _threshold_solution(a_io, t)
    if not ok:
        return no(method=f"synthesis-game({basis})"), None
    transducer = _extract_transducer(arena, strategy, a_io.inputs)
    return yes(method=f"synthesis-game({basis})"), transducer


def _avg_value_bisect(a_io: IOAutomaton):
    """Sup of realizable Avg thresholds by bisection over energy queries."""
    a = a_io.automaton
    weights = sorted(set(a.weights()))
    lo, hi = weights[0], weights[-1]
    if _threshold_solution(a_io, hi)[0]:
        return hi
    if not _threshold_solution(a_io, lo)[0]:
        return None
    denom = 1
    for w in weights:
        denom = denom * w.denominator
    positions = len(_round_arena(a_io, False, lambda s, w: True).positions())
    d = positions * denom
    gap = Fraction(1, 2 * d * d)
    while hi - lo > gap:
        mid = (lo + hi) / 2
        if _threshold_solution(a_io, mid)[0]:
            lo = mid
        else:
            hi = mid
    return ((lo + hi) / 2).limit_denominator(d)


def global_value_synthesis(a_io: IOAutomaton, assume_gfg: bool = False):
    """(best guaranteeable value, transducer or None). The transducer is None
    when the supremum is not attained by any finite-state strategy."""
    a = a_io.automaton
    tag = a.value_function.tag
    pre = None
    if classify_automaton(a) != DETERMINISTIC and not assume_gfg:
        from .token_games import decide_gfg
        pre = decide_gfg(a)
    basis = _check_precondition(a_io, pre, assume_gfg, "good-for-games")

    if tag in (INF, SUP, LIMSUP, LIMINF):
        best = None
        best_strategy = None
        for t in sorted(set(a.weights())):
            ok, arena, strategy = _threshold_solution(a_io, t)
            if ok:
                best, best_strategy = t, (arena, strategy)
        if best is None:
            return None, None
        arena, strategy = best_strategy
        return best, _extract_transducer(arena, strategy, a_io.inputs)

    if tag == SUM:
        arena = _round_arena(a_io, False, lambda s, w: True)
        checkpoints = {p for p in arena.positions() if p[0] == "i" and p[2]}
        from .games.energy import INF as EINF, NEG, solve_energy
        need, strategy = solve_energy(arena, checkpoints=checkpoints)
        n0 = need[arena.initial]
        if n0 is EINF:
            return None, None
        value = -(Fraction(0) if n0 is NEG else n0)
        return value, _extract_transducer(arena, strategy, a_io.inputs)

    if tag == AVG:
        value = _avg_value_bisect(a_io)
        if value is None:
            return None, None
        ok, arena, strategy = _threshold_solution(a_io, value)
        if ok:
            return value, _extract_transducer(arena, strategy, a_io.inputs)
        return value, None

    if tag == DSUM:
        ok, arena, strategy = _threshold_solution(a_io, Fraction(0))
        from .games.dsum import solve_discounted_value
        values, eve_strat, _ = solve_discounted_value(
            arena, weight_of=lambda e: Fraction(0) if e.weight is None else e.weight)
        return values[arena.initial], _extract_transducer(arena, eve_strat, a_io.inputs)

    if tag in (LIMINFAVG, LIMSUPAVG):
        arena = _round_arena(a_io, None, lambda s, w: None)
        from .games.meanpayoff import solve_mean_payoff_value
        values, strategy = solve_mean_payoff_value(
            arena,
            weight_of=lambda e: Fraction(0) if e.weight is None else e.weight,
            cost_of=lambda e: 1 if e.weight is not None else 0)
        value = values[arena.initial]
        ok, arena2, strat2 = _threshold_solution(a_io, value)
        if ok:
            return value, _extract_transducer(arena2, strat2, a_io.inputs)
        return value, None

    raise SynthesisError(f"UnsupportedValueFunction({tag})")


# ---------------------------------------------------------------------------
# projection and local synthesis


def project_to_input(a_io: IOAutomaton) -> Automaton:
    """Output choice becomes nondeterminism over the input alphabet."""
    a = a_io.automaton
    if classify_automaton(a) not in (DETERMINISTIC, NONDETERMINISTIC):
        raise SynthesisError("ClassError: projection needs a nondeterministic automaton")
    delta = {}
    for q in a.states:
        for i in a_io.inputs:
            leaves = []
            for o in a_io.outputs:
                leaves.extend(condition_leaves(a.delta[(q, join_letter(i, o))]))
            uniq = sorted(set(leaves), key=lambda l: (l.target, l.weight))
            delta[(q, i)] = uniq[0] if len(uniq) == 1 else Or(tuple(uniq))
    return Automaton(tuple(a_io.inputs), a.states, a.initial, delta,
                     a.value_function, a.mode)


def _output_for(a_io: IOAutomaton, state, i, leaf) -> str:
    for o in a_io.outputs:
        if any(l.weight == leaf.weight and l.target == leaf.target
               for l in condition_leaves(
                   a_io.automaton.delta[(state, join_letter(i, o))])):
            return o
    raise SynthesisError("InternalError: pruned leaf has no output")


def _transducer_from_choice(a_io: IOAutomaton, choice_json) -> Transducer:
    a = a_io.automaton
    chosen = {(row["state"], row["letter"]):
              Leaf(parse_rational(row["weight"]), row["to"])
              for row in choice_json}
    delta = {}
    for (q, i), leaf in chosen.items():
        o = _output_for(a_io, q, i, leaf)
        delta[(q, i)] = (o, leaf.target)
    return Transducer(tuple(sorted(a.states)), a.initial, delta)


def local_best_value_synthesis(a_io: IOAutomaton):
    """Transducer with value(a, I (x) T(I)) = best over all outputs, for
    every input; reduces to history determinism of the input projection."""
    from .pruning import extract_dbp_witness
    from .token_games import decide_hd
    proj = project_to_input(a_io)
    hd = decide_hd(proj)
    if hd.is_no:
        return no(method=f"projection-not-hd({hd.method})"), None
    if hd.is_unknown:
        return unknown(method=hd.method, reason=hd.reason or "projection HD unknown"), None
    witness = extract_dbp_witness(proj)
    if not witness.is_yes:
        return unknown(method=witness.method,
                       reason="projection HD but no pruning witness extracted"), None
    t = _transducer_from_choice(a_io, witness.witness)
    return yes(method=f"projection-pruning({witness.method})",
               soundness=witness.soundness), t


def local_threshold_synthesis(a_io: IOAutomaton, t):
    """Transducer achieving >= t whenever the best value does; reduces to
    threshold history determinism of the input projection."""
    from .pruning import threshold_dbp_witness
    from .token_games import decide_threshold_hd
    t = parse_rational(t)
    proj = project_to_input(a_io)
    hd = decide_threshold_hd(proj, t)
    if hd.is_no:
        return no(method=f"projection-not-threshold-hd({hd.method})"), None
    if hd.is_unknown:
        return unknown(method=hd.method, reason=hd.reason or "projection threshold-HD unknown"), None
    witness = threshold_dbp_witness(proj, t)
    if not witness.is_yes:
        return unknown(method=witness.method,
                       reason="threshold-HD but no threshold pruning extracted"), None
    tr = _transducer_from_choice(a_io, witness.witness)
    return yes(method=f"projection-threshold-pruning({witness.method})",
               soundness=witness.soundness), tr


# ---------------------------------------------------------------------------
# HD -> synthesis reduction


def hd_to_synthesis_instance(a: Automaton) -> IOAutomaton:
    """Deterministic IOAutomaton reading (letter, transition) pairs; valid
    transition outputs follow a, invalid ones fall into a strictly-worst
    sink, so the instance is best-value realizable iff a is HD."""
    if classify_automaton(a) not in (DETERMINISTIC, NONDETERMINISTIC):
        raise SynthesisError("ClassError: hd_to_synthesis_instance needs a "
                             "nondeterministic automaton")
    sink = "@sink"
    if sink in a.states:
        raise SynthesisError(f"ClassError: state name {sink} is reserved")
    worst = min(a.weights()) - 1
    transitions = a.transitions()
    tids = sorted({t.tid() for t in transitions})
    by_tid = {t.tid(): t for t in transitions}
    states = tuple(sorted(set(a.states) | {sink}))
    alphabet = tuple(sorted(join_letter(sig, tid)
                            for sig in a.alphabet for tid in tids))
    delta = {}
    for q in states:
        for sig in sorted(a.alphabet):
            for tid in tids:
                t = by_tid[tid]
                if q != sink and t.source == q and t.letter == sig:
                    leaf = Leaf(t.weight, t.target)
                else:
                    leaf = Leaf(worst, sink)
                delta[(q, join_letter(sig, tid))] = leaf
    inst = Automaton(alphabet, states, a.initial, delta, a.value_function, a.mode)
    return io_automaton(inst)
