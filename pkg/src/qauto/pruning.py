"""Pruning: cautious transitions, determinization-by-pruning witnesses,
threshold prunings, and equivalence checks between automata."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .model import (
    AVG, DSUM, INF, LIMINF, LIMINFAVG, LIMSUP, LIMSUPAVG, SUM, SUP,
    DETERMINISTIC, NONDETERMINISTIC,
    Automaton, Lasso, Leaf, ModelError, classify_automaton, condition_leaves,
)
from .rationals import format_rational
from .token_games import (
    DeciderError, decide_hd_dsum, decide_hd_inf_sup_finite,
    copycat_dsum_values, copycat_need, decide_hd_sum_avg_finite,
    inf_sup_safety_strategy,
)
from .valuation import automaton_value, automaton_value_finite, automaton_value_lasso
from .verdicts import BOUNDED, EXACT, Verdict, no, unknown, yes

MAX_ENUM = 3 ** 12
WORD_BOUND = 6
LASSO_BOUND = 5


class PruningError(ModelError):
    pass


# ---------------------------------------------------------------------------
# PruningChoice: map (state, letter) -> chosen Leaf


def choice_to_json(c):
    out = []
    for (q, sig) in sorted(c):
        leaf = c[(q, sig)]
        out.append({"state": q, "letter": sig,
                    "weight": format_rational(leaf.weight), "to": leaf.target})
    return out


def pruning_slots(a: Automaton):
    """All (state, letter) slots with their leaf options, sorted."""
    slots = []
    for q in sorted(a.states):
        for sig in sorted(a.alphabet):
            leaves = sorted(set(condition_leaves(a.delta[(q, sig)])),
                            key=lambda l: (l.target, l.weight))
            slots.append(((q, sig), leaves))
    return slots


def prune(a: Automaton, c) -> Automaton:
    delta = {}
    for q in a.states:
        for sig in a.alphabet:
            key = (q, sig)
            if key not in c:
                raise PruningError(f"InvalidChoice: no choice for {key}")
            leaf = c[key]
            if leaf not in condition_leaves(a.delta[key]):
                raise PruningError(f"InvalidChoice: {leaf} not an option at {key}")
            delta[key] = Leaf(leaf.weight, leaf.target)
    return Automaton(a.alphabet, a.states, a.initial, delta,
                     a.value_function, a.mode)


def enumerate_choices(a: Automaton, max_enum: int = MAX_ENUM, restrict=None):
    """Iterate PruningChoices in sorted order; restrict maps some slots to a
    subset of allowed leaves."""
    slots = pruning_slots(a)
    options = []
    for key, leaves in slots:
        if restrict and key in restrict:
            allowed = [l for l in leaves if (l.weight, l.target) in restrict[key]]
            leaves = allowed or leaves
        options.append(leaves)
    total = 1
    for opts in options:
        total *= len(opts)
        if total > max_enum:
            raise PruningError(f"SizeCapExceeded: {total} > {max_enum} prunings")
    keys = [key for key, _ in slots]
    for combo in itertools.product(*options):
        yield dict(zip(keys, combo))


# ---------------------------------------------------------------------------
# cautious transitions


def _step_profile(a: Automaton, prof, sig):
    """Advance a best-run-weight profile by one letter; returns the new
    profile with weights relative to its own maximum, and that maximum."""
    out = {}
    for q, w in prof:
        for t in a.transitions_from(q, sig):
            v = w + t.weight
            if t.target not in out or v > out[t.target]:
                out[t.target] = v
    m = max(out.values())
    return frozenset((q, w - m) for q, w in out.items()), m


def _gap_exceeds(a: Automaton, p: str, s: str, allowance,
                 horizon: int = WORD_BOUND) -> bool:
    """Is best(p, u) - best(s, u) > allowance for some word u of length
    <= horizon?

    Both sides evolve deterministically per word as best-run-weight
    profiles, so this is an exact max-gap search over profile pairs, one
    frontier per word length (only the largest gap reaching a pair of
    profiles can matter later)."""
    if 0 > allowance:
        return True  # the empty continuation already violates the bound
    start = (frozenset({(p, Fraction(0))}), frozenset({(s, Fraction(0))}))
    cur = {start: Fraction(0)}
    for _ in range(horizon):
        nxt = {}
        for (pa, pb), g in cur.items():
            for sig in sorted(a.alphabet):
                na, ma = _step_profile(a, pa, sig)
                nb, mb = _step_profile(a, pb, sig)
                g2 = g + ma - mb
                if g2 > allowance:
                    return True
                key = (na, nb)
                if key not in nxt or g2 > nxt[key]:
                    nxt[key] = g2
        cur = nxt
    return False


def cautious_transitions(a: Automaton):
    """Transitions Eve can take without foreclosing the best value.

    t = (q, sig, x, q') is cautious iff no continuation word u makes some
    sig-alternative (y, q'') strictly better: y + best(q'', u) must stay
    <= x + best(q', u). DSum decides this exactly through the copycat game,
    where Eve tracks Adam's revealed move with a discounted offset. For
    Sum/Avg (averages over equal lengths order like sums) a copycat-game
    win certifies the bound for all words; otherwise an exact profile
    search refutes it for words up to WORD_BOUND, which is where exact
    comparison of nondeterministic sum automata has to stop.
    """
    cls = classify_automaton(a)
    if cls not in (DETERMINISTIC, NONDETERMINISTIC):
        raise PruningError("ClassError: cautious_transitions needs a nondeterministic automaton")
    tag = a.value_function.tag
    if tag not in (SUM, AVG, DSUM):
        raise PruningError(f"UnsupportedValueFunction({tag}): cautiousness game "
                           "needs a suffix-monotonic value function")
    if tag == DSUM:
        values = copycat_dsum_values(a)
        lam = a.value_function.lam

        def loses(t, r):
            return t.weight - r.weight + lam * values[("l", t.target, r.target)] < 0
    else:
        # cheap screen first: winning the copycat game (Eve tracks Adam's
        # revealed move) is sufficient for cautiousness; only screened-out
        # pairs get the exact profile search, which exits early on true
        # violations
        from .games.energy import INF as EINF
        need = copycat_need(a)
        cache = {}

        def loses(t, r):
            offset = t.weight - r.weight
            n = need[("l", t.target, r.target)]
            if n is not EINF and offset >= n:
                return False
            key = (r.target, t.target, offset)
            if key not in cache:
                cache[key] = _gap_exceeds(a, r.target, t.target, offset)
            return cache[key]

    out = set()
    for q in a.states:
        for sig in a.alphabet:
            options = a.transitions_from(q, sig)
            for t in options:
                if not any(loses(t, r) for r in options):
                    out.add(t)
    return out


# ---------------------------------------------------------------------------
# equivalence checks


def _check_compatible(a: Automaton, b: Automaton):
    if (a.alphabet != b.alphabet or a.value_function != b.value_function
            or a.mode != b.mode):
        raise PruningError("IncompatibleAutomata")


def is_subautomaton(b: Automaton, a: Automaton) -> bool:
    """Every transition of b is a transition of a (same states/initial)."""
    if b.states != a.states or b.initial != a.initial:
        return False
    for key, cond in b.delta.items():
        allowed = set(condition_leaves(a.delta[key]))
        if not set(condition_leaves(cond)) <= allowed:
            return False
    return True


def _profile_value_map(a: Automaton):
    """Deterministic word->value machine for finite Inf/Sup: state = best
    aggregate per automaton state (max of min-so-far for Inf, max of
    max-so-far for Sup); dominance makes one entry per state enough."""
    agg = min if a.value_function.tag == INF else max

    def step(profile, sig):
        nxt = {}
        for q, x in profile:
            for t in a.transitions_from(q, sig):
                v = t.weight if x is None else agg(x, t.weight)
                if t.target not in nxt or v > nxt[t.target]:
                    nxt[t.target] = v
        return frozenset(nxt.items())

    initial = frozenset({(a.initial, None)})

    def value(profile):
        vals = [x for _, x in profile if x is not None]
        return max(vals) if vals else None

    return initial, step, value


def _inf_sup_finite_compare(a: Automaton, b: Automaton, predicate):
    """BFS over the product of profile machines; predicate(va, vb) must hold
    for every nonempty word. Returns a witness word or None. Exact."""
    ia, stepa, vala = _profile_value_map(a)
    ib, stepb, valb = _profile_value_map(b)
    start = (ia, ib)
    seen = {start}
    frontier = [(start, "")]
    letters = sorted(a.alphabet)
    while frontier:
        nxt = []
        for (pa, pb), word in frontier:
            for sig in letters:
                qa, qb = stepa(pa, sig), stepb(pb, sig)
                if not predicate(vala(qa), valb(qb)):
                    return word + sig
                if (qa, qb) not in seen:
                    seen.add((qa, qb))
                    nxt.append(((qa, qb), word + sig))
        frontier = nxt
    return None


def _product_graph_vs_det(a: Automaton, b: Automaton):
    """Edges ((qa,qb), sig, wa, wb, (qa2,qb2)) of a's runs tracked against
    deterministic b."""
    start = (a.initial, b.initial)
    nodes = {start}
    edges = []
    stack = [start]
    while stack:
        qa, qb = stack.pop()
        for sig in sorted(a.alphabet):
            tb = b.transitions_from(qb, sig)[0]
            for ta in a.transitions_from(qa, sig):
                dst = (ta.target, tb.target)
                edges.append(((qa, qb), sig, ta.weight, tb.weight, dst))
                if dst not in nodes:
                    nodes.add(dst)
                    stack.append(dst)
    return start, nodes, edges


def _find_lasso(start, edges, allowed, good):
    """Reachable lasso whose cycle uses only allowed edges and contains a
    good edge; returns a Lasso or None."""
    succ_all = {}
    for e in edges:
        succ_all.setdefault(e[0], []).append(e)
    reach = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in succ_all.get(v, []):
            if e[4] not in reach:
                reach.add(e[4])
                stack.append(e[4])

    sub = [e for e in edges if allowed(e) and e[0] in reach and e[4] in reach]
    succ_sub = {}
    for e in sub:
        succ_sub.setdefault(e[0], []).append(e)

    def path(edge_map, src, dst):
        if src == dst:
            return []
        seen = {src}
        queue = [(src, [])]
        while queue:
            v, acc = queue.pop(0)
            for e in edge_map.get(v, []):
                if e[4] == dst:
                    return acc + [e]
                if e[4] not in seen:
                    seen.add(e[4])
                    queue.append((e[4], acc + [e]))
        return None

    for e in sub:
        if not good(e):
            continue
        back = path(succ_sub, e[4], e[0])
        if back is None:
            continue
        prefix = path(succ_all, start, e[0])
        if prefix is None:
            continue
        cycle = [e] + back
        return Lasso("".join(x[1] for x in prefix), "".join(x[1] for x in cycle))
    return None


def _limsup_liminf_vs_det(a: Automaton, b: Automaton):
    """Witness word with a(w) > b(w) for b deterministic, or None. Exact;
    used when b <= a holds by construction (sub-automaton)."""
    start, nodes, edges = _product_graph_vs_det(a, b)
    thresholds = sorted(set(a.weights()) | set(b.weights()))
    tag = a.value_function.tag
    for t in thresholds:
        if tag == LIMSUP:
            # a-run hits >= t infinitely often while b stays < t on the cycle
            w = _find_lasso(start, edges,
                            allowed=lambda e: e[3] < t,
                            good=lambda e: e[2] >= t)
        else:
            # a-run stays >= t on the cycle while b dips < t on it
            w = _find_lasso(start, edges,
                            allowed=lambda e: e[2] >= t,
                            good=lambda e: e[3] < t)
        if w is not None:
            return w
    return None


def _all_words(alphabet, max_len):
    letters = sorted(alphabet)
    for n in range(1, max_len + 1):
        for tup in itertools.product(letters, repeat=n):
            yield "".join(tup)


def _all_lassos(alphabet, bound):
    letters = sorted(alphabet)
    for total in range(1, bound + 1):
        for cyc_len in range(1, total + 1):
            pre_len = total - cyc_len
            for pre in itertools.product(letters, repeat=pre_len):
                for cyc in itertools.product(letters, repeat=cyc_len):
                    yield Lasso("".join(pre), "".join(cyc))


def _bounded_compare(a: Automaton, b: Automaton,
                     predicate=lambda x, y: x == y,
                     word_bound: int = WORD_BOUND,
                     lasso_bound: int = LASSO_BOUND):
    """First word/lasso where predicate(a(w), b(w)) fails, or None."""
    if a.mode == "finite":
        for w in _all_words(a.alphabet, word_bound):
            if not predicate(automaton_value_finite(a, w),
                             automaton_value_finite(b, w)):
                return w
    else:
        for w in _all_lassos(a.alphabet, lasso_bound):
            if not predicate(automaton_value_lasso(a, w),
                             automaton_value_lasso(b, w)):
                return w
    return None


def _witness_json(w):
    if isinstance(w, Lasso):
        return {"prefix": w.prefix, "cycle": w.cycle}
    return w


def equivalence_check(a: Automaton, b: Automaton) -> Verdict:
    _check_compatible(a, b)
    if a.delta == b.delta and a.initial == b.initial and a.states == b.states:
        return yes(method="identical")
    tag = a.value_function.tag
    cls_a = classify_automaton(a)
    cls_b = classify_automaton(b)
    nondet = {DETERMINISTIC, NONDETERMINISTIC}
    if tag in (INF, SUP) and a.mode == "finite" and cls_a in nondet and cls_b in nondet:
        w = _inf_sup_finite_compare(a, b, lambda x, y: x == y)
        if w is None:
            return yes(method="profile-product")
        return no(method="profile-product", witness=w)
    if tag in (LIMSUP, LIMINF) and cls_a in nondet and cls_b in nondet:
        if cls_b == DETERMINISTIC and is_subautomaton(b, a):
            w = _limsup_liminf_vs_det(a, b)
            if w is None:
                return yes(method="product-lasso-search")
            return no(method="product-lasso-search", witness=_witness_json(w))
        if cls_a == DETERMINISTIC and is_subautomaton(a, b):
            w = _limsup_liminf_vs_det(b, a)
            if w is None:
                return yes(method="product-lasso-search")
            return no(method="product-lasso-search", witness=_witness_json(w))
    w = _bounded_compare(a, b)
    if w is not None:
        return no(method="bounded-sampling", witness=_witness_json(w))
    return unknown(method="bounded-sampling",
                   reason="no counterexample within the sampling bound",
                   soundness=BOUNDED)


# ---------------------------------------------------------------------------
# DBP witnesses


def _identity_choice(a: Automaton):
    return {key: leaves[0] for key, leaves in pruning_slots(a)}


def _cautious_choice(a: Automaton):
    cautious = cautious_transitions(a)
    choice = {}
    for key, leaves in pruning_slots(a):
        q, sig = key
        picks = sorted((l for l in leaves
                        if any(t.source == q and t.letter == sig
                               and t.weight == l.weight and t.target == l.target
                               for t in cautious)),
                       key=lambda l: (l.target, l.weight))
        if not picks:
            return None
        choice[key] = picks[0]
    return choice


def _enumerate_dbp(a: Automaton, max_enum, restrict=None):
    """Search the choice space with equivalence_check. Returns
    (yes-choice, exact-no?, saw-unknown?)."""
    all_refuted = True
    for c in enumerate_choices(a, max_enum=max_enum, restrict=restrict):
        v = equivalence_check(a, prune(a, c))
        if v.is_yes:
            return c, False, False
        if not v.is_no:
            all_refuted = False
    return None, all_refuted, not all_refuted


def extract_dbp_witness(a: Automaton, max_enum: int = MAX_ENUM) -> Verdict:
    cls = classify_automaton(a)
    tag = a.value_function.tag
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path",
                   witness=choice_to_json(_identity_choice(a)))
    if cls != NONDETERMINISTIC:
        # alternating: enumeration of Or/And resolutions with bounded checks
        for c in enumerate_choices(a, max_enum=max_enum):
            if _bounded_compare(a, prune(a, c)) is None:
                return yes(method="alternating-enumeration",
                           witness=choice_to_json(c), soundness=BOUNDED)
        return no(method="alternating-enumeration", soundness=BOUNDED)
    if tag in (SUM, AVG, DSUM):
        hd = decide_hd_dsum(a) if tag == DSUM else decide_hd_sum_avg_finite(a)
        if hd.is_no:
            return no(method=f"not-hd({hd.method})")
        choice = _cautious_choice(a)
        if choice is None:
            raise PruningError("InternalError: HD automaton with a slot "
                               "lacking cautious transitions")
        return yes(method="cautious-selection", witness=choice_to_json(choice))
    if tag in (INF, SUP) and a.mode == "finite":
        strategy = inf_sup_safety_strategy(a)
        if strategy is None:
            return no(method="not-hd(safety-G1)")
        c, _, _ = _enumerate_dbp(a, max_enum, restrict=strategy)
        if c is None:
            raise PruningError("InternalError: HD Inf/Sup automaton with no "
                               "equivalent strategy-restricted pruning")
        return yes(method="strategy-restricted-enumeration",
                   witness=choice_to_json(c))
    if tag in (LIMSUP, LIMINF):
        c, exact_no, _ = _enumerate_dbp(a, max_enum)
        if c is not None:
            return yes(method="pruning-enumeration", witness=choice_to_json(c))
        if exact_no:
            return no(method="pruning-enumeration")
        return unknown(method="pruning-enumeration",
                       reason="some prunings neither verified nor refuted",
                       soundness=BOUNDED)
    # LimAvg and remaining cases: every pruning refuted -> exact No
    c, exact_no, _ = _enumerate_dbp(a, max_enum)
    if c is not None:
        return yes(method="pruning-enumeration", witness=choice_to_json(c))
    if exact_no:
        return no(method="pruning-enumeration")
    return unknown(method="pruning-enumeration",
                   reason="some prunings survived bounded sampling",
                   soundness=BOUNDED)


def threshold_dbp_witness(a: Automaton, t, max_enum: int = MAX_ENUM) -> Verdict:
    t = Fraction(t)
    tag = a.value_function.tag
    cls = classify_automaton(a)
    if cls not in (DETERMINISTIC, NONDETERMINISTIC):
        raise PruningError("ClassError: threshold_dbp_witness needs a "
                           "nondeterministic automaton")
    if cls == DETERMINISTIC:
        return yes(method="deterministic-fast-path",
                   witness=choice_to_json(_identity_choice(a)))

    def agrees(b):
        if tag in (INF, SUP) and a.mode == "finite":
            w = _inf_sup_finite_compare(a, b,
                                        lambda x, y: (x >= t) == (y >= t))
            return (w is None), EXACT
        if tag in (LIMSUP, LIMINF):
            w = _limsup_liminf_threshold_vs_det(a, b, t)
            return (w is None), EXACT
        w = _bounded_compare(a, b, predicate=lambda x, y: (x >= t) == (y >= t))
        return (w is None), BOUNDED

    saw_bounded = False
    for c in enumerate_choices(a, max_enum=max_enum):
        ok, soundness = agrees(prune(a, c))
        if ok:
            return yes(method="threshold-pruning-enumeration",
                       witness=choice_to_json(c), soundness=soundness)
        if soundness == BOUNDED:
            saw_bounded = True
    if saw_bounded:
        return no(method="threshold-pruning-enumeration", soundness=BOUNDED)
    return no(method="threshold-pruning-enumeration")


def _limsup_liminf_threshold_vs_det(a: Automaton, b: Automaton, t):
    """Witness with a(w) >= t but b(w) < t; b deterministic sub-automaton of
    a, so the converse cannot happen."""
    start, nodes, edges = _product_graph_vs_det(a, b)
    if a.value_function.tag == LIMSUP:
        return _find_lasso(start, edges,
                           allowed=lambda e: e[3] < t,
                           good=lambda e: e[2] >= t)
    return _find_lasso(start, edges,
                       allowed=lambda e: e[2] >= t,
                       good=lambda e: e[3] < t)
