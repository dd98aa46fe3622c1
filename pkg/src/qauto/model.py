"""Core data model: quantitative automata, transition conditions, words.

Weights are exact rationals throughout. Transition conditions are positive
Boolean formulas over (weight, target-state) pairs; parallel transitions are
kept as distinct Or-leaves.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Union

from .rationals import parse_rational, format_rational

# Value function tags
SUM = "Sum"
AVG = "Avg"
INF = "Inf"
SUP = "Sup"
DSUM = "DSum"
LIMINF = "LimInf"
LIMSUP = "LimSup"
LIMINFAVG = "LimInfAvg"
LIMSUPAVG = "LimSupAvg"

ALL_VALUE_FUNCTIONS = (SUM, AVG, INF, SUP, DSUM, LIMINF, LIMSUP, LIMINFAVG, LIMSUPAVG)
FINITE_ONLY = (SUM, AVG)
INFINITE_ONLY = (LIMINF, LIMSUP, LIMINFAVG, LIMSUPAVG)


class ModelError(Exception):
    pass


@dataclass(frozen=True)
class ValueFunctionSpec:
    tag: str
    lam: Optional[Fraction] = None  # discount factor, DSum only

    def __post_init__(self):
        if self.tag not in ALL_VALUE_FUNCTIONS:
            raise ModelError(f"unknown value function {self.tag!r}")
        if self.tag == DSUM:
            if self.lam is None or not (0 < self.lam < 1):
                raise ModelError("BadLambda: DSum needs lambda strictly between 0 and 1")
        elif self.lam is not None:
            raise ModelError("lambda only allowed for DSum")


@dataclass(frozen=True)
class Leaf:
    weight: Fraction
    target: str


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ModelError("Or with no children")


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ModelError("And with no children")


Condition = Union[Leaf, Or, And]


def condition_leaves(cond: Condition) -> Iterator[Leaf]:
    if isinstance(cond, Leaf):
        yield cond
    else:
        for c in cond.children:
            yield from condition_leaves(c)


@dataclass(frozen=True)
class Transition:
    """A single (source, letter, weight, target) edge of the automaton."""

    source: str
    letter: str
    weight: Fraction
    target: str

    def tid(self) -> str:
        return f"{self.source}>{self.letter}:{format_rational(self.weight)}>{self.target}"


@dataclass(frozen=True)
class Lasso:
    prefix: str  # possibly empty
    cycle: str   # nonempty

    def __post_init__(self):
        if not self.cycle:
            raise ModelError("lasso cycle must be nonempty")

    def letter_at(self, i: int) -> str:
        word = self.prefix + self.cycle
        if i < len(self.prefix):
            return word[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]


Word = Union[str, Lasso]


@dataclass
class Automaton:
    alphabet: tuple
    states: tuple
    initial: str
    delta: dict  # (state, letter) -> Condition
    value_function: ValueFunctionSpec
    mode: str  # "finite" | "infinite"

    def condition(self, state: str, letter: str) -> Condition:
        return self.delta[(state, letter)]

    def transitions_from(self, state: str, letter: str) -> list:
        return [Transition(state, letter, leaf.weight, leaf.target)
                for leaf in condition_leaves(self.delta[(state, letter)])]

    def transitions(self) -> list:
        out = []
        for q in self.states:
            for a in self.alphabet:
                out.extend(self.transitions_from(q, a))
        return out

    def weights(self) -> list:
        """Sorted distinct weights."""
        return sorted({t.weight for t in self.transitions()})

    def with_initial(self, state: str) -> "Automaton":
        return replace(self, initial=state)

    def with_mode(self, mode: str) -> "Automaton":
        return replace(self, mode=mode)


# ---------------------------------------------------------------------------
# validation / classification


def validate_automaton(a: Automaton) -> list:
    """Return a list of error strings; empty means the automaton is valid."""
    errors = []
    if not a.alphabet:
        errors.append("EmptyAlphabet")
    if not a.states:
        errors.append("EmptyStateSet")
    if a.initial not in a.states:
        errors.append(f"UnknownInitial({a.initial})")
    if len(set(a.states)) != len(a.states):
        errors.append("DuplicateStates")
    for q in a.states:
        for sig in a.alphabet:
            cond = a.delta.get((q, sig))
            if cond is None:
                errors.append(f"MissingTransition({q},{sig})")
                continue
            for leaf in condition_leaves(cond):
                if leaf.target not in a.states:
                    errors.append(f"UnknownTarget({q},{sig}->{leaf.target})")
    for key in a.delta:
        q, sig = key
        if q not in a.states or sig not in a.alphabet:
            errors.append(f"UnknownDeltaKey({q},{sig})")
    vf = a.value_function
    if vf.tag == DSUM and (vf.lam is None or not (0 < vf.lam < 1)):
        errors.append("BadLambda")
    if a.mode not in ("finite", "infinite"):
        errors.append(f"BadMode({a.mode})")
    else:
        if vf.tag in FINITE_ONLY and a.mode != "finite":
            errors.append(f"ModeMismatch({vf.tag},{a.mode})")
        if vf.tag in INFINITE_ONLY and a.mode != "infinite":
            errors.append(f"ModeMismatch({vf.tag},{a.mode})")
    return errors


def check_valid(a: Automaton):
    errors = validate_automaton(a)
    if errors:
        raise ModelError("; ".join(errors))


DETERMINISTIC = "deterministic"
NONDETERMINISTIC = "nondeterministic"
UNIVERSAL = "universal"
ALTERNATING = "alternating"


def classify_automaton(a: Automaton) -> str:
    has_or = False
    has_and = False

    def walk(cond):
        nonlocal has_or, has_and
        if isinstance(cond, Or):
            has_or = True
            for c in cond.children:
                walk(c)
        elif isinstance(cond, And):
            has_and = True
            for c in cond.children:
                walk(c)

    for cond in a.delta.values():
        walk(cond)
    if has_or and has_and:
        return ALTERNATING
    if has_or:
        return NONDETERMINISTIC
    if has_and:
        return UNIVERSAL
    return DETERMINISTIC


# ---------------------------------------------------------------------------
# threshold Boolean automata


@dataclass(frozen=True)
class BooleanThresholdAutomaton:
    """{0,1}-weighted automaton whose value >= 1 encodes A(w) >= t."""

    automaton: Automaton
    reading: str  # "nfa" | "safety" | "buchi" | "cobuchi"
    threshold: Fraction


def threshold_boolean_automaton(a: Automaton, t) -> BooleanThresholdAutomaton:
    t = parse_rational(t)
    vf = a.value_function.tag
    if vf not in (INF, SUP, LIMINF, LIMSUP):
        raise ModelError(f"UnsupportedValueFunction({vf})")
    if vf in (SUP, LIMSUP):
        def mark(w):
            return Fraction(1) if w >= t else Fraction(0)
        reading = "nfa" if vf == SUP else "buchi"
    else:
        def mark(w):
            return Fraction(0) if w < t else Fraction(1)
        reading = "safety" if vf == INF else "cobuchi"

    def remap(cond):
        if isinstance(cond, Leaf):
            return Leaf(mark(cond.weight), cond.target)
        if isinstance(cond, Or):
            return Or(tuple(remap(c) for c in cond.children))
        return And(tuple(remap(c) for c in cond.children))

    delta = {k: remap(c) for k, c in a.delta.items()}
    marked = Automaton(a.alphabet, a.states, a.initial, delta, a.value_function, a.mode)
    return BooleanThresholdAutomaton(marked, reading, t)


def normalize_weight_ranks(a: Automaton):
    """Replace weights by their rank 1..v; returns (automaton, rank map)."""
    if a.value_function.tag not in (LIMINF, LIMSUP):
        raise ModelError(f"UnsupportedValueFunction({a.value_function.tag})")
    ranks = {w: Fraction(i + 1) for i, w in enumerate(a.weights())}

    def remap(cond):
        if isinstance(cond, Leaf):
            return Leaf(ranks[cond.weight], cond.target)
        if isinstance(cond, Or):
            return Or(tuple(remap(c) for c in cond.children))
        return And(tuple(remap(c) for c in cond.children))

    delta = {k: remap(c) for k, c in a.delta.items()}
    return Automaton(a.alphabet, a.states, a.initial, delta, a.value_function, a.mode), ranks


def value_function_traits(vf: ValueFunctionSpec, mode: str) -> dict:
    if vf.tag in FINITE_ONLY and mode != "finite":
        raise ModelError("ModeMismatch")
    if vf.tag in INFINITE_ONLY and mode != "infinite":
        raise ModelError("ModeMismatch")
    if mode == "finite":
        present = "yes"
    elif vf.tag == DSUM:
        present = "yes"
    else:
        present = "no"
    suffix = vf.tag not in (INF, SUP)
    return {"present_focused": present, "suffix_monotonic": suffix}


# ---------------------------------------------------------------------------
# JSON serialization


def _condition_from_json(obj, where):
    if isinstance(obj, list):
        if not obj:
            raise ModelError(f"ParseError: empty condition list at {where}")
        children = tuple(_condition_from_json(c, where) for c in obj)
        return children[0] if len(children) == 1 else Or(children)
    if not isinstance(obj, dict):
        raise ModelError(f"ParseError: bad condition at {where}")
    keys = set(obj)
    if keys == {"to", "weight"}:
        return Leaf(parse_rational(obj["weight"]), obj["to"])
    if keys == {"or"}:
        return Or(tuple(_condition_from_json(c, where) for c in obj["or"]))
    if keys == {"and"}:
        return And(tuple(_condition_from_json(c, where) for c in obj["and"]))
    raise ModelError(f"ParseError: unknown condition keys {sorted(keys)} at {where}")


def _condition_to_json(cond):
    if isinstance(cond, Leaf):
        return {"to": cond.target, "weight": format_rational(cond.weight)}
    if isinstance(cond, Or):
        return {"or": [_condition_to_json(c) for c in cond.children]}
    return {"and": [_condition_to_json(c) for c in cond.children]}


AUTOMATON_KEYS = {"alphabet", "states", "initial", "value_function", "mode", "delta"}


def automaton_from_json(obj: dict) -> Automaton:
    if not isinstance(obj, dict):
        raise ModelError("ParseError: automaton must be an object")
    unknown = set(obj) - AUTOMATON_KEYS
    if unknown:
        raise ModelError(f"ParseError: unknown keys {sorted(unknown)}")
    missing = AUTOMATON_KEYS - set(obj)
    if missing:
        raise ModelError(f"ParseError: missing keys {sorted(missing)}")
    vf_obj = obj["value_function"]
    unknown = set(vf_obj) - {"type", "lambda"}
    if unknown:
        raise ModelError(f"ParseError: unknown value_function keys {sorted(unknown)}")
    lam = parse_rational(vf_obj["lambda"]) if "lambda" in vf_obj else None
    vf = ValueFunctionSpec(vf_obj["type"], lam)
    alphabet = tuple(obj["alphabet"])
    states = tuple(obj["states"])
    delta = {}
    for q, per_letter in obj["delta"].items():
        for sig, cond in per_letter.items():
            delta[(q, sig)] = _condition_from_json(cond, f"delta[{q}][{sig}]")
    a = Automaton(alphabet, states, obj["initial"], delta, vf, obj["mode"])
    check_valid(a)
    return a


def automaton_to_json(a: Automaton) -> dict:
    vf = {"type": a.value_function.tag}
    if a.value_function.lam is not None:
        vf["lambda"] = format_rational(a.value_function.lam)
    delta = {}
    for q in a.states:
        per_letter = {}
        for sig in a.alphabet:
            per_letter[sig] = _condition_to_json(a.delta[(q, sig)])
        delta[q] = per_letter
    return {
        "alphabet": list(a.alphabet),
        "states": list(a.states),
        "initial": a.initial,
        "value_function": vf,
        "mode": a.mode,
        "delta": delta,
    }


def word_from_json(obj) -> Word:
    if isinstance(obj, str):
        return obj
    if isinstance(obj, dict):
        unknown = set(obj) - {"prefix", "cycle"}
        if unknown:
            raise ModelError(f"ParseError: unknown word keys {sorted(unknown)}")
        return Lasso(obj.get("prefix", ""), obj["cycle"])
    raise ModelError("ParseError: word must be a string or {prefix, cycle}")


def word_to_json(w: Word):
    if isinstance(w, str):
        return w
    return {"prefix": w.prefix, "cycle": w.cycle}
