"""Transducer synthesis from an input/output specification.

Letters of the form "i|o" pair an environment input with a system output.
Global synthesis extracts a transducer from the synthesis game; local
synthesis resolves the input projection's nondeterminism letter by letter.
CLI equivalent:

    qauto synthesize spec.json --mode global-value
"""

import json
from fractions import Fraction

from qauto.model import automaton_from_json
from qauto.synthesis import (
    global_threshold_synthesis, global_value_synthesis, io_automaton,
    local_best_value_synthesis,
)

SPEC = {
    "alphabet": ["req|grant", "req|skip", "idle|grant", "idle|skip"],
    "states": ["s"],
    "initial": "s",
    "value_function": {"type": "Inf"},
    "mode": "finite",
    "delta": {"s": {
        "req|grant": {"weight": "1", "to": "s"},
        "req|skip": {"weight": "0", "to": "s"},
        "idle|grant": {"weight": "0", "to": "s"},
        "idle|skip": {"weight": "1", "to": "s"},
    }},
}


def main():
    a_io = io_automaton(automaton_from_json(SPEC))
    print("inputs:", sorted(a_io.inputs), "outputs:", sorted(a_io.outputs))

    value, tr = global_value_synthesis(a_io)
    print("best guaranteed value:", value)
    print("transducer on req idle req:", tr.run(["req", "idle", "req"]))

    verdict, _ = global_threshold_synthesis(a_io, Fraction(2))
    print("threshold 2 realizable:", verdict.tag)

    verdict, tr = local_best_value_synthesis(a_io)
    print("local (per-input-optimal) synthesis:", verdict.tag)
    print("  on idle idle:", tr.run(["idle", "idle"]))
    print(json.dumps(tr.to_json(), indent=2)[:200], "...")


if __name__ == "__main__":
    main()
