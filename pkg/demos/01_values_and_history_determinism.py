"""Word values and history determinism on the bundled DSum automaton.

The fixture accepts the unary word a^omega; its discounted-sum value is 1.
Resolving the initial choice on the fly is possible for infinite words but
not under a finite-word threshold of 1, which the bounded letter-game
oracle refutes. CLI equivalents:

    qauto value fig-hdinf --word '{"prefix": "", "cycle": "a"}'
    qauto check fig-hdinf --property hd
    qauto determinize fig-hdinf
"""

from fractions import Fraction

from qauto.cli import load_fixture
from qauto.letter_oracle import bounded_letter_game
from qauto.model import Automaton, Lasso
from qauto.pruning import extract_dbp_witness
from qauto.token_games import decide_hd
from qauto.valuation import automaton_value_lasso


def main():
    a = load_fixture("fig-hdinf.json")
    v = automaton_value_lasso(a, Lasso("", "a"))
    print("value on a^omega:", v)

    hd = decide_hd(a)
    print("history-deterministic (infinite words):", hd.tag, "via", hd.method)

    finite = Automaton(a.alphabet, a.states, a.initial, a.delta,
                       a.value_function, "finite")
    oracle = bounded_letter_game(finite, side="eve", threshold=Fraction(1),
                                 depth=3)
    print("threshold-1 letter game on finite words:", oracle.tag,
          "witness:", oracle.witness)

    w = extract_dbp_witness(a)
    print("determinizable by pruning:", w.tag)
    for entry in w.witness:
        print("  keep", entry["state"], "--", entry["letter"], "/",
              entry["weight"], "->", entry["to"])


if __name__ == "__main__":
    main()
