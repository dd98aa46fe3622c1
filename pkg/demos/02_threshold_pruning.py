"""Threshold history determinism without plain history determinism.

The Sup fixture cannot resolve its initial choice for exact values (the
two branches trade off on later letters), yet for any fixed threshold one
branch suffices; the threshold pruning witness names it. CLI equivalents:

    qauto check fig-thdA --property hd
    qauto check fig-thdA --property threshold-hd --t 1
    qauto check fig-thdA --property threshold-dbp --t 1
"""

from fractions import Fraction

from qauto.cli import load_fixture
from qauto.pruning import extract_dbp_witness, threshold_dbp_witness
from qauto.token_games import decide_gfg, decide_threshold_hd, decide_hd


def main():
    a = load_fixture("fig-thdA.json")
    print("history-deterministic:", decide_hd(a).tag)
    print("determinizable by pruning:", extract_dbp_witness(a).tag)
    print("good for games:", decide_gfg(a).tag)

    for t in (Fraction(1), Fraction(2)):
        v = decide_threshold_hd(a, t)
        w = threshold_dbp_witness(a, t)
        picks = {(e["state"], e["letter"]): e["to"] for e in w.witness}
        print(f"threshold {t}: HD {v.tag}; pruning keeps",
              picks[("q0", "a")], "from q0")

    b = load_fixture("fig-thdB.json")
    print("LimSup fixture, thresholds",
          [str(t) for t in b.weights()], "all HD:",
          all(decide_threshold_hd(b, t).is_yes for t in b.weights()))


if __name__ == "__main__":
    main()
