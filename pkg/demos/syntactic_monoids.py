"""Classify a few regular languages by their syntactic monoids.

A language is star-free exactly when its syntactic monoid is aperiodic, so
the Aperiodic verdict below separates (aa)* from the others.
"""
from finalg.catalog import identify
from finalg.equations import satisfies
from finalg.formats import format_algebra
from finalg.monads import Dfa, syntactic_monoid
from finalg.pseudovariety import preset


def dfa(states, alphabet, rows, initial, finals):
    trans = {}
    for row in rows:
        q, a, r = row.split()
        trans[(q, a)] = r
    return Dfa(states, alphabet, trans, initial, finals)


LANGUAGES = {
    "(aa)*": dfa(["e", "o"], ["a"], ["e a o", "o a e"], "e", {"e"}),
    "a*": dfa(["ok", "dead"], ["a", "b"], ["ok a ok", "ok b dead", "dead a dead", "dead b dead"], "ok", {"ok"}),
    "words containing ab": dfa(["0", "1", "2"], ["a", "b"],
                               ["0 a 1", "0 b 0", "1 a 1", "1 b 2", "2 a 2", "2 b 2"], "0", {"2"}),
    "words ending in a": dfa(["n", "y"], ["a", "b"], ["n a y", "n b n", "y a y", "y b n"], "n", {"y"}),
}

PRESETS = ["Aperiodic", "Groups", "Commutative", "Idempotent", "JTrivial"]


def main():
    for name, d in LANGUAGES.items():
        M, letters = syntactic_monoid(d)
        label = identify(M.algebra) or f"{M.size()} elements"
        print(f"== {name}: syntactic monoid {label}")
        print("   letters: " + ", ".join(f"{a} -> {m}" for a, m in letters.items()))
        verdicts = []
        for p in PRESETS:
            ok = all(satisfies(M, s) for s in preset(p).statements)
            verdicts.append(f"{p}={'yes' if ok else 'no'}")
        print("   " + " ".join(verdicts))
        if M.size() <= 3:
            print("   " + format_algebra(M.algebra).replace("\n", "\n   ").rstrip())
        print()


if __name__ == "__main__":
    main()
