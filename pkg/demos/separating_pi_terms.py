"""Search for the smallest finite monoid telling two pi-terms apart.

Pairs that stay unseparated up to the bound are candidates for profinite
identities; pairs that are separated come with the witness algebra and the
assignment of the variables.
"""
import time

from finalg.catalog import identify
from finalg.monads import monad
from finalg.separation import separate

PAIRS = [
    ("x^pi", "x^pi x", 4),
    ("x^pi x^pi", "x^pi", 5),
    ("(x y)^pi x", "x (y x)^pi", 4),
    ("x y", "y x", 4),
    ("x^pi", "1", 4),
    ("(x y)^pi", "(y x)^pi", 4),
    ("(x^pi y^pi)^pi", "(y^pi x^pi)^pi", 3),
]


def main():
    word = monad("Set", "Word")
    for u, v, n in PAIRS:
        t = time.perf_counter()
        s = separate(u, v, word, n)
        dt = time.perf_counter() - t
        if s is None:
            print(f"{u:>16}  vs  {v:<16} equal on all monoids of size <= {n}  ({dt:.2f}s)")
        else:
            name = identify(s.algebra.algebra) or f"a monoid of size {s.algebra.size()}"
            at = ", ".join(f"{k}={x}" for k, x in s.assignment.items())
            print(f"{u:>16}  vs  {v:<16} separated by {name} at {at}: {s.left} != {s.right}  ({dt:.2f}s)")


if __name__ == "__main__":
    main()
