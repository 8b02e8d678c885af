"""Where closure under quotients breaks, and what survives.

Monoids whose only unit is 1 are closed under products and submonoids but
not under quotients: C3 = {1, a, a2} has trivial units, while its quotient
Z2 is a group.  The quotient map C3 ->> Z2 has no monoid section, so the
class is still closed under split quotients.  Discrete posets behave the
same way over the ordered identity monad.
"""
from finalg.algebra import is_split_surjection
from finalg.catalog import identify
from finalg.equations import format_statement
from finalg.pseudovariety import Preset, check_closure, preset


def show(name, bound=3):
    info = preset(name)
    report = check_closure(Preset(name), bound)
    stmts = "; ".join(format_statement(s, info.spec.signature.product or "mul") for s in info.statements)
    print(f"== {name} over {info.spec.name}: {stmts}")
    print(f"   {len(report.members)} members of size <= {bound}")
    for kind, r in report.results.items():
        print(f"   {kind:<16} {'closed' if r.passed else 'NOT closed'} ({r.checked} constructions)")
        cx = r.counterexample
        if cx is None:
            continue
        src = " x ".join(identify(a) or f"<{a.size()}>" for a in cx.sources)
        print(f"      witness: {src} -> {identify(cx.result) or cx.result.elements()}")
        for m in cx.maps:
            shown = ", ".join(f"{a}->{b}" for mp in m.as_dict().values() for a, b in mp.items())
            print(f"      map: {shown}")
            if kind == "quotients":
                section = is_split_surjection(m, info.spec.base_signature)
                print(f"      section in the base category: {'none' if section is None else section}")
        print(f"      fails {format_statement(cx.statement)} at {cx.witness}")
    print()


if __name__ == "__main__":
    show("TrivialUnits")
    show("DiscretePosets")
    show("Aperiodic")
