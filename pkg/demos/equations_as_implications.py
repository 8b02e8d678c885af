"""Equations whose variables range over a finite monoid, rewritten as
implications over free variables.

Over Z2 = {1, g}, the equation g = 1 says that every morphism Z2 -> A
sends g to 1.  The full-table translation quantifies over both elements and
assumes the multiplication table of Z2; the Cayley translation keeps only
the generator g and assumes g g = 1.
"""
from finalg.catalog import c3, u1, z2, z3
from finalg.equations import AlgebraVars, equation_to_implication, format_statement, parse_statement, satisfies


def main():
    e = parse_statement("eq: g = {1}", AlgebraVars(z2()))
    full = equation_to_implication(e)
    cayley = equation_to_implication(e, generators=["g"])
    print("equation :", format_statement(e))
    print("full     :", format_statement(full))
    print("cayley   :", format_statement(cayley))
    print()
    for name, A in (("Z2", z2()), ("C3", c3()), ("U1", u1()), ("Z3", z3())):
        row = [bool(satisfies(A, s)) for s in (e, full, cayley)]
        print(f"{name}: equation={row[0]} full={row[1]} cayley={row[2]}")


if __name__ == "__main__":
    main()
