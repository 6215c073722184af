"""Walk through the graded ordering of operator monomials.

Every moment matrix in this package is indexed by monomials in the mode
operators: products like a1, ad1 a2, or a2^2.  The matrix rows are arranged
by a graded order — lower total operator count first, ties broken
antilexicographically — so position numbers are stable facts about a monomial
that can be quoted across notebooks, files, and command-line calls.

Run:  python demos/01_monomial_ordering.py
"""

from ptmoments import (
    MonomialIndex,
    count_up_to_weight,
    monomial_at,
    nth_multiindex,
    position_of,
)


def main():
    print("The first twelve monomials for two modes, in matrix order:")
    for position in range(1, 13):
        m = monomial_at(2, position)
        print(f"  {position:3d}  {str(m):10s}  packed exponents {m.pack()}")

    print()
    print("Positions of the pairwise products a_i a_j for four modes —")
    print("these are the entries a pair-minor search keeps returning to:")
    for i in range(1, 5):
        for j in range(i + 1, 5):
            m = MonomialIndex.parse(f"a{i} a{j}", 4)
            print(f"  a{i} a{j} sits at position {position_of(m)}")

    print()
    print("The enumeration also works on raw exponent tuples.  For two")
    print("variables the n-th tuple has a closed form; the general walk")
    print("reproduces it exactly:")
    for n in (1, 2, 5, 13, 100, 500):
        print(f"  entry {n:3d} -> {nth_multiindex(2, n)}")

    print()
    for order in (1, 2, 3):
        size = count_up_to_weight(8, order)
        print(f"Four modes, all monomials of weight <= {order}: {size} positions")

    print()
    print("Parsing and printing are inverse to each other:")
    text = "ad3^2 a1 a4"
    m = MonomialIndex.parse(text, 4)
    print(f"  parse({text!r}) -> pairs {m.pairs} -> str {str(m)!r}")
    print(f"  conjugate monomial: {str(m.conjugate())!r}")


if __name__ == "__main__":
    main()
