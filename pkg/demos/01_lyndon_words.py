"""Lyndon words: enumeration, counting, and standard factorization.

A nonempty word is Lyndon when it is strictly smaller, alphabetically,
than every proper suffix of itself; equivalently it is strictly minimal
among its rotations.  Lyndon words of length n over m letters are
counted by the necklace numbers, and every Lyndon word of length >= 2
splits canonically at its least proper suffix.
"""

from lynmag import (
    Alphabet,
    is_lyndon,
    lyndon_words,
    necklace,
    standard_factorization,
)

XY = Alphabet(("x", "y"))
XYZ = Alphabet(("x", "y", "z"))

print("Lyndon words over {x, y} up to length 4, in length-then-alphabet order:")
print(" ", " ".join(str(w) for w in lyndon_words(XY, 4)))

print("\n(xy) is Lyndon, (yx) is not:")
print("  is_lyndon(xy) =", is_lyndon(XY.word("xy")))
print("  is_lyndon(yx) =", is_lyndon(XY.word("yx")))

print("\nCounts match the necklace numbers (1/n) sum mu(d) m^(n/d):")
for m, alphabet in ((2, XY), (3, XYZ)):
    words = lyndon_words(alphabet, 6)
    counts = [sum(1 for w in words if len(w) == k) for k in range(1, 7)]
    expected = [necklace(k, m) for k in range(1, 7)]
    print(f"  {m} letters: counted {counts}, necklace {expected}")

print("\nStandard factorization cuts at the least proper suffix;")
print("both halves are again Lyndon:")
for text in ("xy", "xxy", "xyy", "xxxy", "xxyy", "xyyy"):
    left, right = standard_factorization(XY.word(text))
    print(f"  ({text}) = ({left})·({right})")

print("\nThe same split drives the bracketing of iterated commutators")
print("(see 02_magnus_and_membership.py).")
