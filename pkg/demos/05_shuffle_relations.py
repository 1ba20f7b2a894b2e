"""Shuffle products, coefficient identities, and span reduction mod p.

The shuffle of two words sums their interleavings; the infiltration also
lets equal letters overlap, and its top-degree part is the shuffle.
Magnus coefficients satisfy an exact product identity through the
infiltration, and vanish to high p-order against shuffles on filtration
elements.  Row-reducing all shuffles of one degree shows the quotient is
spanned by Lyndon words in low degree, giving a canonical rewriting.
"""

from lynmag import (
    Alphabet,
    Word,
    cfl_check,
    infiltration,
    palindrome_identity,
    parse_group_word,
    reduce_mod_shuffles,
    shuffle,
    shuffle_congruence_check,
    shuffle_span_basis,
)

XY = Alphabet(("x", "y"))
XYZ = Alphabet(("x", "y", "z"))

print("Products:")
print("  (x) sh (y)  =", shuffle(XYZ.word("x"), XYZ.word("y")))
print("  (xy) sh (xz) =", shuffle(XYZ.word("xy"), XYZ.word("xz")))
print("  (x) inf (x) =", infiltration(XYZ.word("x"), XYZ.word("x")))

print("\nCoefficient identity eps_u(s)·eps_v(s) = (magnus(s), u inf v):")
sigma = parse_group_word(XY, "x y x^-1 y^2")
ok = all(
    cfl_check(u, v, sigma, 3**5)
    for u in (XY.word("x"), XY.word("xy"))
    for v in (XY.word("y"), XY.word("yx"))
)
print(f"  checked for sigma = x y x^-1 y^2 mod 3^5: {ok}")

print("\nOn a filtration element, pairings against shuffles vanish mod p^(n-s+1):")
sigma = parse_group_word(XY, "x^9 y^-1 [x, y]^3 y")
print(
    "  sigma = x^9 y^-1 [x,y]^3 y, n=3, p=3:",
    shuffle_congruence_check(XY.word("x"), XY.word("y"), sigma, 3, 3),
)
control = parse_group_word(XY, "x y")
print(
    "  control sigma = xy (not in the term), n=2:",
    shuffle_congruence_check(XY.word("x"), XY.word("y"), control, 2, 3),
)

print("\nPalindrome identity: the reversed word with sign (-1)^k is an")
print("alternating sum of shuffles; exact in every degree up to 5:")
lhs, _ = palindrome_identity(XYZ.word("xyz"))
print("  k=3 left side:", lhs)

print("\nShuffle span at degree 3 over {x, y, z} mod 5:")
basis = shuffle_span_basis(3, 5, XYZ)
print(f"  rank {basis.rank}, quotient dimension {basis.quotient_dim}")
print("  (the 8 Lyndon words of length 3 form a basis of the quotient)")

print("\nCanonical rewriting modulo shuffles, coefficients mod 5:")
for text in ("yx", "zxy", "xyx", "xxx"):
    combo = reduce_mod_shuffles(XYZ.word(text), 5)
    shown = " + ".join(f"{c}·({w})" for w, c in combo.items()) or "0"
    print(f"  ({text}) = {shown}")
