"""The Magnus embedding and membership tests for filtration terms.

Sending each generator x to the power series 1 + x embeds the free
group into the units of a truncated noncommutative polynomial ring.
Coefficient divisibilities of the image decide membership in the lower
p-central filtration, and iterated commutators tau(w) indexed by Lyndon
words expand with a predictable leading part.
"""

from lynmag import (
    Alphabet,
    format_group_word,
    gr_generators,
    koch_test,
    lower_central_test,
    magnus,
    p_poly,
    parse_group_word,
    tau,
)

XY = Alphabet(("x", "y"))

print("Magnus images, truncated at degree 3:")
for text in ("x", "x^-1", "[x, y]", "x^4"):
    g = parse_group_word(XY, text)
    print(f"  {text:8s} -> {magnus(g, None, 3)}")

print("\nkoch_test(g, n, p): every word of length s < n must have its")
print("coefficient divisible by p^(n-s).  x^4 lies two steps down at p=2:")
for text, n in (("x^4", 2), ("x^4", 3), ("x^2", 3)):
    g = parse_group_word(XY, text)
    print(f"  koch_test({text}, n={n}, p=2) = {koch_test(g, n, 2)}")

print("\nlower_central_test uses exact integers instead of divisibility:")
g = parse_group_word(XY, "[[x, y], y]")
for n in (2, 3, 4):
    print(f"  [[x,y],y] in term {n}: {lower_central_test(g, n)}")

print("\ntau(w) brackets a Lyndon word along its standard factorization:")
for text in ("xy", "xxy", "xyy"):
    w = XY.word(text)
    print(f"  tau({text}) = {format_group_word(tau(w))}")

print("\nIts Magnus expansion starts exactly at the bracket polynomial")
print("P_w, whose support beyond w is alphabetically above w:")
for text in ("xy", "xxy"):
    w = XY.word(text)
    f = magnus(tau(w), None, len(w))
    print(f"  magnus(tau({text})) = {f}")
    print(f"  P_({text})          = {p_poly(w)}")

print("\nFiltration generators for n = 3, p = 2 over {x, y}:")
for w, g in gr_generators(3, 2, XY):
    print(f"  {str(w):5s} -> {format_group_word(g)}  (koch: {koch_test(g, 3, 2)})")
