"""
Covers, neighbourhoods and the four block operators
===================================================

A small cover with overlapping, nested and duplicated blocks, and what the
four block operators do to a few subsets.
"""

from roughgran import cover as cv
from roughgran.theories import example_cover

cs = example_cover()
for name, block in zip(cs.names, cs.blocks):
    print(f"{name:3} {block}")

# Per element: the neighbourhood (meet of blocks holding it), the friends
# (their join) and the minimal blocks holding it.
print()
print(f"{'x':2} {'nbd':10} {'Fr':18} Md")
for x in cs.universe:
    print(f"{x:2} {str(cv.nbd(cs, x)):10} {str(cv.friends(cs, x)):18} "
          f"{' '.join(cv.minimal_description(cs, x))}")

# Blocks that no element needs can be dropped without changing any Md.
print("\nreducible:", cv.reducible_blocks(cs))
reduced = cv.covering_reduct(cs)
print("reduct keeps:", reduced.names)

# l1 unions blocks inside X, u2 intersects block complements around X;
# l2 and u1 work with intersections and unions of several blocks at once.
u = cs.universe
for text in ("ab", "abf", "fgh", "acej"):
    X = u.set(text)
    row = "  ".join(f"{k}={cv.auai(cs, X, k)}" for k in ("l1", "l2", "u1", "u2"))
    print(f"{str(X):11} {row}")

# The operator laws, checked on one pair of sets.
X, Y = u.set("abf"), u.set("fgh")
print("\nviolated laws for (abf, fgh):", cv.auai_law_violations(cs, X, Y) or "none")
