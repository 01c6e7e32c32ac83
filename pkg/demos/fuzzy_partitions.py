"""
From graded sets to partitions and back
=======================================

A fuzzy set with finitely many grades is a descending chain of level sets.
Taking successive differences of the chain gives a partition; any partition
with an order on its cells can be turned back into such a chain.
"""

from fractions import Fraction as F

from roughgran.fuzzy import FuzzySet, construction1, reverse_transform
from roughgran.universe import Universe

u = Universe("abcdef")
mu = {"a": F(1), "b": F(2, 3), "c": F(1, 3), "d": F(1, 3), "e": F(0), "f": F(0)}
f = FuzzySet.from_membership(u, mu)
for p, A in f.levels:
    print(f"level {str(p):4} {A}")
print("core", f.core(), " support", f.support())

cells = construction1(f)
print("\ncells:", " ".join(map(str, cells)))

# Going back needs at least one grade per cell.
g = reverse_transform(cells, [0, F(1, 4), F(1, 2), 1])
for p, A in g.levels:
    print(f"level {str(p):4} {A}")
print("same cells again:", construction1(g, [0, F(1, 4), F(1, 2), 1]) == cells)
