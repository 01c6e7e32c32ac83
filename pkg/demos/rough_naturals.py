"""
Rough naturals
==============

A rough natural is the count of a string whose neighbours may or may not be
told apart.  Ordinary naturals sit inside as the all-discernible strings, and
there the arithmetic is the usual one.  Elsewhere the sum need not commute.
"""

from roughgran import roughnat as rn
from roughgran.roughalg import algebra_suite, format_report

P = rn.RoughNatural.parse

for expr in ("2+3", "2.3", "5-2", "DI+ID", "ID+DI", "DI.2"):
    v = rn.evaluate(expr)
    print(f"{expr:6} = {v.render() if v is not None else 'undefined'}")

x, y = P("1"), P("I")
print("\nx + y =", rn.oplus(x, y).render())
print("y + x =", rn.oplus(y, x).render())

for kind in ("⊴", "≤⊕", "⊑"):
    print(f"{x.render()} {kind} {y.render()}:", rn.order(x, y, kind))

# The law suites run exhaustively on short patterns, then on random longer ones.
print()
print(format_report(algebra_suite("RIPCA", samples=500, exhaustive_len=3)))
