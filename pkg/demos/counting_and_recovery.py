"""
Counting with indiscernibility, and getting the granules back
=============================================================

Twelve objects under two equivalences R (coarse) and Q (fine).  We count the
sequence under each counting scheme, find the order that counts the most
restarts, recover R's classes from that count alone, and finish with the
dependency of Q on R.
"""

from roughgran.counting import (
    CountedSequence, count, granules_from_count, max_ipc_order,
)
from roughgran.measures import cons, delta, gk, pos
from roughgran.theories import counting_relations
from roughgran.universe import format_ratio, partition_classes

R, Q = counting_relations()
u = R.universe
print("objects:", " ".join(u))
print("R classes:", " ".join(map(str, partition_classes(R))))
print("Q classes:", " ".join(map(str, partition_classes(Q))))

seq_r = CountedSequence(u, range(len(u)), R)
seq_q = CountedSequence(u, range(len(u)), Q)
for scheme in ("IPC", "HPC", "HPPC", "IPPC"):
    print(f"{scheme:5} R: {count(seq_r, scheme)}")
print(f"HPC   Q: {count(seq_q, 'HPC')}")

# Placing each class as one contiguous run makes every restart of the count
# mark a new class, so the classes can be read off the count.
best = max_ipc_order(u, R)
c = count(best, "IPC")
print("\nbest order:", " ".join(best.names()))
print("its count: ", c)
print("recovered: ", " ".join(map(str, granules_from_count(best, c))))

print("\npositive region of Q over R:", pos(u, R, Q))
print("dependency:", format_ratio(delta(u, R, Q)))
print("per R class:", ", ".join(format_ratio(v) for v in gk(u, R, Q)))
print("consistency (n=1):", format_ratio(cons(u, R, Q, 1)))
