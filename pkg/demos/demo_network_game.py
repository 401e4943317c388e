"""Play the atomic network game on rainbow structures.

With at most as many greens as red indices the witness strategy
survives every attack; with more greens the refuter's pigeonhole
attack kills every branch.  Running the refuter against the witness
strategy on a representable structure shows the attack fizzle.
"""

from relalg import Algebra, Rainbow, verify_exists_strategy, verify_forall_refutation
from relalg.networks import (coherent, initial_response,
                             rainbow_exists_strategy, rainbow_refuter_moves)

print("witness strategy on B(2,2), all attacks to depth 4:")
res = verify_exists_strategy(Rainbow.make(2, 2), rounds=4)
print(f"  {res.status} ({res.states} positions examined)")

print("\nrefuter on B(3,2) (3 greens, 2 red indices):")
res = verify_forall_refutation(Rainbow.make(3, 2), max_rounds=5)
print(f"  {res.status}: {res.transcript[-1]}")

print("\nrefuter attack against the witness strategy on B(2,2):")
rb = Rainbow.make(2, 2)
alg = Algebra(rb.structure)
net = initial_response(alg, 2)  # opening on the white atom
book = {}
for move in rainbow_refuter_moves(rb):
    net, book = rainbow_exists_strategy(rb, net, book, move)
    assert coherent(net, alg) is None
print(f"  witness survives; final network has {net.n} nodes:")
print("  " + net.describe(rb.structure))
