"""Build rainbow structures, inspect their composition tables, and
round-trip them through the text file format."""

from relalg import Algebra, Element, Rainbow, check_axioms, predicted_representable
from relalg.rasfile import dumps, loads

rb = Rainbow.make(2, 2)
alg = Algebra(rb.structure)
print(f"B(2,2) has {rb.structure.n_atoms} atoms:", ", ".join(rb.structure.names))

problems = check_axioms(rb.structure)
print("axioms:", "ok" if not problems else problems)

g0 = Element(alg, 1 << rb.green(0))
g1 = Element(alg, 1 << rb.green(1))
y = Element(alg, 1 << 3)
print("g0 ; g0 =", g0.compose(g0))
print("g0 ; g1 =", g0.compose(g1))
print("y ; y   =", y.compose(y))

for s, t in ((2, 2), (3, 2), (4, 4), (5, 4)):
    verdict = "representable" if predicted_representable(s, t) else "NOT representable"
    print(f"B({s},{t}) predicted {verdict}")

text = dumps(rb.structure)
print("\nfile format round trip:", loads(text) == rb.structure)
print(text.splitlines()[0], "...", f"({len(text.splitlines())} lines)")
