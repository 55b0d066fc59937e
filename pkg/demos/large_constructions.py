"""Sizes far beyond any membership table, and a local search over threshold families."""

from matchless import ConstructionSpec, size_of
from matchless.solver import threshold_search

w = size_of(ConstructionSpec.W(20, 20, 401))
p = size_of(ConstructionSpec.P(20, 20, 19), 401)
print(f"|W(20,20)| on 401 points has {len(str(w))} digits")
print(f"|P(20,20,19)| has {len(str(p))} digits")
print("W larger:", w > p, f"by an integer with {len(str(w - p))} digits")

for n, s in [(7, 3), (8, 3), (9, 4)]:
    res = threshold_search(n, s, iterations=2000, seed=1)
    print(f"n={n} s={s}: best threshold family {res.size} from {res.start},"
          f" weights {[str(a) for a in res.alpha]}")
