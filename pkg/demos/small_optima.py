"""Exact optima for small ground sets next to the closed forms they should match."""

from matchless import Problem, solve_exact
from matchless.formulas import kleitman_e, p_size, quinn_e

rows = [
    ("E(5,3)", Problem.E(5, 3), kleitman_e(3, 2)),
    ("E(6,3)", Problem.E(6, 3), kleitman_e(3, 2, "sm")),
    ("E(7,3)", Problem.E(7, 3), quinn_e(2)),
    ("E(4,3)", Problem.E(4, 3), p_size(3, 1, 2)),
    ("E(6,4)", Problem.E(6, 4), p_size(4, 1, 2)),
    ("EK(8,2,3)", Problem.EK(8, 2, 3), 13),
]

for label, problem, expected in rows:
    res = solve_exact(problem)
    mark = "ok" if res.optimum == expected else "MISMATCH"
    print(f"{label:10} optimum {res.optimum:4}  closed form {expected:4}  "
          f"{res.nodes:6} nodes  {res.certificate}  {mark}")

# the witness for E(7,3) is a shifted up-set; show its smallest members
res = solve_exact(Problem.E(7, 3))
sets = res.witness.sets()
low = min(len(s) for s in sets)
print("smallest members of the E(7,3) witness:", [s for s in sets if len(s) == low][:8])
