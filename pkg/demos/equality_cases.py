"""Where the averaging bounds are tight, and the one place the three-level bound is not."""

from matchless import ConstructionSpec, SetFamily, build
from matchless.circle import check_averaged_window_bound, check_window_bound, identity_sigma
from matchless.partition import three_level_sides, tuple_stats

P512 = build(ConstructionSpec.P(5, 1, 2))
print("P(5,1,2) on 8 points:", len(P512), "members")
print("  X over singletons:", [str(x) for x in tuple_stats(P512, (1,) * 5).X])
avg = check_averaged_window_bound(P512, 5, 1)[0]
print(f"  averaged window sum {avg.lhs} vs (s-2)/n = {avg.rhs}")
win = check_window_bound(P512, identity_sigma(8), 5, 1)[0]
print(f"  identity arrangement: window sum {win.lhs} vs s-2 = {win.rhs}")

lhs, rhs = three_level_sides(build(ConstructionSpec.P(3, 1, 2)), 3, 2)
print(f"three-level sides at P(3,1,2): {lhs} = {rhs}")
lhs, rhs = three_level_sides(build(ConstructionSpec.P(4, 1, 2)), 4, 2, "l2")
print(f"l = 2 variant at P(4,1,2): {lhs} = {rhs}")

# all sets meeting {1,2} on [4]: nu = 2, yet the general form falls short when s - l = 1
G = SetFamily.from_masks(4, [a for a in range(16) if a & 3])
lhs, rhs = three_level_sides(G, 3, 2)
print(f"sets meeting {{1,2}} on [4], s = 3, l = 2: {lhs} < {rhs}")
