"""Shrinking a tight set into a smaller instance.

For a tight set X the local instance keeps D[X], restricts the matroid to
S(X), and adds one free element per in-edge, rooted at that edge's head.
It inherits both preconditions, and tightness of subsets of X reads the same
inside and outside.
"""

from branchpack import fig2_truncate
from branchpack.linkage import check_linkage_condition, is_tight

r = fig2_truncate(1).rooted
X = {"u1", "v1", "w"}
print("X tight:", is_tight(r, X))
q, fresh = r.local_instance(X)
print("fresh elements:", fresh)
print("quotient independent:", q.is_independent(), " linkage condition:", check_linkage_condition(q).holds)
for Z in ({"w"}, {"v1", "w"}, {"u1", "v1"}):
    print(sorted(Z), "tight outside:", is_tight(r, Z), " inside:", is_tight(q, Z))
