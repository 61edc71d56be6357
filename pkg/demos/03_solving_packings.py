"""Building maximal independent branching packings.

The star family puts vectors e_k at u_k and e_k +- e_{k+1} at v_k.  An edge
u_k -> v_k would put three vectors of a plane on v_k, so every packing must
route through w instead.  The solver finds one, and the verifier checks it
without looking at how it was built.
"""

from branchpack import fig2_truncate, gen_random, solve, verify_packing
from branchpack.serialize import emit_packing

doc = fig2_truncate(2)
r = doc.rooted
packing, trace = solve(r)
print(doc.name, "trace:", [(s.elem, s.edge) for s in trace])
print("verified:", verify_packing(r, packing).passed)
print("u-v edges used:", sorted(packing.edges() & set(doc.metadata["crossing_edges"])))

# Random instances are sampled until both preconditions hold.
for seed in range(3):
    doc = gen_random(seed)
    p, trace = solve(doc.rooted)
    print(f"seed {seed}: {len(doc.rooted.d.edges)} edges, {len(trace)} steps, "
          f"verified={verify_packing(doc.rooted, p).passed}, rejected={doc.metadata['rejected']}")

print("\nfig2_truncate(2) packing as JSON:")
print(emit_packing(packing, r), end="")
