#!/usr/bin/env python3
"""Rank experiments on sampled network tensors.

Samples generic members of scaled networks over the field mod 2^31 - 1,
ranks their flattenings at the splits of a probe tree, and compares the
observations with the combinatorial certificates.
"""

from tnexp import (
    NetworkSpec,
    build_ht,
    build_tt,
    cover_exponent,
    empirical_exponent,
    flattening_rank,
    parse_tree,
    poset_bound,
    rank_profile,
    sample_tensor,
)

print("the 2-leaf network is just bounded matrix rank:")
spec = NetworkSpec.create(parse_tree("(..)"), leaf_dims=5, f=1, r=3)
tensor = sample_tensor(spec, seed=0)
print(f"  5x5 sample at r=3: rank {flattening_rank(tensor, 0b01)}")

print("\nperfect tree sample probed along the comb tree (exponent 1 suffices):")
spec = NetworkSpec.create(build_ht(2), leaf_dims=2, f=1, r=2)
profile = rank_profile(sample_tensor(spec, seed=1), build_tt(4), exponent=1)
for lab, leaves, rank, limit, ok in profile.entries:
    print(f"  split {set(leaves)!s:<12} rank {rank} <= {limit}  {ok}")
assert profile.ok

print("\nempirical exponents for the 8-leaf fixture against tt:8:")
t8 = parse_tree("((.(.((..).)))((..).))")
tt8 = build_tt(8)
spec = NetworkSpec.create(t8, leaf_dims=2, f=1, r=2)
rep = empirical_exponent(spec, tt8, trials=10, seed=0)
cov = cover_exponent(t8, tt8).cover_bound
pos = poset_bound(t8, tt8).value
print(f"  certified: cover {cov}, poset {pos}")
print(f"  observed max over 10 samples: {rep['max_exponent']}")
worst = max(rep["per_node_rank"].items(), key=lambda kv: kv[1])
print(f"  worst split at node {worst[0]} with rank {worst[1]} = 2^{cov}")
print("  the certificate is attained: generic samples fill the full")
print("  8-dimensional row space of the {1,2,3} flattening")
assert rep["max_exponent"] == cov == 3

print("\nevidence is one-sided: ten agreeing samples certify nothing,")
print("but a single rank above r^c * f' would refute the exponent c.")
