#!/usr/bin/env python3
"""Trees, doad families, heights.

Builds the two canonical families, shows how leaves, path labels and
doad sets fit together, and enumerates all shapes on few leaves.
"""

from tnexp import (
    build_ht,
    build_tt,
    doad_family,
    enumerate_shapes,
    heights,
    leaves_of_mask,
    parse_tree,
)

ht2 = build_ht(2)
tt4 = build_tt(4)
print("perfect tree of depth 2 :", ht2)
print("comb tree on 4 leaves   :", tt4)
print()

print("path labels of", ht2, "leaves:",
      [ht2.labels[v] for v in ht2.leaves])

fam = doad_family(ht2)
print(f"\ndoad sets of {ht2} ({len(fam)} of them):")
for mask in fam.masks:
    wits = ", ".join(f"{kind} of {ht2.labels[v] or 'root'}"
                     for v, kind in fam.witnesses[mask])
    print(f"  {set(leaves_of_mask(mask))}  <- {wits}")

# both 4-leaf shapes generate the same doad family; only the subsets
# {1,3}, {1,4}, {2,3}, {2,4} are missing from it
assert set(fam.masks) == set(doad_family(tt4).masks)
missing = set(range(1, 16)) - set(fam.masks)
print("\nnon-doad subsets:", [set(leaves_of_mask(m)) for m in sorted(missing)])

print("\nheights count the 1s before the final 0 of a leaf label")
t = parse_tree("((.(..))(.(..)))")
h, hs = heights(t)
for leaf, (a, b) in enumerate(zip(h, hs), start=1):
    print(f"  leaf {leaf} label {t.labels[t.leaf_vertex(leaf)]:>4}  h={a}  h*={b}")
assert h == (0, 1, 0, 1, 2, 0)

print("\nunordered shapes per leaf count:")
for n in range(2, 11):
    shapes = enumerate_shapes(n)
    preview = "  ".join(s.text for s in shapes[:3])
    print(f"  n={n:>2}: {len(shapes):>3} shapes   {preview} ...")
