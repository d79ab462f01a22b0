#!/usr/bin/env python3
"""Structural bounds and where they are (not) sharp.

Compares the trivial, height, plane-general and poset bounds against
the exact cover exponent on the instructive fixtures.
"""

from tnexp import (
    build_ht,
    build_tt,
    compose_exponents,
    cover_exponent,
    height_bound_tt,
    parse_tree,
    plane_general_bound,
    poset_bound,
    trivial_bound,
)

print("perfect trees into comb trees: height bound tracks ceil(k/2)")
for k in range(2, 6):
    ht = build_ht(k)
    print(f"  ht:{k} ({2**k:>2} leaves): height_tt {height_bound_tt(ht).value}, "
          f"trivial {trivial_bound(2**k).value}")

print("\nexponents compose along chains:")
e1 = height_bound_tt(build_ht(3))
e2 = plane_general_bound(build_tt(8))       # the comb embeds anywhere with 2
chained = compose_exponents(e1, e2)
print(f"  {e1.kind} {e1.value} * comb-universal 2 = {chained.value} "
      f"= plane_general {plane_general_bound(build_ht(3)).value}")

print("\na pair where the general plane bound is off by a factor 4:")
a = parse_tree("((.((..).))(..))")
b = parse_tree("(((.((..).)).).)")
print(f"  T  = {a}\n  T' = {b}")
print(f"  cover exponent     : {cover_exponent(a, b).cover_bound}")
print(f"  plane-general bound: {plane_general_bound(a).value}")

print("\nthe poset bound on an 8-leaf tree against the comb tree:")
t8 = parse_tree("((.(.((..).)))((..).))")
pb = poset_bound(t8, build_tt(8))
cov = cover_exponent(t8, build_tt(8)).cover_bound
print(f"  T = {t8}")
print(f"  poset bound {pb.value} ({pb.note}); exact cover bound {cov}")
assert pb.value == cov == 3
print("  here the poset bound coincides with the exact cover optimum,")
print("  and demo 06 shows sampled tensors attain it")
