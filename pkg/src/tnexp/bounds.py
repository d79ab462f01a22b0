"""Closed-form and structural containment-exponent bounds.

Four certificate families, all upper bounds for the exact cover number:

* trivial: floor(n/2), from covering the smaller side of every split by
  singletons;
* poset: per target doad set S, the cheapest of four explicit coverings
  read off the ancestor/descendant poset of the covering tree -- the
  maximal vertices whose descendant sets fit inside S (or its
  complement), optionally after splitting off one anti-descendant set at
  the lowest common ancestor of the other side;
* heights: a plane tree embeds into the same-width comb tree with
  exponent 1 + max_l min(h_l, h*_{l+1}), where h counts the 1s before
  the final 0 of a leaf's path label and h* dually;
* plane-general: twice the height bound, valid against any plane tree of
  the same width, because the comb tree itself embeds anywhere with
  exponent 2 and exponents compose multiplicatively.

Every count in the poset minimum is the size of a covering that can be
written down (maximal vertices below the lca of the complementary
side, plus one anti set); the tempting shortcut of intersecting with
ancestor up-sets instead does not correspond to valid covers and can
undercut the true cover number.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .trees import (
    Permutation,
    Tree,
    build_tt,
    doad_family,
    heights,
    leaves_of_mask,
)

__all__ = [
    "BoundValue",
    "trivial_bound",
    "poset_min4",
    "poset_table",
    "poset_bound",
    "height_bound_tt",
    "plane_general_bound",
    "compose_exponents",
]


@dataclass(frozen=True)
class BoundValue:
    """A certified containment exponent with its provenance.

    source/target are canonical tree strings when the certificate is
    tied to specific trees; None acts as a wildcard (e.g. the trivial
    bound holds for every pair of the given width).
    """

    kind: str
    value: int
    source: Optional[str] = None
    target: Optional[str] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value, "source": self.source,
                "target": self.target, "note": self.note}


def trivial_bound(n: int) -> BoundValue:
    """floor(n/2) is an exponent for any pair of trees on n leaves."""
    if n < 2:
        raise ValueError(f"need at least 2 leaves, got {n}")
    return BoundValue(kind="trivial", value=n // 2,
                      note=f"cover the smaller side of every split by singletons (n={n})")


# ---------------------------------------------------------------------------
# poset bound

def _maxima_labels(t: Tree, vids) -> int:
    labset = {t.labels[v] for v in vids}
    return sum(1 for lab in labset
               if not any(lab[:k] in labset for k in range(len(lab))))


def _leaf_lca_label(t: Tree, mask: int) -> str:
    labels = [t.labels[t.leaf_vertex(l)] for l in leaves_of_mask(mask)]
    lo, hi = min(labels), max(labels)
    i = 0
    while i < len(lo) and lo[i] == hi[i]:
        i += 1
    return lo[:i]


def poset_min4(t: Tree, mask: int) -> int:
    """Cheapest of the four poset coverings of `mask` or its complement.

    The four counts: maximal vertices with descendants inside the
    complement (covers it by descendant sets); same for `mask` itself;
    and each of those restricted below the lca of the other side, plus
    one anti-descendant set there.
    """
    full = t.full_mask
    comp = full ^ mask
    if mask == 0 or comp == 0:
        raise ValueError("poset covering terms need a proper nonempty subset")
    dm = t.desc_masks
    in_s = [v for v in range(t.size) if not dm[v] & comp]
    in_c = [v for v in range(t.size) if not dm[v] & mask]
    t1 = _maxima_labels(t, in_c)
    t2 = _maxima_labels(t, in_s)
    lca_c = _leaf_lca_label(t, comp)
    lca_s = _leaf_lca_label(t, mask)
    t3 = _maxima_labels(t, [v for v in in_s if t.labels[v].startswith(lca_c)]) + 1
    t4 = _maxima_labels(t, [v for v in in_c if t.labels[v].startswith(lca_s)]) + 1
    return min(t1, t2, t3, t4)


def poset_table(t: Tree) -> np.ndarray:
    """poset_min4 for every nontrivial leaf subset (0 at the trivial ones)."""
    out = np.zeros(1 << t.n, dtype=np.uint8)
    for mask in range(1, t.full_mask):
        out[mask] = poset_min4(t, mask)
    return out


def poset_bound(t: Tree, t_prime: Tree, perm: Optional[Permutation] = None) -> BoundValue:
    """Poset-structure exponent for T' covered through the poset of T."""
    if t.n != t_prime.n:
        raise ValueError(f"leaf counts differ: {t.n} vs {t_prime.n}")
    if perm is None:
        perm = Permutation.identity(t.n)
    if perm.n != t.n:
        raise ValueError(f"permutation size {perm.n} does not match {t.n} leaves")
    full = t.full_mask
    best, best_mask = 1, None
    for m in doad_family(t_prime).masks:
        if m == full:
            continue
        v = poset_min4(t, perm.pullback(m))
        if v > best:
            best, best_mask = v, m
    note = ""
    if best_mask is not None:
        note = f"attained at target doad set {set(leaves_of_mask(best_mask))}"
    return BoundValue(kind="poset", value=best, source=t.text,
                      target=t_prime.text, note=note)


# ---------------------------------------------------------------------------
# height bounds for plane trees

def _height_profile(t: Tree) -> tuple[int, int]:
    """(max over l of min(h_l, h*_{l+1}), attaining l)."""
    h, hs = heights(t)
    best, best_l = 0, 1
    for l in range(1, t.n):
        v = min(h[l - 1], hs[l])
        if v > best:
            best, best_l = v, l
    return best, best_l


def height_bound_tt(t: Tree) -> BoundValue:
    """Exponent for a plane tree inside the same-width comb tree."""
    m, l = _height_profile(t)
    return BoundValue(kind="height_tt", value=1 + m, source=t.text,
                      target=build_tt(t.n).text,
                      note=f"1 + min(h_{l}, h*_{l + 1}) with left-to-right leaf identification")


def plane_general_bound(t: Tree) -> BoundValue:
    """Exponent for a plane tree inside any plane tree of the same width."""
    m, l = _height_profile(t)
    return BoundValue(kind="plane_general", value=2 + 2 * m, source=t.text,
                      target=None,
                      note="height bound composed with the comb tree's universal exponent 2")


def compose_exponents(e1: BoundValue, e2: BoundValue) -> BoundValue:
    """Chain two certificates: exponents multiply along T -> T' -> T''."""
    if e1.target is not None and e2.source is not None and e1.target != e2.source:
        raise ValueError(
            f"cannot compose: first bound targets {e1.target!r}, "
            f"second starts from {e2.source!r}")
    return BoundValue(kind="composed", value=e1.value * e2.value,
                      source=e1.source, target=e2.target,
                      note=f"{e1.kind}({e1.value}) * {e2.kind}({e2.value})")
