"""Exact minimum doad-set covers and the cover-based containment exponent.

For a tree T, the cover table holds, for every leaf subset S, the
minimal number n_S of doad sets of T whose union is exactly S.  Minimal
covers of proper subsets can always be taken pairwise disjoint (two
overlapping doad sets are nested or union to the whole leaf set, so one
of them is redundant), which lets a breadth-first subset sweep over
disjoint unions compute every n_S exactly.

The containment exponent certificate for a pair (T, T') under a leaf
permutation is then: for every internal node w of T', cover either the
pulled-back descendant set or its complement, and take the worst node.
Leaf nodes of T' always need exactly one singleton doad, so the bound is
floored at 1; the root contributes nothing (its anti side is empty).

The f-weighted variant minimizes the product of a positive vertex
weight over the witnessing vertices instead of the count; it backs the
trivial-containment test, which upgrades the asymptotic containment to
one valid for every scaling factor r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .trees import (
    DoadFamily,
    Permutation,
    Tree,
    doad_family,
    leaves_of_mask,
)

__all__ = [
    "CoverTable",
    "build_cover_table",
    "cover_exponent",
    "ExponentReport",
    "NodeCover",
    "min_product_cover",
    "check_trivial_containment",
    "TrivialContainment",
]

COVER_TABLE_CAP = 24  # 2^n table entries; larger n must go through the IP
_UNSET = 255


# ---------------------------------------------------------------------------
# cover tables

class CoverTable:
    """Minimum doad-cover sizes for every leaf subset of one tree.

    counts[m] is n_S for the subset with bitmask m (counts[0] == 0).
    Witness decompositions are derived on demand; they are pairwise
    disjoint and deterministic (smallest witness vertex first among the
    optimal choices).
    """

    __slots__ = ("tree", "family", "counts")

    def __init__(self, tree: Tree, family: DoadFamily, counts: np.ndarray):
        self.tree = tree
        self.family = family
        self.counts = counts

    def count(self, mask: int) -> int:
        return int(self.counts[mask])

    def witness(self, mask: int) -> tuple:
        """One optimal decomposition of `mask` as (vertex, kind, set) triples."""
        out = []
        remaining = mask
        k = self.count(mask)
        while remaining:
            best = None
            for d in self.family.masks:
                if d & ~remaining:
                    continue
                if self.counts[remaining ^ d] == k - 1:
                    vid, kind = self.family.witnesses[d][0]
                    cand = (vid, kind != "desc", d)
                    if best is None or cand < best:
                        best = cand
            vid, anti, d = best
            out.append((vid, "anti" if anti else "desc", d))
            remaining ^= d
            k -= 1
        return tuple(out)


def build_cover_table(t: Tree) -> CoverTable:
    """Exact n_S for every leaf subset, by layered disjoint-union BFS."""
    if t.n > COVER_TABLE_CAP:
        raise ValueError(
            f"cover tables are capped at {COVER_TABLE_CAP} leaves (got {t.n}); "
            "use the integer program for larger trees")
    family = doad_family(t)
    doads = np.array(family.masks, dtype=np.int64)
    counts = np.full(1 << t.n, _UNSET, dtype=np.uint8)
    counts[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    layer = 0
    while frontier.size:
        layer += 1
        grown = []
        for d in doads:
            ext = frontier[(frontier & d) == 0] | d
            ext = ext[counts[ext] == _UNSET]
            if ext.size:
                counts[ext] = layer
                grown.append(ext)
        frontier = np.unique(np.concatenate(grown)) if grown else np.zeros(0, dtype=np.int64)
    return CoverTable(t, family, counts)


# ---------------------------------------------------------------------------
# cover-based exponent for a (T, T', pi) instance

@dataclass(frozen=True)
class NodeCover:
    """Cover requirement at one internal node of the target tree."""

    label: str          # path label in T' ("r" = root)
    desc_set: int       # pulled back into T's leaf numbering
    anti_set: int
    n_desc: int
    n_anti: int
    chosen: str         # side realizing the minimum ("desc" or "anti")

    @property
    def value(self) -> int:
        return min(self.n_desc, self.n_anti)


@dataclass(frozen=True)
class ExponentReport:
    """All cover data for one (T, T', pi) instance.

    cover_bound is the certified containment exponent: max over internal
    nodes of T' of the cheaper side's exact cover number, floored at 1
    (every leaf of T' needs one singleton).  naive_max is the larger
    diagnostic that covers every pulled-back doad set individually
    instead of choosing the cheaper side per node.
    """

    tree: str
    tree_prime: str
    perm: str
    cover_bound: int
    per_node: tuple
    naive_max: int
    witnesses: Optional[dict] = None
    extra_bounds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "tree": self.tree,
            "tree_prime": self.tree_prime,
            "perm": self.perm,
            "cover_bound": self.cover_bound,
            "naive_max": self.naive_max,
            "per_node": [
                {
                    "node": nc.label,
                    "desc_set": list(leaves_of_mask(nc.desc_set)),
                    "anti_set": list(leaves_of_mask(nc.anti_set)),
                    "n_desc": nc.n_desc,
                    "n_anti": nc.n_anti,
                    "chosen": nc.chosen,
                }
                for nc in self.per_node
            ],
        }
        if self.witnesses is not None:
            d["witnesses"] = {
                lab: [{"vertex": v_lab, "kind": kind, "set": list(leaves_of_mask(m))}
                      for (v_lab, kind, m) in ws]
                for lab, ws in self.witnesses.items()
            }
        if self.extra_bounds:
            d["extra_bounds"] = dict(self.extra_bounds)
        return d


def _node_label(t: Tree, v: int) -> str:
    return t.labels[v] or "r"


def cover_exponent(t: Tree, t_prime: Tree, perm: Optional[Permutation] = None,
                   table: Optional[CoverTable] = None,
                   with_witnesses: bool = False) -> ExponentReport:
    """Certified containment exponent for T' covered by doad sets of T."""
    if t.n != t_prime.n:
        raise ValueError(f"leaf counts differ: {t.n} vs {t_prime.n}")
    if perm is None:
        perm = Permutation.identity(t.n)
    if perm.n != t.n:
        raise ValueError(f"permutation size {perm.n} does not match {t.n} leaves")
    if table is None:
        table = build_cover_table(t)
    elif table.tree != t:
        raise ValueError("cover table was built for a different tree")

    full = t.full_mask
    per_node = []
    bound = 1
    for w in t_prime.internal:
        d_set = perm.pullback(t_prime.desc_masks[w])
        a_set = full ^ d_set
        nd = table.count(d_set)
        na = table.count(a_set)
        chosen = "anti" if na < nd else "desc"
        per_node.append(NodeCover(_node_label(t_prime, w), d_set, a_set, nd, na, chosen))
        bound = max(bound, min(nd, na))

    naive = max(table.count(perm.pullback(m)) for m in doad_family(t_prime).masks)

    witnesses = None
    if with_witnesses:
        witnesses = {}
        for nc in per_node:
            side = nc.desc_set if nc.chosen == "desc" else nc.anti_set
            witnesses[nc.label] = tuple(
                (_node_label(t, vid), kind, m) for vid, kind, m in table.witness(side))

    return ExponentReport(
        tree=t.text, tree_prime=t_prime.text, perm=perm.one_line(),
        cover_bound=bound, per_node=tuple(per_node), naive_max=naive,
        witnesses=witnesses)


# ---------------------------------------------------------------------------
# f-weighted covers and trivial containment

def _f_vector(t: Tree, f) -> tuple[int, ...]:
    """Normalize a weight spec (scalar, mapping by label, or sequence by id)."""
    if isinstance(f, int):
        vec = (f,) * t.size
    elif isinstance(f, dict):
        vec = tuple(int(f.get(t.labels[v], f.get(_node_label(t, v), 1))) for v in range(t.size))
    else:
        vec = tuple(int(x) for x in f)
        if len(vec) != t.size:
            raise ValueError(f"weight vector has {len(vec)} entries, tree has {t.size} vertices")
    if any(x < 1 for x in vec):
        raise ValueError("vertex weights must be positive")
    return vec


class _ProductCover:
    """Memoized minimum f-product doad covers of one tree."""

    def __init__(self, t: Tree, f):
        self.t = t
        self.f = _f_vector(t, f)
        self.family = doad_family(t)
        # cheapest witness per doad set: weight, then (vertex, kind) tiebreak
        self.weight = {}
        self.best_wit = {}
        for m in self.family.masks:
            w, vid, kind = min(
                (self.f[vid], vid, kind) for vid, kind in self.family.witnesses[m])
            self.weight[m] = w
            self.best_wit[m] = (vid, kind)
        self._memo = {0: (1, ())}

    def query(self, mask: int):
        """(minimum product, witness triples) for an exact cover of mask."""
        full = self.t.full_mask
        if mask != full:
            return self._disjoint(mask)
        # the full leaf set also admits irredundant covers by two
        # overlapping doads; anything larger reduces to these or to a
        # disjoint cover
        best = self._disjoint(mask)
        masks = self.family.masks
        for i, a in enumerate(masks):
            for b in masks[i:]:
                if a | b == full:
                    p = self.weight[a] * self.weight[b]
                    if p < best[0]:
                        best = (p, (self._wit(a), self._wit(b)))
        return best

    def _wit(self, m: int):
        vid, kind = self.best_wit[m]
        return (vid, kind, m)

    def _disjoint(self, mask: int):
        memo = self._memo
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        best = None
        for d in self.family.masks:
            if not d & low or d & ~mask:
                continue
            sub_p, sub_w = self._disjoint(mask ^ d)
            p = self.weight[d] * sub_p
            if best is None or p < best[0]:
                best = (p, (self._wit(d),) + sub_w)
        memo[mask] = best
        return best


def min_product_cover(t: Tree, f, mask: int):
    """Minimum product of vertex weights over doad covers of `mask`.

    Returns (product, witness) where witness is a tuple of
    (vertex, kind, set) triples whose sets union to `mask` exactly.
    """
    if mask < 0 or mask > t.full_mask:
        raise ValueError("mask out of range for this tree")
    return _ProductCover(t, f).query(mask)


@dataclass(frozen=True)
class TrivialContainment:
    """Outcome of the per-node product test between two weighted networks.

    When `ok` is true the containment holds for every scaling factor r,
    with exponent `sets_used` (the largest number of doad sets in any
    chosen cover).
    """

    ok: bool
    sets_used: int
    per_node: tuple  # (label, side, product, limit, witness)
    violations: tuple

    def to_dict(self) -> dict:
        return {
            "trivially_contained": self.ok,
            "holds_for_all_r": self.ok,
            "sets_used": self.sets_used,
            "violations": list(self.violations),
            "per_node": [
                {"node": lab, "side": side, "product": p, "limit": lim,
                 "cover": [list(leaves_of_mask(m)) for (_, _, m) in wit]}
                for (lab, side, p, lim, wit) in self.per_node
            ],
        }


def check_trivial_containment(t: Tree, f, t_prime: Tree, f_prime,
                              perm: Optional[Permutation] = None) -> TrivialContainment:
    """Test whether the (T, f) network is trivially contained in (T', f').

    Every vertex of T' must admit a doad cover of its descendant or
    anti-descendant side whose f-product does not exceed f' there.
    """
    if t.n != t_prime.n:
        raise ValueError(f"leaf counts differ: {t.n} vs {t_prime.n}")
    if perm is None:
        perm = Permutation.identity(t.n)
    if perm.n != t.n:
        raise ValueError(f"permutation size {perm.n} does not match {t.n} leaves")
    fp = _f_vector(t_prime, f_prime)
    pc = _ProductCover(t, f)
    full = t.full_mask

    per_node = []
    violations = []
    sets_used = 0
    for v in range(t_prime.size):
        d_set = perm.pullback(t_prime.desc_masks[v])
        a_set = full ^ d_set
        pd, wd = pc.query(d_set)
        pa, wa = pc.query(a_set)
        product, side, wit = min((pd, "desc", wd), (pa, "anti", wa),
                                 key=lambda x: (x[0], x[1] != "desc"))
        lab = _node_label(t_prime, v)
        per_node.append((lab, side, product, fp[v], wit))
        sets_used = max(sets_used, len(wit))
        if product > fp[v]:
            violations.append(lab)
    return TrivialContainment(ok=not violations, sets_used=sets_used,
                              per_node=tuple(per_node), violations=tuple(violations))
