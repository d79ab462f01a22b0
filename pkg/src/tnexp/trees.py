"""Full binary plane trees: parsing, the two canonical families, shape
enumeration, doad families, leaf heights, and poset queries.

A tree is written as a balanced-parenthesis string where "." is a leaf
and "(LR)" is an internal node with plane-ordered children L and R, so
"((..)(..))" is the perfect tree of depth 2 and "(((..).).)" the 4-leaf
comb. Leaves are numbered 1..n from left to right, and every vertex
carries the 0/1 path label of the left(0)/right(1) steps reaching it
from the root (root label: "").  Leaf numbering agrees with
lexicographic order of the path labels.

Leaf subsets are plain int bitmasks with leaf k on bit k-1.  The doad
family of a tree collects, for every vertex v, its descendant leaf set
and the complement (the anti-descendant set); these sets are the only
building blocks of all cover computations downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Tree",
    "parse_tree",
    "serialize_tree",
    "build_ht",
    "build_tt",
    "enumerate_shapes",
    "enumerate_plane_trees",
    "DoadFamily",
    "doad_family",
    "heights",
    "label_height",
    "label_dual_height",
    "Permutation",
    "all_permutations",
    "up_set",
    "down_set",
    "lca",
    "maxima_count",
    "full_mask",
    "mask_from_leaves",
    "leaves_of_mask",
]

SHAPE_ENUM_CAP = 16
PLANE_ENUM_CAP = 12  # Catalan growth; 12 leaves is already 58786 trees
LEAF_CAP = 32        # bitmask width


# ---------------------------------------------------------------------------
# tree structure

class Tree:
    """Immutable full binary plane tree.

    Vertices are ints 0..2n-2 in depth-first preorder (root = 0), which
    coincides with lexicographic order of the 0/1 path labels.  All
    structural arrays are tuples; instances hash and compare by their
    plane serialization.
    """

    __slots__ = ("n", "parent", "left", "right", "labels", "leaves",
                 "desc_masks", "text", "_leaf_no", "_by_label")

    def __init__(self, nested):
        parent, left, right, labels = [], [], [], []
        leaves = []

        def walk(node, par, label):
            vid = len(parent)
            parent.append(par)
            left.append(-1)
            right.append(-1)
            labels.append(label)
            if node is None:
                leaves.append(vid)
            else:
                a, b = node
                left[vid] = walk(a, vid, label + "0")
                right[vid] = walk(b, vid, label + "1")
            return vid

        walk(nested, -1, "")
        if len(leaves) > LEAF_CAP:
            raise ValueError(f"trees are limited to {LEAF_CAP} leaves, got {len(leaves)}")
        self.n = len(leaves)
        self.parent = tuple(parent)
        self.left = tuple(left)
        self.right = tuple(right)
        self.labels = tuple(labels)
        self.leaves = tuple(leaves)
        self._leaf_no = {v: i + 1 for i, v in enumerate(leaves)}
        self._by_label = {lab: v for v, lab in enumerate(labels)}

        masks = [0] * len(parent)
        for v in range(len(parent) - 1, -1, -1):
            if left[v] < 0:
                masks[v] = 1 << (self._leaf_no[v] - 1)
            else:
                masks[v] = masks[left[v]] | masks[right[v]]
        self.desc_masks = tuple(masks)
        self.text = _render(nested)

    # -- basic queries ------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return 0

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_leaf(self, v: int) -> bool:
        return self.left[v] < 0

    def leaf_vertex(self, leaf: int) -> int:
        """Vertex id of leaf number `leaf` (1-based, left to right)."""
        return self.leaves[leaf - 1]

    def leaf_number(self, v: int) -> int:
        """1-based leaf number of a leaf vertex, 0 for internal vertices."""
        return self._leaf_no.get(v, 0)

    def vertex_by_label(self, label: str) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise ValueError(f"no vertex with path label {label!r}") from None

    @property
    def internal(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.size) if self.left[v] >= 0)

    def anti_mask(self, v: int) -> int:
        return self.full_mask ^ self.desc_masks[v]

    def children(self, v: int) -> tuple[int, int]:
        if self.is_leaf(v):
            raise ValueError(f"vertex {v} is a leaf")
        return self.left[v], self.right[v]

    # -- derived trees ------------------------------------------------

    def mirror(self) -> "Tree":
        """The plane reflection: left/right swapped at every node."""
        return Tree(_mirror_nested(self._nested()))

    def shape_key(self) -> str:
        """Canonical string of the underlying unordered shape.

        At every node the two child strings are concatenated in
        lexicographic order; equal keys mean isomorphic shapes.
        """
        return _shape_key_nested(self._nested())

    def _nested(self):
        def rec(v):
            if self.is_leaf(v):
                return None
            return rec(self.left[v]), rec(self.right[v])
        return rec(0)

    # -- dunder -------------------------------------------------------

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Tree({self.text!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self.text == other.text

    def __hash__(self) -> int:
        return hash(self.text)


def _render(node) -> str:
    if node is None:
        return "."
    return "(" + _render(node[0]) + _render(node[1]) + ")"


def _mirror_nested(node):
    if node is None:
        return None
    return _mirror_nested(node[1]), _mirror_nested(node[0])


def _shape_key_nested(node) -> str:
    if node is None:
        return "."
    a = _shape_key_nested(node[0])
    b = _shape_key_nested(node[1])
    lo, hi = sorted((a, b))
    return "(" + lo + hi + ")"


# ---------------------------------------------------------------------------
# parsing / construction

def parse_tree(text: str) -> Tree:
    """Parse a balanced-parenthesis tree string into a Tree.

    Raises ValueError on empty input, unbalanced parentheses, or nodes
    with a child count other than two.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty tree string")
    nested, pos = _parse_node(s, 0)
    if pos != len(s):
        raise ValueError(f"trailing characters after position {pos}: {s[pos:]!r}")
    return Tree(nested)


def _parse_node(s: str, i: int):
    if i >= len(s):
        raise ValueError("unbalanced tree string: unexpected end of input")
    c = s[i]
    if c == ".":
        return None, i + 1
    if c != "(":
        raise ValueError(f"unexpected character {c!r} at position {i}")
    if i + 1 < len(s) and s[i + 1] == ")":
        raise ValueError(f"node at position {i} has no children")
    a, j = _parse_node(s, i + 1)
    if j < len(s) and s[j] == ")":
        raise ValueError(f"node at position {i} has only one child")
    b, j = _parse_node(s, j)
    if j >= len(s) or s[j] != ")":
        raise ValueError(f"node at position {i} has more than two children "
                         f"or is unclosed")
    return (a, b), j + 1


def serialize_tree(t: Tree) -> str:
    """Plane serialization; inverse of parse_tree on canonical strings."""
    return t.text


def build_ht(k: int) -> Tree:
    """Perfect binary tree of depth k (2**k leaves, all at depth k)."""
    if k < 1:
        raise ValueError(f"hierarchical tree needs depth >= 1, got {k}")
    if 2 ** k > LEAF_CAP:
        raise ValueError(f"depth {k} exceeds the {LEAF_CAP}-leaf cap")

    def rec(d):
        if d == 0:
            return None
        sub = rec(d - 1)
        return (sub, sub)

    return Tree(rec(k))


def build_tt(n: int) -> Tree:
    """Left-combed train track tree on n leaves.

    Every internal node has its right child a leaf; the left child
    carries all remaining leaves, so descendant sets are exactly the
    prefixes {1..l} of the leaf order.
    """
    if n < 2:
        raise ValueError(f"train track tree needs >= 2 leaves, got {n}")
    if n > LEAF_CAP:
        raise ValueError(f"{n} exceeds the {LEAF_CAP}-leaf cap")
    node = (None, None)
    for _ in range(n - 2):
        node = (node, None)
    return Tree(node)


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def _shape_strings(n: int) -> tuple[str, ...]:
    if n == 1:
        return (".",)
    out = []
    for a in range(1, n // 2 + 1):
        b = n - a
        if a < b:
            combos = itertools.product(_shape_strings(a), _shape_strings(b))
        else:
            combos = itertools.combinations_with_replacement(_shape_strings(a), 2)
        for sa, sb in combos:
            lo, hi = sorted((sa, sb))
            out.append("(" + lo + hi + ")")
    return tuple(sorted(out))


def enumerate_shapes(n: int) -> list[Tree]:
    """One canonical plane representative per unordered shape on n leaves.

    Output is sorted lexicographically on the canonical serialization;
    its length is the Wedderburn-Etherington number of n.
    """
    if not 2 <= n <= SHAPE_ENUM_CAP:
        raise ValueError(f"shape enumeration supports 2..{SHAPE_ENUM_CAP} leaves, got {n}")
    return [parse_tree(s) for s in _shape_strings(n)]


@lru_cache(maxsize=None)
def _plane_strings(n: int) -> tuple[str, ...]:
    if n == 1:
        return (".",)
    out = []
    for a in range(1, n):
        for sa in _plane_strings(a):
            for sb in _plane_strings(n - a):
                out.append("(" + sa + sb + ")")
    return tuple(sorted(out))


def enumerate_plane_trees(n: int) -> list[Tree]:
    """All plane trees on n leaves (Catalan many), lexicographic order."""
    if not 2 <= n <= PLANE_ENUM_CAP:
        raise ValueError(f"plane enumeration supports 2..{PLANE_ENUM_CAP} leaves, got {n}")
    return [parse_tree(s) for s in _plane_strings(n)]


# ---------------------------------------------------------------------------
# doad families

@dataclass(frozen=True)
class DoadFamily:
    """All nonempty descendant / anti-descendant leaf sets of one tree.

    masks      -- deduplicated set masks, ascending
    witnesses  -- mask -> tuple of (vertex, kind) with kind "desc"/"anti",
                  sorted by vertex id with "desc" first on ties
    """

    n: int
    masks: tuple[int, ...]
    witnesses: dict

    def __contains__(self, mask: int) -> bool:
        return mask in self.witnesses

    def __len__(self) -> int:
        return len(self.masks)


def doad_family(t: Tree) -> DoadFamily:
    """Collect d(v) for every vertex and a(v) for every v with a(v) != {}."""
    wit: dict[int, list] = {}
    for v in range(t.size):
        wit.setdefault(t.desc_masks[v], []).append((v, "desc"))
        am = t.anti_mask(v)
        if am:
            wit.setdefault(am, []).append((v, "anti"))
    witnesses = {
        m: tuple(sorted(ws, key=lambda w: (w[0], w[1] != "desc")))
        for m, ws in wit.items()
    }
    return DoadFamily(n=t.n, masks=tuple(sorted(witnesses)), witnesses=witnesses)


# ---------------------------------------------------------------------------
# heights

def label_height(label: str) -> int:
    """Number of 1s before the final 0 of a path label (0 if no 0)."""
    i = label.rfind("0")
    return label.count("1", 0, i) if i >= 0 else 0


def label_dual_height(label: str) -> int:
    """Number of 0s before the final 1 of a path label (0 if no 1)."""
    i = label.rfind("1")
    return label.count("0", 0, i) if i >= 0 else 0


def heights(t: Tree) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-leaf heights (h, h*) in left-to-right leaf order."""
    h = tuple(label_height(t.labels[v]) for v in t.leaves)
    hs = tuple(label_dual_height(t.labels[v]) for v in t.leaves)
    return h, hs


# ---------------------------------------------------------------------------
# poset queries (order = descendant relation; ancestors are larger)

def _is_ancestor(t: Tree, a: int, v: int) -> bool:
    return t.labels[v].startswith(t.labels[a])


def up_set(t: Tree, vs) -> frozenset:
    """All vertices that are an ancestor of (or equal to) some v in vs."""
    out = set()
    for v in vs:
        while v >= 0 and v not in out:
            out.add(v)
            v = t.parent[v]
    return frozenset(out)


def down_set(t: Tree, vs) -> frozenset:
    """All vertices that are a descendant of (or equal to) some v in vs."""
    vset = set(vs)
    return frozenset(u for u in range(t.size)
                     if any(_is_ancestor(t, v, u) for v in vset))


def lca(t: Tree, vs) -> int:
    """Lowest common ancestor of a nonempty set of vertices."""
    vs = list(vs)
    if not vs:
        raise ValueError("lca of an empty vertex set")
    labels = [t.labels[v] for v in vs]
    lo, hi = min(labels), max(labels)
    i = 0
    while i < len(lo) and lo[i] == hi[i]:
        i += 1
    return t.vertex_by_label(lo[:i])


def maxima_count(t: Tree, vs) -> int:
    """Number of maximal elements (no strict ancestor inside vs)."""
    labset = {t.labels[v] for v in vs}
    count = 0
    for lab in labset:
        if not any(lab[:k] in labset for k in range(len(lab))):
            count += 1
    return count


# ---------------------------------------------------------------------------
# permutations of the leaf set

class Permutation:
    """Bijection on {1..n} in one-line notation."""

    __slots__ = ("perm",)

    def __init__(self, seq):
        perm = tuple(int(x) for x in seq)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"not a permutation of 1..{len(perm)}: {perm}")
        self.perm = perm

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_text(cls, text: str, n: int) -> "Permutation":
        """Parse "id", a digit string like "3142", or separated entries."""
        s = text.strip().lower()
        if s in ("id", "identity", ""):
            return cls.identity(n)
        if "," in s or "-" in s or " " in s:
            parts = s.replace("-", ",").replace(" ", ",").split(",")
            entries = [p for p in parts if p]
        else:
            entries = list(s)
        perm = cls(entries)
        if perm.n != n:
            raise ValueError(f"permutation has {perm.n} entries, tree has {n} leaves")
        return perm

    @property
    def n(self) -> int:
        return len(self.perm)

    def __call__(self, leaf: int) -> int:
        return self.perm[leaf - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p - 1] = i + 1
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(self.perm[other.perm[i] - 1] for i in range(self.n))

    def pullback(self, mask: int) -> int:
        """Preimage bitmask: leaf l is in the result iff perm(l) is in mask."""
        out = 0
        for i, p in enumerate(self.perm):
            if (mask >> (p - 1)) & 1:
                out |= 1 << i
        return out

    def one_line(self) -> str:
        if self.n <= 9:
            return "".join(str(p) for p in self.perm)
        return "-".join(str(p) for p in self.perm)

    def is_identity(self) -> bool:
        return all(p == i + 1 for i, p in enumerate(self.perm))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __repr__(self) -> str:
        return f"Permutation({list(self.perm)})"


def all_permutations(n: int):
    """All permutations of {1..n} in lexicographic one-line order."""
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


# ---------------------------------------------------------------------------
# bitmask helpers

def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_from_leaves(leaves) -> int:
    out = 0
    for leaf in leaves:
        out |= 1 << (leaf - 1)
    return out


def leaves_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    leaf = 1
    while mask:
        if mask & 1:
            out.append(leaf)
        mask >>= 1
        leaf += 1
    return tuple(out)
