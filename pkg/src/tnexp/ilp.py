"""The cover-exponent integer program: build, solve exactly, export as LP.

For trees T, T' on n leaves and a leaf permutation, the program decides,
for every internal node w of T', whether to cover its pulled-back
descendant set (zu_w = 1) or anti-descendant set (zo_w = 1) by doad sets
of T, and minimizes the common cardinality bound c on all chosen covers.
Binary variables:

    xu_w_v  descendant set of v used in the cover of w's descendant side
    xo_w_v  descendant set of v used in the cover of w's anti side
    yu_w_v  anti-descendant set of v used for w's descendant side
    yo_w_v  anti-descendant set of v used for w's anti side
    zu_w / zo_w  which side of w is covered

with w, v written as 0/1 path labels ("r" for the root).  A variable is
only registered when the corresponding set is nonempty and contained in
the target side, which makes every feasible cover exact: each leaf of
the chosen side is covered and no chosen set sticks out.  The covers at
leaf nodes of T' are singletons and are folded into the explicit bound
c >= 1 instead of per-leaf rows.

Row groups, in order: side choice per node; leaf covering rows for the
descendant sides, then the anti sides; cardinality rows per node for
each side; the c floor.  The LP text uses Minimize / Subject To /
Binary / End sections; c stays continuous since it is integral at any
optimum over binary x, y, z.

The solver does not touch the subset tables: per node and side it runs
a small exact branch-and-bound (greedy upper bound, counting lower
bound) and combines sides by max-of-min, so its optimum is an
independent cross-check of the cover-table route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .trees import Permutation, Tree, leaves_of_mask

__all__ = ["IpRow", "IpModel", "IpSolution", "build_ip", "solve_ip", "export_lp"]


@dataclass(frozen=True)
class IpRow:
    name: str
    terms: tuple        # ((coef, var), ...)
    sense: str          # ">=" or "<="
    rhs: int


@dataclass(frozen=True)
class IpModel:
    tree: str
    tree_prime: str
    perm: str
    variables: tuple        # all registered variable names, c last
    binaries: tuple
    rows: tuple             # IpRow, grouped as described in the module docstring
    fixed_zero: tuple       # variable names excluded by the subset conditions
    node_sides: dict        # w-label -> {"desc"|"anti": (target_mask, ((var, set_mask), ...))}

    def to_dict(self) -> dict:
        return {
            "tree": self.tree,
            "tree_prime": self.tree_prime,
            "perm": self.perm,
            "num_variables": len(self.variables),
            "num_rows": len(self.rows),
            "variables": list(self.variables),
            "fixed_zero": list(self.fixed_zero),
        }


@dataclass(frozen=True)
class IpSolution:
    objective: int
    assignment: dict        # var -> value (binaries 0/1, plus "c")
    per_node: dict          # w-label -> {"side", "count", "cover": [leaf lists]}

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "per_node": {w: {"side": d["side"], "count": d["count"],
                             "cover": [list(leaves_of_mask(m)) for m in d["cover"]]}
                         for w, d in self.per_node.items()},
            "assignment": {k: v for k, v in self.assignment.items() if v},
        }


def _lab(t: Tree, v: int) -> str:
    return t.labels[v] or "r"


def build_ip(t: Tree, t_prime: Tree, perm: Optional[Permutation] = None) -> IpModel:
    """Assemble the integer program for covering T' by doad sets of T."""
    if t.n != t_prime.n:
        raise ValueError(f"leaf counts differ: {t.n} vs {t_prime.n}")
    if perm is None:
        perm = Permutation.identity(t.n)
    if perm.n != t.n:
        raise ValueError(f"permutation size {perm.n} does not match {t.n} leaves")
    full = t.full_mask
    nodes = [w for w in t_prime.internal]

    variables: list[str] = []
    binaries: list[str] = []
    fixed_zero: list[str] = []
    node_sides: dict = {}
    cover_rows_u: list[IpRow] = []
    cover_rows_o: list[IpRow] = []
    choose_rows: list[IpRow] = []
    card_rows_u: list[IpRow] = []
    card_rows_o: list[IpRow] = []

    for w in nodes:
        wl = _lab(t_prime, w)
        d_target = perm.pullback(t_prime.desc_masks[w])
        targets = {"desc": d_target, "anti": full ^ d_target}
        sides = {}
        for side, prefix_x, prefix_y, z_name in (
                ("desc", "xu", "yu", f"zu_{wl}"),
                ("anti", "xo", "yo", f"zo_{wl}")):
            target = targets[side]
            cands = []
            for v in range(t.size):
                vl = _lab(t, v)
                for prefix, set_mask in ((prefix_x, t.desc_masks[v]),
                                         (prefix_y, t.anti_mask(v))):
                    if not set_mask:
                        continue    # the root has no anti-descendant set
                    name = f"{prefix}_{wl}_{vl}"
                    if set_mask & ~target:
                        fixed_zero.append(name)
                    else:
                        cands.append((name, set_mask))
            sides[side] = (target, tuple(cands))

            binaries.append(z_name)
            variables.append(z_name)
            for name, _ in cands:
                binaries.append(name)
                variables.append(name)

            # one covering row per leaf of the target side
            for leaf in leaves_of_mask(target):
                bit = 1 << (leaf - 1)
                terms = tuple((1, name) for name, m in cands if m & bit)
                terms += ((-1, z_name),)
                tag = "u" if side == "desc" else "o"
                cover_rows = cover_rows_u if side == "desc" else cover_rows_o
                cover_rows.append(IpRow(f"cover_{tag}_{wl}_{leaf}", terms, ">=", 0))

        node_sides[wl] = sides
        choose_rows.append(IpRow(f"choose_{wl}",
                                 ((1, f"zu_{wl}"), (1, f"zo_{wl}")), ">=", 1))
        for side, tag, card_rows in (("desc", "u", card_rows_u),
                                     ("anti", "o", card_rows_o)):
            terms = tuple((1, name) for name, _ in node_sides[wl][side][1])
            card_rows.append(IpRow(f"card_{tag}_{wl}", terms + ((-1, "c"),), "<=", 0))

    variables.append("c")
    rows = (tuple(choose_rows) + tuple(cover_rows_u) + tuple(cover_rows_o)
            + tuple(card_rows_u) + tuple(card_rows_o)
            + (IpRow("c_min", ((1, "c"),), ">=", 1),))
    return IpModel(tree=t.text, tree_prime=t_prime.text, perm=perm.one_line(),
                   variables=tuple(variables), binaries=tuple(binaries),
                   rows=rows, fixed_zero=tuple(fixed_zero), node_sides=node_sides)


# ---------------------------------------------------------------------------
# exact solver

def _greedy_cover(cands: tuple, target: int) -> list:
    chosen = []
    uncovered = target
    while uncovered:
        best = max(cands, key=lambda c: (bin(c[1] & uncovered).count("1"), c[1]))
        if not best[1] & uncovered:
            raise RuntimeError("target side not coverable; singleton sets missing")
        chosen.append(best[1])
        uncovered &= ~best[1]
    return chosen


def _min_cover_bnb(cands: tuple, target: int):
    """Exact minimum cover of `target` by the candidate sets (all subsets of it).

    Branches on the lowest uncovered leaf; prunes with the counting
    bound ceil(|uncovered| / largest candidate).  Returns (count, masks).
    """
    if not target:
        return 0, ()
    masks = sorted({m for _, m in cands})
    best_sol = _greedy_cover(cands, target)
    best = len(best_sol)
    max_size = max(bin(m).count("1") for m in masks)
    by_bit: dict[int, list] = {}
    for m in masks:
        low = 1
        while low <= m:
            if m & low:
                by_bit.setdefault(low, []).append(m)
            low <<= 1

    chosen: list[int] = []

    def rec(uncovered: int, depth: int):
        nonlocal best, best_sol
        if not uncovered:
            if depth < best:
                best = depth
                best_sol = list(chosen)
            return
        need = -(-bin(uncovered).count("1") // max_size)
        if depth + need >= best:
            return
        low = uncovered & -uncovered
        for m in by_bit.get(low, ()):
            chosen.append(m)
            rec(uncovered & ~m, depth + 1)
            chosen.pop()

    rec(target, 0)
    return best, tuple(best_sol)


def solve_ip(model: IpModel) -> IpSolution:
    """Exact optimum of the program.

    The rows couple only through c, so the optimum decomposes into
    independent minimum covers per node and side, combined by
    max-of-min and floored by the c >= 1 row.
    """
    objective = 1
    per_node = {}
    assignment = {v: 0 for v in model.variables}
    for wl, sides in model.node_sides.items():
        results = {}
        for side in ("desc", "anti"):
            target, cands = sides[side]
            results[side] = _min_cover_bnb(cands, target)
        side = "anti" if results["anti"][0] < results["desc"][0] else "desc"
        count, masks = results[side]
        objective = max(objective, count)
        per_node[wl] = {"side": side, "count": count, "cover": masks}

        assignment[f"z{'u' if side == 'desc' else 'o'}_{wl}"] = 1
        target, cands = sides[side]
        by_mask: dict[int, str] = {}
        for name, m in cands:
            by_mask.setdefault(m, name)    # first registered = x before y, low v first
        for m in masks:
            assignment[by_mask[m]] = 1
    assignment["c"] = objective
    return IpSolution(objective=objective, assignment=assignment, per_node=per_node)


# ---------------------------------------------------------------------------
# LP text export

def export_lp(model: IpModel, path=None) -> str:
    """Deterministic LP-format text of the model; optionally written to path."""
    lines = [
        f"\\ cover-exponent integer program",
        f"\\ tree      : {model.tree}",
        f"\\ tree_prime: {model.tree_prime}",
        f"\\ perm      : {model.perm}",
        "Minimize",
        " obj: c",
        "Subject To",
    ]
    for row in model.rows:
        terms = []
        for i, (coef, var) in enumerate(row.terms):
            if i == 0:
                terms.append(var if coef >= 0 else f"- {var}")
            else:
                terms.append(f"+ {var}" if coef >= 0 else f"- {var}")
        expr = " ".join(terms) if terms else "0 c"
        lines.append(f" {row.name}: {expr} {row.sense} {row.rhs}")
    lines.append("Binary")
    for name in model.binaries:
        lines.append(f" {name}")
    lines.append("End")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    return text
