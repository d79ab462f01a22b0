"""Exhaustive containment-exponent search over tree shapes and permutations.

For n leaves the instance space is every ordered pair of unordered
shapes times every permutation of the second tree's leaves.  One cover
table per shape is enough: a single instance evaluation is a handful of
table lookups at the pulled-back node sets, so everything is vectorized
over the permutation axis with one precomputed pullback table
(perm, mask) -> pulled mask.

Results are kept as one uint8 array per (shape, shape) pair in
lexicographic permutation order, so the aggregates and serializations
below are deterministic.  The CSV holds one row per instance (at n = 8
that is 21.3M rows, around 2 GB -- request it deliberately); the JSON
summary carries the shape list, per-pair aggregates, and a sha256 digest
of the raw per-instance arrays, which pins the full result down
byte-exactly at a few KB.
"""

from __future__ import annotations

import csv
import hashlib
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import poset_table
from .covers import build_cover_table
from .trees import doad_family, enumerate_shapes

__all__ = ["SearchResult", "run_search", "write_results",
           "verify_against_reference", "DiffReport"]

FULL_SEARCH_CAP = 8       # n! blow-up; larger n must sample permutations
SAMPLED_SEARCH_CAP = 12
KINDS = ("cover", "poset", "naive")
CSV_COLUMNS = {"cover": "cover_bound", "poset": "poset_bound", "naive": "naive_max_bound"}


@dataclass(frozen=True)
class SearchResult:
    """Per-instance bound values for all (shape, shape, perm) instances.

    data[kind][(i, j)] is a uint8 array over the permutation axis, in
    the lexicographic order of `perms`.
    """

    n: int
    shapes: tuple            # canonical strings, lexicographic
    perms: tuple             # one-line strings, lexicographic
    sampled: bool
    kinds: tuple
    data: dict

    @property
    def instance_count(self) -> int:
        return len(self.shapes) ** 2 * len(self.perms)

    def values(self, kind: str, i: int, j: int) -> np.ndarray:
        return self.data[kind][(i, j)]

    def aggregate(self, kind: str) -> dict:
        """Per-pair min/max/histogram over the permutation axis."""
        out = {}
        for (i, j), arr in sorted(self.data[kind].items()):
            counts = np.bincount(arr)
            hist = {int(v): int(c) for v, c in enumerate(counts) if c}
            out[(i, j)] = {"min": int(arr.min()), "max": int(arr.max()),
                           "histogram": hist}
        return out

    def digest(self, kind: str) -> str:
        h = hashlib.sha256()
        for key in sorted(self.data[kind]):
            h.update(self.data[kind][key].tobytes())
        return h.hexdigest()


def _pullback_table(n: int, perms: np.ndarray) -> np.ndarray:
    """Pulled-back mask for every (permutation, mask) pair.

    perms has shape (P, n) with 1-based entries; output[p, m] has leaf l
    set iff perms[p, l-1] is a leaf of m.
    """
    p_count = perms.shape[0]
    weights = (1 << np.arange(n, dtype=np.int64))
    shifts = (perms - 1).astype(np.int64)
    out = np.zeros((p_count, 1 << n), dtype=np.uint16 if n > 8 else np.uint8)
    for mask in range(1 << n):
        bits = (mask >> shifts) & 1
        out[:, mask] = bits @ weights
    return out


def _lex_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8)


def _sample_perms(n: int, count: int, seed: int) -> np.ndarray:
    """Distinct random permutations, returned in lexicographic order.

    Falls back to the complete lexicographic set when `count` reaches n!.
    """
    if count < 1:
        raise ValueError(f"need at least one sampled permutation, got {count}")
    if count >= math.factorial(n):
        return _lex_perms(n)
    rng = np.random.default_rng(seed)
    seen = set()
    while len(seen) < count:
        seen.add(tuple(int(x) + 1 for x in rng.permutation(n)))
    return np.array(sorted(seen), dtype=np.int8)


def _perm_strings(perms: np.ndarray) -> tuple:
    n = perms.shape[1]
    if n <= 9:
        return tuple("".join(str(int(x)) for x in row) for row in perms)
    return tuple("-".join(str(int(x)) for x in row) for row in perms)


def run_search(n: int, kinds=("cover",), sample_perms=None, seed: int = 0,
               workers=None) -> SearchResult:
    """Evaluate the chosen bound kinds on every (shape, shape, perm) instance.

    Full permutation products are allowed for 4 <= n <= 8; beyond that a
    sampled permutation set must be requested (flagged in the result).
    `workers` (default: env TNEXP_WORKERS or 1) parallelizes over shape
    pairs; the output is identical regardless of worker count.
    """
    if sample_perms is None and not 4 <= n <= FULL_SEARCH_CAP:
        raise ValueError(
            f"full search supports 4..{FULL_SEARCH_CAP} leaves (got n={n}); "
            "pass sample_perms for larger n")
    if sample_perms is not None and not 4 <= n <= SAMPLED_SEARCH_CAP:
        raise ValueError(f"sampled search supports 4..{SAMPLED_SEARCH_CAP} leaves")
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise ValueError(f"unknown bound kinds {bad}; choose from {KINDS}")
    if workers is None:
        workers = int(os.environ.get("TNEXP_WORKERS", "1"))

    shapes = enumerate_shapes(n)
    full = (1 << n) - 1
    if sample_perms is None:
        perms = _lex_perms(n)
        sampled = False
    else:
        perms = _sample_perms(n, int(sample_perms), seed)
        sampled = True
    pb = _pullback_table(n, perms)

    cover_tables = [build_cover_table(t).counts for t in shapes]
    poset_tables = [poset_table(t) for t in shapes] if "poset" in kinds else None

    # per target shape: the node/doad masks that drive each bound kind
    node_masks = [np.array([t.desc_masks[w] for w in t.internal if w != t.root],
                           dtype=np.int64) for t in shapes]
    doad_masks = [np.array(doad_family(t).masks, dtype=np.int64) for t in shapes]
    nontrivial = [m[m != full] for m in doad_masks]

    def eval_pair(pair):
        i, j = pair
        out = {}
        if node_masks[j].size:
            cols = pb[:, node_masks[j]].astype(np.int64)
            nd = cover_tables[i][cols]
            na = cover_tables[i][cols ^ full]
            per_node = np.minimum(nd, na)
            out["cover"] = np.maximum(per_node.max(axis=1), 1).astype(np.uint8)
        else:
            out["cover"] = np.ones(len(perms), dtype=np.uint8)
        if "poset" in kinds:
            cols = pb[:, nontrivial[j]].astype(np.int64)
            out["poset"] = np.maximum(poset_tables[i][cols].max(axis=1), 1).astype(np.uint8)
        if "naive" in kinds:
            cols = pb[:, doad_masks[j]].astype(np.int64)
            out["naive"] = cover_tables[i][cols].max(axis=1).astype(np.uint8)
        return out

    pairs = list(itertools.product(range(len(shapes)), repeat=2))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(eval_pair, pairs))
    else:
        results = [eval_pair(p) for p in pairs]

    data = {k: {} for k in kinds}
    for pair, res in zip(pairs, results):
        for k in kinds:
            data[k][pair] = res[k]
    return SearchResult(n=n, shapes=tuple(t.text for t in shapes),
                        perms=_perm_strings(perms), sampled=sampled,
                        kinds=tuple(kinds), data=data)


# ---------------------------------------------------------------------------
# serialization

def write_results(result: SearchResult, format: str, path) -> None:
    """Write a search result as per-instance CSV or aggregate JSON."""
    if format == "csv":
        _write_csv(result, path)
    elif format == "json":
        _write_json(result, path)
    else:
        raise ValueError(f"unknown format {format!r} (csv or json)")


def _write_csv(result: SearchResult, path) -> None:
    # streamed one shape pair at a time: the full n=8 table is ~2 GB
    cols = ["n", "shape_a", "shape_b", "perm_oneline"]
    cols += [CSV_COLUMNS[k] for k in result.kinds]
    n_str = str(result.n)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for i, a in enumerate(result.shapes):
            for j, b in enumerate(result.shapes):
                arrays = [result.data[k][(i, j)] for k in result.kinds]
                prefix = f"{n_str},{a},{b},"
                fh.write("".join(
                    f"{prefix}{perm},{','.join(str(int(arr[p])) for arr in arrays)}\n"
                    for p, perm in enumerate(result.perms)))


def _write_json(result: SearchResult, path) -> None:
    payload = {
        "n": result.n,
        "shapes": list(result.shapes),
        "perm_count": len(result.perms),
        "sampled": result.sampled,
        "kinds": list(result.kinds),
        "instances": result.instance_count,
        "pairs": [],
        "digests": {k: result.digest(k) for k in result.kinds},
    }
    aggs = {k: result.aggregate(k) for k in result.kinds}
    for i in range(len(result.shapes)):
        for j in range(len(result.shapes)):
            entry = {"a": i, "b": j}
            for k in result.kinds:
                agg = aggs[k][(i, j)]
                entry[k] = {"min": agg["min"], "max": agg["max"],
                            "histogram": {str(v): c for v, c in agg["histogram"].items()}}
            payload["pairs"].append(entry)
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# reference comparison

@dataclass(frozen=True)
class DiffReport:
    compared: int
    mismatches: tuple      # (key, column, ours, theirs)
    missing_in_reference: tuple
    missing_in_ours: tuple

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.missing_in_reference or self.missing_in_ours)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "compared": self.compared,
            "mismatches": [list(m) for m in self.mismatches],
            "missing_in_reference": [list(k) for k in self.missing_in_reference],
            "missing_in_ours": [list(k) for k in self.missing_in_ours],
        }


def _read_instances(path, column_map=None) -> dict:
    column_map = column_map or {}
    key_cols = ["n", "shape_a", "shape_b", "perm_oneline"]
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty or unreadable CSV")
        rename = {column_map.get(c, c): c for c in key_cols + list(CSV_COLUMNS.values())}
        rows = {}
        for lineno, raw in enumerate(reader, start=2):
            row = {rename[k]: v for k, v in raw.items() if k in rename}
            try:
                key = tuple(row[c] for c in key_cols)
            except KeyError as exc:
                raise ValueError(f"{path}:{lineno}: missing column {exc}") from None
            values = {c: int(row[c]) for c in CSV_COLUMNS.values() if c in row}
            if not values:
                raise ValueError(f"{path}:{lineno}: no bound columns found")
            rows[key] = values
    return rows


def verify_against_reference(ours_path, reference_path, adapter=None) -> DiffReport:
    """Compare two per-instance CSVs row by row.

    `adapter` maps our column names to the reference file's column names
    (e.g. {"cover_bound": "exponent"}); unmapped columns must match by
    name.  Only bound columns present in both files are compared.
    """
    ours = _read_instances(ours_path)
    theirs = _read_instances(reference_path, column_map=adapter)
    mismatches = []
    compared = 0
    for key in sorted(set(ours) & set(theirs)):
        shared = set(ours[key]) & set(theirs[key])
        for col in sorted(shared):
            compared += 1
            if ours[key][col] != theirs[key][col]:
                mismatches.append((key, col, ours[key][col], theirs[key][col]))
    missing_ref = tuple(sorted(set(ours) - set(theirs)))
    missing_ours = tuple(sorted(set(theirs) - set(ours)))
    return DiffReport(compared=compared, mismatches=tuple(mismatches),
                      missing_in_reference=missing_ref, missing_in_ours=missing_ours)
