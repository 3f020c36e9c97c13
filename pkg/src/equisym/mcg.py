"""Topological equivalence of actions: braid/genus-one moves, Aut(G), orbit partition.

Two generating vectors are equivalent when one is obtained from the other by
mapping-class moves on the Fuchsian side and an automorphism of ``G``.  For
``h = 0`` the braid moves generate; for ``h = 1`` the genus-one moves
``A1, A2, C1, C2`` are added.  Orbits are computed on the finite set of
valid vectors: every move is a bijection of that set, so orbits are the
connected components of the move graph.

A braid between cone points of different periods permutes the period order.
The graph is therefore built over every rearrangement of the periods and
its components are then restricted to vectors in sorted period order; a
path between two sorted vectors is exactly a braid whose permutation
preserves the periods.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapabilityError, ShapeError
from .genvec import ENUMERATION_LIMIT, GeneratingVector, period_orderings, search_size, vector_array
from .group import Automorphism, Group, automorphism_generators
from .signature import Signature, format_signature

MOVE_SET_VERSION = "braid+A1+A2+C1+C2+aut/1"

KINDS = ("braid", "braid_inv", "A1", "A2", "C1", "C2", "aut")


@dataclass(frozen=True)
class Move:
    kind: str
    index: int = 0
    aut: Automorphism | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ShapeError(f"unknown move kind {self.kind!r}")
        if self.kind == "aut" and self.aut is None:
            raise ShapeError("aut move needs an automorphism")

    def __str__(self):
        if self.kind == "aut":
            return f"Aut({self.aut.label or self.aut.map})"
        name = {"braid": "Braid", "braid_inv": "BraidInv"}.get(self.kind, self.kind)
        return f"{name}({self.index})"

    @classmethod
    def braid(cls, i: int) -> "Move":
        return cls("braid", i)

    @classmethod
    def braid_inv(cls, i: int) -> "Move":
        return cls("braid_inv", i)

    @classmethod
    def a1(cls, n: int) -> "Move":
        return cls("A1", n)

    @classmethod
    def a2(cls, n: int) -> "Move":
        return cls("A2", n)

    @classmethod
    def c1(cls, i: int) -> "Move":
        return cls("C1", i)

    @classmethod
    def c2(cls, i: int) -> "Move":
        return cls("C2", i)

    @classmethod
    def automorphism(cls, aut: Automorphism) -> "Move":
        return cls("aut", 0, aut)

    def check_shape(self, sig: Signature) -> None:
        h, l = sig.h, sig.l
        if self.kind in ("braid", "braid_inv"):
            if not 1 <= self.index <= l - 1:
                raise ShapeError(f"{self} needs 1 <= i <= l-1 = {l - 1}")
        elif self.kind in ("A1", "A2", "C1", "C2"):
            if h != 1:
                raise ShapeError(f"{self} is only defined for orbit genus 1 (h = {h})")
            if self.kind in ("C1", "C2") and not 1 <= self.index <= l:
                raise ShapeError(f"{self} needs 1 <= i <= l = {l}")


# -- single-vector moves ----------------------------------------------------------


def apply_move(vec: GeneratingVector, move: Move) -> GeneratingVector:
    G, sig = vec.group, vec.signature
    move.check_shape(sig)
    if move.kind == "aut":
        return apply_aut(vec, move.aut)
    t, inv = G.table, G.inverse
    x = list(vec.elliptic)
    hyp = list(vec.hyperbolic)
    periods = list(vec.periods)
    i = move.index
    if move.kind in ("braid", "braid_inv"):
        periods[i - 1], periods[i] = periods[i], periods[i - 1]
    if move.kind == "braid":
        a, b = x[i - 1], x[i]
        x[i - 1], x[i] = b, G.conjugate(a, b)
    elif move.kind == "braid_inv":
        a, b = x[i - 1], x[i]
        x[i - 1], x[i] = G.conjugate(b, inv[a]), a
    elif move.kind == "A1":
        hyp[1] = t[hyp[1]][G.power(hyp[0], i)]
    elif move.kind == "A2":
        hyp[0] = t[hyp[0]][G.power(hyp[1], i)]
    else:
        a, b = hyp
        w = G.product(x[: i - 1])
        z = G.product(x[i:])
        if move.kind == "C1":
            u = G.product((inv[b], w, z))
            v = G.product((z, inv[b], w))
            hyp[0] = t[u][a]
        else:
            u = G.product((w, z, a))
            v = G.product((z, a, w))
            hyp[1] = t[u][b]
        x[i - 1] = G.product((v, x[i - 1], inv[v]))
    return GeneratingVector(G, sig, tuple(hyp), tuple(x), tuple(periods))


def apply_aut(vec: GeneratingVector, aut: Automorphism) -> GeneratingVector:
    if aut.parent is not vec.group:
        raise ShapeError("automorphism belongs to a different group")
    m = aut.map
    return GeneratingVector(
        vec.group, vec.signature,
        tuple(m[x] for x in vec.hyperbolic), tuple(m[x] for x in vec.elliptic), vec.periods,
    )


# -- whole-array moves --------------------------------------------------------------


def apply_move_array(G: Group, sig: Signature, arr: np.ndarray, move: Move) -> np.ndarray:
    """Apply ``move`` to every row of an ``(count, 2h + l)`` vector array."""
    move.check_shape(sig)
    T = G.np_table
    inv = np.asarray(G.inverse, dtype=np.int64)
    out = arr.copy()
    if move.kind == "aut":
        return np.asarray(move.aut.map, dtype=np.int64)[arr]
    k = 2 * sig.h
    i = move.index

    def conj(x, g):  # g^-1 x g
        return T[T[inv[g], x], g]

    def prod(cols):
        acc = np.full(len(arr), G.identity, dtype=np.int64)
        for c in cols:
            acc = T[acc, c]
        return acc

    if move.kind == "braid":
        a, b = arr[:, k + i - 1], arr[:, k + i]
        out[:, k + i - 1] = b
        out[:, k + i] = conj(a, b)
    elif move.kind == "braid_inv":
        a, b = arr[:, k + i - 1], arr[:, k + i]
        out[:, k + i - 1] = conj(b, inv[a])
        out[:, k + i] = a
    elif move.kind in ("A1", "A2"):
        n = i % G.exponent
        src, dst = (0, 1) if move.kind == "A1" else (1, 0)
        power = np.asarray([G.power(x, n) for x in range(G.order)], dtype=np.int64)
        out[:, dst] = T[arr[:, dst], power[arr[:, src]]]
    else:
        a, b = arr[:, 0], arr[:, 1]
        xs = [arr[:, k + j] for j in range(sig.l)]
        w = prod(xs[: i - 1])
        z = prod(xs[i:])
        if move.kind == "C1":
            u = prod([inv[b], w, z])
            v = prod([z, inv[b], w])
            out[:, 0] = T[u, a]
        else:
            u = prod([w, z, a])
            v = prod([z, a, w])
            out[:, 1] = T[u, b]
        out[:, k + i - 1] = prod([v, xs[i - 1], inv[v]])
    return out


def generating_moves(G: Group, sig: Signature) -> list[Move]:
    """Moves whose closure is the full equivalence (braids, genus-one moves, Aut gens)."""
    if sig.h >= 2:
        raise CapabilityError(
            f"mapping-class moves for orbit genus h >= 2 are not implemented (signature {sig})"
        )
    moves = [Move.braid(i) for i in range(1, sig.l)]
    if sig.h == 1:
        moves += [Move.a1(1), Move.a2(1)]
        moves += [Move.c1(i) for i in range(1, sig.l + 1)]
        moves += [Move.c2(i) for i in range(1, sig.l + 1)]
    moves += [Move.automorphism(a) for a in automorphism_generators(G)]
    return moves


# -- orbit partition ------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    representative: GeneratingVector
    size: int


@dataclass
class StratumReport:
    group: Group
    signature: Signature
    orbit_count: int
    orbits: list[Orbit]
    total: int
    move_set_version: str = MOVE_SET_VERSION
    # every rearrangement of the periods, sorted by code; ``canonical`` marks
    # the rows in sorted period order (the ones counted in ``total``)
    vectors: np.ndarray | None = field(default=None, repr=False)
    labels: np.ndarray | None = field(default=None, repr=False)
    canonical: np.ndarray | None = field(default=None, repr=False)

    def _codes(self) -> np.ndarray:
        codes = self.__dict__.get("_code_cache")
        if codes is None:
            codes = encode(self.group.order, self.vectors)
            self.__dict__["_code_cache"] = codes
        return codes

    def label_of(self, vec: GeneratingVector) -> int:
        """Index into ``orbits`` of the orbit containing ``vec``."""
        if self.vectors is None:
            raise CapabilityError("report was loaded from cache without vector data")
        if vec.group is not self.group or vec.signature != self.signature:
            raise ShapeError("vector does not belong to this (group, signature)")
        codes = self._codes()
        code = encode(self.group.order, np.asarray([vec.flat], dtype=np.int64))[0]
        pos = int(np.searchsorted(codes, code))
        if pos >= len(codes) or codes[pos] != code:
            raise ShapeError(f"{vec} is not a surface-kernel generating vector")
        return int(self.labels[pos])

    def orbit_vectors(self, index: int) -> np.ndarray:
        """Vectors (sorted period order) of orbit ``index``."""
        return self.vectors[(self.labels == index) & self.canonical]

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "signature": format_signature(self.signature),
            "orbit_count": self.orbit_count,
            "total_vectors": self.total,
            "move_set_version": self.move_set_version,
            "orbits": [
                {"representative": str(o.representative), "size": o.size} for o in self.orbits
            ],
        }


def encode(base: int, arr: np.ndarray) -> np.ndarray:
    """Base-``|G|`` integer code per row; lexicographic order is preserved."""
    width = arr.shape[1]
    if base ** width >= 2 ** 62:
        raise CapabilityError(f"vectors of width {width} over order {base} overflow 64-bit codes")
    codes = np.zeros(len(arr), dtype=np.int64)
    for j in range(width):
        codes = codes * base + arr[:, j]
    return codes


def _union_array(G: Group, sig: Signature, threads: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectors for every period rearrangement, sorted by code, plus the canonical mask."""
    parts = [vector_array(G, sig, threads, p) for p in period_orderings(sig)]
    arr = np.concatenate(parts)
    order = np.argsort(encode(G.order, arr), kind="stable")
    arr = arr[order]
    k = 2 * sig.h
    orders = np.asarray(G.element_orders, dtype=np.int64)
    canonical = np.all(orders[arr[:, k:]] == np.asarray(sig.periods, dtype=np.int64), axis=1)
    return arr, canonical


def orbits(G: Group, sig: Signature, threads: int = 1, limit: int = ENUMERATION_LIMIT) -> StratumReport:
    """Partition all surface-kernel vectors of (G, sig) into equivalence classes."""
    cache = G.__dict__.setdefault("_stratum_reports", {})
    if sig in cache:
        return cache[sig]
    moves = generating_moves(G, sig)
    estimate = sum(search_size(G, sig, p) for p in period_orderings(sig))
    if estimate > limit:
        raise CapabilityError(
            f"enumeration for {G.spec} with {sig} visits ~{estimate} candidates (> {limit})"
        )
    arr, canonical = _union_array(G, sig, threads)
    count = len(arr)
    if count == 0:
        report = StratumReport(
            G, sig, 0, [], 0, vectors=arr, labels=np.zeros(0, dtype=np.int64), canonical=canonical,
        )
        cache[sig] = report
        return report
    codes = encode(G.order, arr)
    rows, cols = [], []
    idx = np.arange(count)
    for mv in moves:
        img = encode(G.order, apply_move_array(G, sig, arr, mv))
        pos = np.searchsorted(codes, img)
        pos = np.minimum(pos, count - 1)
        if not np.array_equal(codes[pos], img):
            raise CapabilityError(f"{mv} left the set of valid vectors; move table is broken")
        rows.append(idx)
        cols.append(pos)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(count, count))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # relabel components by their lexicographically least canonical member
    first = np.full(comp.max() + 1, count, dtype=np.int64)
    np.minimum.at(first, comp[canonical], idx[canonical])
    if np.any(first == count):
        raise CapabilityError("a component has no vector in sorted period order")
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    labels = relabel[comp]
    sizes = np.bincount(labels[canonical], minlength=len(order))
    orbit_list = [
        Orbit(GeneratingVector.from_flat(G, sig, arr[first[o]].tolist()), int(sizes[k]))
        for k, o in enumerate(order)
    ]
    total = int(canonical.sum())
    report = StratumReport(
        G, sig, len(orbit_list), orbit_list, total, vectors=arr, labels=labels, canonical=canonical,
    )
    cache[sig] = report
    return report


def are_equivalent(v1: GeneratingVector, v2: GeneratingVector) -> bool:
    if v1.group is not v2.group or v1.signature != v2.signature:
        raise ShapeError("vectors must share group and signature")
    if v1.flat == v2.flat:
        return True
    report = orbits(v1.group, v1.signature)
    return report.label_of(v1) == report.label_of(v2)


# -- stratum cache ------------------------------------------------------------------


def _cache_file(cache_dir) -> Path:
    return Path(cache_dir) / "strata.json"


def _cache_key(G: Group, sig: Signature) -> str:
    return f"{G.spec}|{format_signature(sig)}"


def load_cached(cache_dir, G: Group, sig: Signature) -> dict | None:
    path = _cache_file(cache_dir)
    if not path.exists():
        return None
    entry = json.loads(path.read_text()).get(_cache_key(G, sig))
    if entry is None or entry.get("move_set_version") != MOVE_SET_VERSION:
        return None
    return entry


def store_cached(cache_dir, report: StratumReport) -> None:
    path = _cache_file(cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = json.loads(path.read_text()) if path.exists() else {}
    data[_cache_key(report.group, report.signature)] = report.to_json()
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
