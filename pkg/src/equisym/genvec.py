"""Surface-kernel generating vectors: validation and exhaustive enumeration.

A generating vector for ``G`` and ``(h; m_1..m_l)`` is a tuple
``(a_1, b_1, ..., a_h, b_h; x_1, ..., x_l)`` of elements with

* ``prod [a_i, b_i] * prod x_j = 1``,
* ``x_j`` of order exactly ``m_j``,
* the entries generating ``G``.

Vectors are handled internally as flat index tuples, hyperbolic part first.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import CapabilityError, NotAdmissibleError, ParseError, ShapeError
from .group import Group, generates
from .signature import Signature, rh_genus

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 20_000_000  # candidate tuples an exhaustive listing may visit


@dataclass(frozen=True, eq=False)
class GeneratingVector:
    """Images of the canonical generators.

    ``periods`` is the order in which the elliptic entries carry the
    signature's periods; it defaults to the signature's sorted order and only
    differs after braid moves that swap unequal periods.
    """

    group: Group
    signature: Signature
    hyperbolic: tuple[int, ...]
    elliptic: tuple[int, ...]
    periods: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "hyperbolic", tuple(int(x) for x in self.hyperbolic))
        object.__setattr__(self, "elliptic", tuple(int(x) for x in self.elliptic))
        if len(self.hyperbolic) != 2 * self.signature.h or len(self.elliptic) != self.signature.l:
            raise ShapeError(
                f"vector shape ({len(self.hyperbolic)}; {len(self.elliptic)}) does not match "
                f"signature {self.signature} (expects {2 * self.signature.h}; {self.signature.l})"
            )
        if self.periods is None:
            object.__setattr__(self, "periods", self.signature.periods)
        else:
            periods = tuple(int(m) for m in self.periods)
            if tuple(sorted(periods)) != self.signature.periods:
                raise ShapeError(f"period order {periods} is not a rearrangement of {self.signature}")
            object.__setattr__(self, "periods", periods)

    @classmethod
    def from_flat(
        cls, group: Group, signature: Signature, flat: Sequence[int],
        periods: Sequence[int] | None = None,
    ) -> "GeneratingVector":
        k = 2 * signature.h
        if len(flat) != k + signature.l:
            raise ShapeError(f"expected {k + signature.l} entries for {signature}, got {len(flat)}")
        return cls(group, signature, tuple(flat[:k]), tuple(flat[k:]),
                   tuple(periods) if periods is not None else None)

    @property
    def flat(self) -> tuple[int, ...]:
        return self.hyperbolic + self.elliptic

    @property
    def genus(self) -> int:
        return rh_genus(self.signature, self.group.order)

    def __eq__(self, other):
        return (
            isinstance(other, GeneratingVector)
            and other.group is self.group
            and other.signature == self.signature
            and other.periods == self.periods
            and other.flat == self.flat
        )

    def __hash__(self):
        return hash((self.signature, self.periods, self.flat))

    def __str__(self):
        return format_vector(self)

    def __repr__(self):
        return f"GeneratingVector({self.group.spec}, {self.signature}, {format_vector(self)})"


def format_vector(vec: GeneratingVector) -> str:
    name = vec.group.name_of
    hyp = ",".join(name(x) for x in vec.hyperbolic) or "-"
    ell = ",".join(name(x) for x in vec.elliptic) or "-"
    return f"{hyp};{ell}"


def parse_vector(G: Group, sig: Signature, text: str) -> GeneratingVector:
    """Parse ``"-;s,s,s,s,sr,sr"`` / ``"t,1;t^2,t^2,t^2,t^2"``.

    A bare comma list (no ``;``) is read as the elliptic part when ``h = 0``.
    """
    s = text.strip().strip("()")
    if ";" in s:
        hyp_txt, _, ell_txt = s.partition(";")
    elif sig.h == 0:
        hyp_txt, ell_txt = "-", s
    else:
        raise ParseError(f"vector {text!r} needs 'hyperbolic;elliptic' for h={sig.h}")

    def entries(part: str) -> tuple[int, ...]:
        part = part.strip()
        if part in ("", "-"):
            return ()
        return tuple(G.parse_element(tok) for tok in part.split(","))

    return GeneratingVector(G, sig, entries(hyp_txt), entries(ell_txt))


@dataclass(frozen=True)
class KernelCheck:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _as_flat(G: Group, sig: Signature, vec) -> tuple[int, ...]:
    if isinstance(vec, GeneratingVector):
        if vec.group is not G:
            raise ShapeError("vector belongs to a different group")
        return vec.flat
    if isinstance(vec, str):
        return parse_vector(G, sig, vec).flat
    vec = tuple(vec)
    if len(vec) == 2 and all(isinstance(p, (tuple, list)) for p in vec):
        hyp, ell = vec
        if len(hyp) != 2 * sig.h or len(ell) != sig.l:
            raise ShapeError(f"vector shape ({len(hyp)}; {len(ell)}) does not match {sig}")
        return tuple(hyp) + tuple(ell)
    if len(vec) != 2 * sig.h + sig.l:
        raise ShapeError(f"expected {2 * sig.h + sig.l} entries for {sig}, got {len(vec)}")
    return tuple(int(x) for x in vec)


def relation_product(G: Group, h: int, flat: Sequence[int]) -> int:
    acc = G.identity
    t = G.table
    for i in range(h):
        acc = t[acc][G.commutator(flat[2 * i], flat[2 * i + 1])]
    for x in flat[2 * h:]:
        acc = t[acc][x]
    return acc


def is_surface_kernel(G: Group, sig: Signature, vec) -> KernelCheck:
    """Check the relation, exact orders and generation, reporting the first failure."""
    flat = _as_flat(G, sig, vec)
    periods = vec.periods if isinstance(vec, GeneratingVector) else sig.periods
    if any(not 0 <= x < G.order for x in flat):
        raise ShapeError("entry out of range")
    if relation_product(G, sig.h, flat) != G.identity:
        return KernelCheck(False, "relation: long product is not the identity")
    for j, (x, m) in enumerate(zip(flat[2 * sig.h:], periods), start=1):
        if G.element_orders[x] != m:
            return KernelCheck(
                False, f"order: x_{j} = {G.name_of(x)} has order {G.element_orders[x]}, expected {m}"
            )
    if not generates(G, flat):
        return KernelCheck(False, "generation: entries do not generate the group")
    return KernelCheck(True)


# -- enumeration --------------------------------------------------------------


def period_orderings(sig: Signature) -> list[tuple[int, ...]]:
    """Distinct rearrangements of the periods, sorted (the canonical order first)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, counts):
        if len(prefix) == sig.l:
            out.append(tuple(prefix))
            return
        for m in sorted(counts):
            if counts[m]:
                counts[m] -= 1
                prefix.append(m)
                rec(prefix, counts)
                prefix.pop()
                counts[m] += 1

    counts: dict[int, int] = {}
    for m in sig.periods:
        counts[m] = counts.get(m, 0) + 1
    rec([], counts)
    return out


def search_size(G: Group, sig: Signature, periods: Sequence[int] | None = None) -> int:
    """Number of leaves the enumeration visits (last entry is solved, not searched)."""
    size = G.order ** (2 * sig.h)
    for m in (sig.periods if periods is None else periods)[:-1]:
        size *= len(G.elements_of_order(m))
    return size


def _iter_flat(
    G: Group, sig: Signature, first: Sequence[int] | None = None,
    periods: Sequence[int] | None = None, budget: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield valid flat vectors in lexicographic order.

    ``first`` optionally restricts the first searched coordinate (used to
    partition work between processes); ``periods`` overrides the period order.
    ``budget`` caps the number of candidate tuples visited (CapabilityError).
    """
    t, inv, orders, e = G.table, G.inverse, G.element_orders, G.identity
    h = sig.h
    periods = tuple(sig.periods if periods is None else periods)
    l = len(periods)
    bit = [1 << x for x in range(G.order)]
    memo: dict[int, bool] = {}

    def generating(mask: int) -> bool:
        ok = memo.get(mask)
        if ok is None:
            ok = generates(G, [x for x in range(G.order) if mask >> x & 1])
            memo[mask] = ok
        return ok

    hyp_pools = [range(G.order)] * (2 * h)
    ell_pools = [G.elements_of_order(m) for m in periods[:-1]]
    if first is not None:
        keep = set(first)
        if h:
            hyp_pools[0] = [x for x in range(G.order) if x in keep]
        elif ell_pools:
            ell_pools[0] = [x for x in ell_pools[0] if x in keep]
    last_m = periods[-1] if l else None
    for hyp in product(*hyp_pools):
        c, mask = e, 0
        for i in range(h):
            a, b = hyp[2 * i], hyp[2 * i + 1]
            c = t[c][t[t[t[a][b]][inv[a]]][inv[b]]]
            mask |= bit[a] | bit[b]
        if not l:
            if c == e and generating(mask):
                yield hyp
            continue
        for ell in product(*ell_pools):
            if budget is not None:
                budget -= 1
                if budget < 0:
                    raise CapabilityError(f"search for {G.spec} with {sig} exceeded its candidate budget")
            p, m = c, mask
            for x in ell:
                p = t[p][x]
                m |= bit[x]
            last = inv[p]
            if orders[last] != last_m:
                continue
            if generating(m | bit[last]):
                yield hyp + ell + (last,)


def _chunk_worker(args):
    G, sig, first, periods = args
    return list(_iter_flat(G, sig, first, periods))


def _first_pool(G: Group, sig: Signature, periods) -> list[int] | None:
    if sig.h:
        return list(range(G.order))
    if sig.l >= 2:
        return G.elements_of_order(periods[0])
    return None


def admissible(G: Group, sig: Signature) -> bool:
    try:
        rh_genus(sig, G.order)
    except NotAdmissibleError as exc:
        log.warning("no surface-kernel vectors: %s", exc)
        return False
    return True


def check_limit(G: Group, sig: Signature, periods=None, limit: int = ENUMERATION_LIMIT) -> None:
    size = search_size(G, sig, periods)
    if size > limit:
        raise CapabilityError(f"enumeration for {G.spec} with {sig} visits ~{size} candidates (> {limit})")


def iter_flat_vectors(
    G: Group, sig: Signature, threads: int = 1, periods: Sequence[int] | None = None,
) -> list[tuple[int, ...]]:
    """All valid flat vectors, lexicographically sorted.

    With ``threads > 1`` the first searched coordinate is split across worker
    processes; chunks are merged in coordinate order so the result does not
    depend on scheduling.
    """
    if not admissible(G, sig):
        return []
    periods = tuple(sig.periods if periods is None else periods)
    check_limit(G, sig, periods)
    pool = _first_pool(G, sig, periods)
    if threads <= 1 or pool is None or len(pool) < 2 or search_size(G, sig, periods) < 200_000:
        return list(_iter_flat(G, sig, None, periods))
    chunks = [[x] for x in pool]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(_chunk_worker, [(G, sig, c, periods) for c in chunks]))
    out = [v for part in parts for v in part]
    out.sort()
    return out


def enumerate_vectors(G: Group, sig: Signature, threads: int = 1) -> list[GeneratingVector]:
    return [GeneratingVector.from_flat(G, sig, v) for v in iter_flat_vectors(G, sig, threads)]


def vector_array(
    G: Group, sig: Signature, threads: int = 1, periods: Sequence[int] | None = None,
) -> np.ndarray:
    """Valid vectors as an ``(count, 2h + l)`` integer array in lexicographic order."""
    flat = iter_flat_vectors(G, sig, threads, periods)
    width = 2 * sig.h + sig.l
    if not flat:
        return np.zeros((0, width), dtype=np.int64)
    return np.array(flat, dtype=np.int64).reshape(len(flat), width)


def find_vector(G: Group, sig: Signature, budget: int | None = None) -> GeneratingVector | None:
    """The lexicographically least valid vector, or ``None`` if the action does not exist.

    With ``budget`` the search gives up (CapabilityError) after that many candidates.
    """
    if not admissible(G, sig):
        return None
    for flat in _iter_flat(G, sig, budget=budget):
        return GeneratingVector.from_flat(G, sig, flat)
    return None


def count_vectors(G: Group, sig: Signature, threads: int = 1) -> int:
    check_limit(G, sig)
    if threads <= 1:
        return sum(1 for _ in _iter_flat(G, sig)) if admissible(G, sig) else 0
    return len(iter_flat_vectors(G, sig, threads))
