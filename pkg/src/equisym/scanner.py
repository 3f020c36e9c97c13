"""Largest group orders for d-dimensional equisymmetric families, per genus.

Phase one is arithmetic: the largest ``N <= 84(g-1)`` for which some
signature of Teichmueller dimension ``d`` satisfies Riemann-Hurwitz.  Phase
two looks for an actual surface-kernel vector in a catalog of groups of each
admissible order, largest first.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CapabilityError
from .genvec import GeneratingVector, find_vector, is_surface_kernel
from .group import Group, cyclic, dihedral
from .signature import Signature, enumerate_signatures, format_signature, rh_genus

SEARCH_LIMIT = 5_000_000


def hurwitz_cap(genus: int) -> int:
    return 84 * (genus - 1)


@lru_cache(maxsize=None)
def _signatures(genus: int, order: int, dim: int) -> tuple[Signature, ...]:
    return tuple(enumerate_signatures(genus, order, dim))


def admissible_orders(genus: int, dim: int) -> Iterator[tuple[int, list[Signature]]]:
    """Every ``(N, signatures)`` with a non-empty signature list, N descending."""
    for N in range(hurwitz_cap(genus), 0, -1):
        sigs = _signatures(genus, N, dim)
        if sigs:
            yield N, list(sigs)


def arithmetic_max(genus: int, dim: int) -> tuple[int | None, list[Signature]]:
    """Largest arithmetically admissible order and its witnessing signatures."""
    for N, sigs in admissible_orders(genus, dim):
        return N, sigs
    return None, []


def builtin_groups(order: int) -> list[Group]:
    groups = [cyclic(order)]
    if order % 2 == 0 and order >= 4:
        groups.append(dihedral(order // 2))
    return groups


def catalog_for(order: int, catalog: Sequence[Group]) -> list[Group]:
    return builtin_groups(order) + [G for G in catalog if G.order == order]


@dataclass(frozen=True)
class Witness:
    group: Group
    signature: Signature
    vector: GeneratingVector

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "signature": format_signature(self.signature),
            "vector": str(self.vector),
        }

    def __str__(self):
        return f"{self.group.spec} ({format_signature(self.signature)}) [{self.vector}]"


@dataclass
class RealizableResult:
    order: int | None
    witness: Witness | None
    unresolved: list[int] = field(default_factory=list)  # admissible orders above ``order``
    skipped: list[str] = field(default_factory=list)  # searches over the limit

    @property
    def catalog_incomplete(self) -> bool:
        return bool(self.unresolved)


def realizable_max(
    genus: int, dim: int, catalog: Sequence[Group] = (), limit: int = SEARCH_LIMIT,
) -> RealizableResult:
    """Largest admissible order realized by a catalog group (C_N, D_{N/2} always included)."""
    unresolved: list[int] = []
    skipped: list[str] = []
    for N, sigs in admissible_orders(genus, dim):
        for G in catalog_for(N, catalog):
            for sig in sigs:
                try:
                    vec = find_vector(G, sig, budget=limit)
                except CapabilityError:
                    skipped.append(f"{G.spec} ({format_signature(sig)})")
                    continue
                if vec is not None:
                    return RealizableResult(N, Witness(G, sig, vec), unresolved, skipped)
        unresolved.append(N)
    return RealizableResult(None, None, unresolved, skipped)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def hypothesis_tags(genus: int) -> list[str]:
    """Which standing hypotheses on g hold (used to select rows in checks)."""
    g = genus
    tags = []
    if _is_prime(g - 1):
        tags.append("g-1 prime")
    if g % 2 == 0 and _is_prime(g // 2):
        tags.append("g/2 prime")
    if g % 2 == 1 and g - 1 >= 2 and (g - 1) & (g - 2) == 0:
        tags.append("g-1 power of 2")
    if g % 2 == 1 and _is_prime((g - 1) // 2):
        tags.append("(g-1)/2 prime")
    return tags


@dataclass
class ScanRow:
    genus: int
    dim: int
    arithmetic_max: int | None
    witness_sigs: list[Signature]
    realizable_max: int | None = None
    witness: Witness | None = None
    attempted: bool = False
    unresolved_orders: list[int] = field(default_factory=list)
    hypothesis_tags: list[str] = field(default_factory=list)

    @property
    def value(self) -> int | None:
        return self.realizable_max if self.attempted else self.arithmetic_max

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "dim": self.dim,
            "arithmetic_max": self.arithmetic_max,
            "witness_sigs": [format_signature(s) for s in self.witness_sigs],
            "realizable_max": self.realizable_max if self.attempted else "not attempted",
            "witness": self.witness.to_json() if self.witness else None,
            "catalog_incomplete": bool(self.unresolved_orders),
            "unresolved_orders": list(self.unresolved_orders),
            "hypothesis_tags": list(self.hypothesis_tags),
        }

    def validate(self) -> None:
        """Re-check every witness (raises on failure)."""
        for sig in self.witness_sigs:
            assert rh_genus(sig, self.arithmetic_max) == self.genus
        if self.witness is not None:
            w = self.witness
            assert rh_genus(w.signature, w.group.order) == self.genus
            assert is_surface_kernel(w.group, w.signature, w.vector)
            assert self.realizable_max <= self.arithmetic_max


def scan_row(genus: int, dim: int, catalog: Sequence[Group] = (), realize: bool = True) -> ScanRow:
    amax, sigs = arithmetic_max(genus, dim)
    row = ScanRow(genus, dim, amax, sigs, hypothesis_tags=hypothesis_tags(genus))
    if realize:
        res = realizable_max(genus, dim, catalog)
        row.attempted = True
        row.realizable_max = res.order
        row.witness = res.witness
        row.unresolved_orders = res.unresolved
    return row


# -- linear forms ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    a: int
    b: int

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}g {sign} {abs(self.b)}"


@dataclass(frozen=True)
class NoLinearForm:
    """Evidence: either two rows with no integer line through them, or a
    pair fixing the line and a third row off it."""

    evidence: tuple[tuple[int, int], ...]

    def __str__(self):
        pts = ", ".join(f"g={g}: {v}" for g, v in self.evidence)
        return f"no linear form ({pts})"


def _points(rows: Iterable[ScanRow], genus_subset) -> list[tuple[int, int]]:
    subset = set(genus_subset) if genus_subset is not None else None
    pts = [(r.genus, r.value) for r in rows if subset is None or r.genus in subset]
    if any(v is None for _, v in pts):
        raise ValueError("rows without a maximum cannot enter a linear form")
    return sorted(pts)


def linear_form_analysis(rows: Sequence[ScanRow], genus_subset=None) -> LinearForm | NoLinearForm:
    """The unique integer ``(a, b)`` with ``max = a g + b`` on all rows, or evidence against."""
    pts = _points(rows, genus_subset)
    if len(pts) < 2:
        raise ValueError("linear form analysis needs at least two rows")

    def slope(p, q):
        return Fraction(q[1] - p[1], q[0] - p[0])

    pairs = [(p, q) for i, p in enumerate(pts) for q in pts[i + 1:]]
    # two rows already exclude every integer line when their slope is fractional;
    # rows of different parity are the natural witnesses, so try them first
    pairs.sort(key=lambda pq: (pq[0][0] % 2 == pq[1][0] % 2, pq))
    for p, q in pairs:
        if slope(p, q).denominator != 1:
            return NoLinearForm((p, q))
    p, q = pts[0], pts[1]
    a = slope(p, q)
    b = p[1] - a * p[0]
    for r in pts[2:]:
        if a * r[0] + b != r[1]:
            return NoLinearForm((p, q, r))
    return LinearForm(int(a), int(b))


# -- full scans ---------------------------------------------------------------------


@dataclass
class ScanReport:
    dim: int
    genus_range: tuple[int, int]
    rows: list[ScanRow]
    linear_fit: LinearForm | NoLinearForm | None = None

    def to_json(self) -> dict:
        fit = self.linear_fit
        if isinstance(fit, LinearForm):
            fit_json = {"a": fit.a, "b": fit.b}
        elif isinstance(fit, NoLinearForm):
            fit_json = {"none": True, "evidence": [list(p) for p in fit.evidence]}
        else:
            fit_json = None
        return {
            "dim": self.dim,
            "genus_range": list(self.genus_range),
            "rows": [r.to_json() for r in self.rows],
            "linear_fit": fit_json,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["genus", "dim", "arithmetic_max", "witness_sigs", "realizable_max", "witness", "hypothesis_tags"])
        for r in self.rows:
            j = r.to_json()
            w.writerow([
                r.genus, r.dim, "" if r.arithmetic_max is None else r.arithmetic_max,
                " ".join(j["witness_sigs"]),
                "" if j["realizable_max"] is None else j["realizable_max"],
                str(r.witness) if r.witness else "",
                "|".join(r.hypothesis_tags),
            ])
        return buf.getvalue()

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _row_worker(args):
    return scan_row(*args)


def scan(
    dim: int, genera: Sequence[int], catalog: Sequence[Group] = (), realize: bool = True, threads: int = 1,
) -> ScanReport:
    genera = sorted(set(genera))
    jobs = [(g, dim, tuple(catalog), realize) for g in genera]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(_row_worker, jobs))
    else:
        rows = [scan_row(*j) for j in jobs]
    usable = [r for r in rows if r.value is not None]
    fit = linear_form_analysis(usable) if len(usable) >= 2 else None
    return ScanReport(dim, (genera[0], genera[-1]) if genera else (0, 0), rows, fit)
