"""Rational irreducible representations of cyclic and dihedral groups and the
dimension data of the induced isogeny decomposition of a Jacobian.

Only the integers that enter the dimension formulas are materialized: the
complex degree ``d_V``, the Schur index ``s_V`` (always 1 for these families),
the degree ``k_V`` of the field of definition and fixed-subspace dimensions.

Dihedral elements use the layout of :func:`equisym.group.dihedral`:
index ``k`` is ``r^k`` and ``n + k`` is ``s r^k``.  Cyclic index ``k`` is ``t^k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CapabilityError, ConsistencyError, ParseError, ShapeError
from .genvec import GeneratingVector, is_surface_kernel
from .group import Group, Subgroup, left_cosets, subgroup_generated
from .signature import Signature, divisors, format_signature


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def omega(n: int) -> list[int]:
    """Divisors ``d`` of ``n`` with ``1 <= d < n``."""
    return [d for d in divisors(n) if d < n]


def omega_hat(n: int) -> list[int]:
    """Divisors ``d`` of ``n`` with ``1 <= d < n/2``."""
    return [d for d in divisors(n) if 2 * d < n]


def lambda_set(n: int) -> list[int]:
    """Divisors ``d < n/2`` of even ``n`` with ``dn/2`` not divisible by ``n``."""
    return [d for d in divisors(n) if 2 * d < n and (d * n // 2) % n]


@dataclass(frozen=True)
class RationalIrrep:
    """One rational irreducible representation, described by its invariants.

    ``signs`` is set for linear characters of a dihedral group (value of r, s);
    ``parameter`` is the divisor ``d`` for ``W_d`` (dihedral: the Galois class
    of ``psi_d``; cyclic: the class of ``chi_d : t -> w^d``).
    """

    label: str
    family: str  # "dihedral" | "cyclic"
    n: int
    complex_degree: int
    galois_degree: int
    schur_index: int = 1
    parameter: int | None = None
    signs: tuple[int, int] | None = None

    @property
    def multiplicity(self) -> int:
        return self.complex_degree // self.schur_index

    @property
    def is_trivial(self) -> bool:
        if self.family == "dihedral":
            return self.signs == (1, 1)
        return self.parameter == self.n

    @property
    def algebra_dim(self) -> int:
        return self.galois_degree * self.complex_degree * self.multiplicity


def rational_irreducibles(G: Group) -> list[RationalIrrep]:
    """Complete list for ``C_n`` and ``D_n``; other groups raise CapabilityError."""
    cached = G.__dict__.get("_rational_irreps")
    if cached is not None:
        return cached
    n = G.n
    out: list[RationalIrrep] = []
    if G.kind == "dihedral":
        out.append(RationalIrrep("chi1", "dihedral", n, 1, 1, signs=(1, 1)))
        out.append(RationalIrrep("chi2", "dihedral", n, 1, 1, signs=(1, -1)))
        if n % 2 == 0:
            out.append(RationalIrrep("chi3", "dihedral", n, 1, 1, signs=(-1, 1)))
            out.append(RationalIrrep("chi4", "dihedral", n, 1, 1, signs=(-1, -1)))
            ds = omega_hat(n)
        else:
            ds = omega(n)
        for d in ds:
            out.append(RationalIrrep(f"W{d}", "dihedral", n, 2, euler_phi(n // d) // 2, parameter=d))
    elif G.kind == "cyclic":
        out.append(RationalIrrep("chi1", "cyclic", n, 1, 1, parameter=n))
        for d in divisors(n):
            if d < n:
                out.append(RationalIrrep(f"W{d}", "cyclic", n, 1, euler_phi(n // d), parameter=d))
    else:
        raise CapabilityError(
            f"rational representation data is only available for cyclic and dihedral groups, not {G.name}"
        )
    for V in out:
        if V.schur_index != 1:
            raise ConsistencyError("Schur index other than 1 is not supported")
    if sum(V.algebra_dim for V in out) != G.order:
        raise ConsistencyError(f"rational irreps of {G.name} do not fill the group algebra")
    G.__dict__["_rational_irreps"] = out
    return out


def _members(G: Group, H) -> tuple[int, ...]:
    if isinstance(H, Subgroup):
        if H.parent is not G:
            raise ShapeError("subgroup belongs to a different group")
        return H.elements
    return tuple(H)


def fixed_dim(G: Group, V: RationalIrrep, H) -> int:
    """Dimension of the subspace of one complex constituent of ``V`` fixed by ``H``.

    ``H`` is a Subgroup or any iterable of elements (only the elements listed
    are required to act trivially, so a generating set suffices).

    Matrix model for ``psi_d``: ``r^k -> diag(w^dk, w^-dk)`` and
    ``s r^k -> [[0, w^-dk], [w^dk, 0]]``.  Rotations fix a vector only when
    ``dk = 0 mod n`` (then they are the identity); every reflection has the
    eigenvalues 1 and -1 and two reflections share their 1-eigenvector
    exactly when their product rotation is trivial.
    """
    if V.family != G.kind or V.n != G.n:
        raise ShapeError(f"{V.label} is not a representation of {G.name}")
    elems = _members(G, H)
    n = G.n
    if V.family == "cyclic":
        d = V.parameter
        return int(all((d * x) % n == 0 for x in elems))
    if V.signs is not None:
        er, es = V.signs
        for x in elems:
            refl, k = divmod(x, n)
            value = (er ** k) * (es if refl else 1)
            if value != 1:
                return 0
        return 1
    d = V.parameter
    rot = [x for x in elems if x < n]
    refl = [x - n for x in elems if x >= n]
    # rotations generated by the listed elements: products of reflections count too
    steps = [(d * k) % n for k in rot] + [(d * (b - refl[0])) % n for b in refl[1:]]
    if any(steps):
        return 0
    return 1 if refl else 2


# -- decomposition -------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    irrep: RationalIrrep
    dim: int

    @property
    def mult(self) -> int:
        return self.irrep.multiplicity

    def to_json(self) -> dict:
        d = None if self.irrep.signs is not None or self.irrep.is_trivial else self.irrep.parameter
        return {"label": self.irrep.label, "d": d, "dim": self.dim, "mult": self.mult}


@dataclass(frozen=True)
class QuotientRow:
    key: str
    subgroup: Subgroup
    exponents: dict[str, int]
    dim: int

    def to_json(self) -> dict:
        return {"subgroup": self.key, "exponents": dict(self.exponents), "dim": self.dim}


@dataclass(frozen=True)
class PrymRow:
    key: str
    sub: Subgroup
    over: Subgroup
    exponents: dict[str, int]
    dim: int

    def to_json(self) -> dict:
        return {"pair": self.key, "exponents": dict(self.exponents), "dim": self.dim}


@dataclass
class DecompositionReport:
    group: Group
    signature: Signature
    vector: GeneratingVector
    factors: list[Factor]
    quotient_rows: list[QuotientRow] = field(default_factory=list)
    prym_rows: list[PrymRow] = field(default_factory=list)

    @property
    def genus(self) -> int:
        return sum(f.mult * f.dim for f in self.factors)

    def factor(self, label: str) -> Factor:
        for f in self.factors:
            if f.irrep.label == label:
                return f
        raise KeyError(label)

    def nonzero(self) -> list[Factor]:
        return [f for f in self.factors if f.dim]

    def to_json(self) -> dict:
        return {
            "group": self.group.spec,
            "signature": format_signature(self.signature),
            "vector": str(self.vector),
            "genus": self.genus,
            "factors": [f.to_json() for f in self.factors],
            "quotients": [q.to_json() for q in self.quotient_rows],
            "pryms": [p.to_json() for p in self.prym_rows],
        }


def factor_dim(G: Group, V: RationalIrrep, h: int, elliptic: Sequence[int]) -> int:
    """``k [d (h - 1) + 1/2 sum (d - d^<x_j>)]``; the trivial factor has dim ``h``."""
    if V.is_trivial:
        return h
    d = V.complex_degree
    total = Fraction(d * (h - 1)) + Fraction(sum(d - fixed_dim(G, V, [x]) for x in elliptic), 2)
    total *= V.galois_degree
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(f"dim B for {V.label} came out as {total}")
    return int(total)


def factor_dims(vec: GeneratingVector) -> DecompositionReport:
    G = vec.group
    factors = [Factor(V, factor_dim(G, V, vec.signature.h, vec.elliptic)) for V in rational_irreducibles(G)]
    report = DecompositionReport(G, vec.signature, vec, factors)
    if report.genus != vec.genus:
        raise ConsistencyError(f"factor dimensions add to {report.genus}, expected g = {vec.genus}")
    return report


def exponents(report: DecompositionReport, H: Subgroup) -> dict[str, int]:
    G = report.group
    return {f.irrep.label: fixed_dim(G, f.irrep, H) // f.irrep.schur_index for f in report.factors}


def quotient_decomposition(report: DecompositionReport, H: Subgroup, key: str | None = None) -> QuotientRow:
    exps = exponents(report, H)
    dim = sum(exps[f.irrep.label] * f.dim for f in report.factors)
    return QuotientRow(key or subgroup_key(H), H, exps, dim)


def prym_decomposition(report: DecompositionReport, H1: Subgroup, H2: Subgroup, key: str | None = None) -> PrymRow:
    if not H1.issubgroup(H2):
        raise ShapeError("Prym rows need H1 <= H2")
    e1, e2 = exponents(report, H1), exponents(report, H2)
    exps = {k: e1[k] - e2[k] for k in e1}
    if any(v < 0 for v in exps.values()):
        raise ConsistencyError(f"negative Prym exponent: {exps}")
    dim = sum(exps[f.irrep.label] * f.dim for f in report.factors)
    return PrymRow(key or f"{subgroup_key(H1)}/{subgroup_key(H2)}", H1, H2, exps, dim)


# -- quotient genus oracle ---------------------------------------------------------


def _coset_perm(G: Group, cosets, x: int) -> list[int]:
    where = {}
    for i, c in enumerate(cosets):
        for y in c:
            where[y] = i
    return [where[G.table[x][c[0]]] for c in cosets]


def _cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def coset_orbit_counts(G: Group, H: Subgroup) -> list[int]:
    """For each element x, the number of orbits of <x> on the left cosets G/H."""
    cosets = left_cosets(G, H)
    return [_cycle_count(_coset_perm(G, cosets, x)) for x in range(G.order)]


def quotient_genus(vec: GeneratingVector, H: Subgroup) -> int:
    """Genus of S/H from Riemann-Hurwitz for the coset cover S/H -> S/G.

    A cone point of order m whose generator maps to x has one preimage per
    orbit of <x> on G/H, so it contributes ``[G:H] - #orbits`` to the
    ramification.
    """
    G = vec.group
    if H.parent is not G:
        raise ShapeError("subgroup belongs to a different group")
    counts = coset_orbit_counts(G, H)
    idx = H.index
    twice = idx * (2 * vec.signature.h - 2) + sum(idx - counts[x] for x in vec.elliptic) + 2
    if twice % 2 or twice < 0:
        raise ConsistencyError(f"quotient genus is not a non-negative integer: {Fraction(twice, 2)}")
    return twice // 2


# -- batch versions over vector arrays --------------------------------------------


def fixed_table(G: Group, irreps: Sequence[RationalIrrep]) -> np.ndarray:
    """``table[i, x]`` = fixed dimension of irreps[i] under <x>."""
    return np.array([[fixed_dim(G, V, [x]) for x in range(G.order)] for V in irreps], dtype=np.int64)


def batch_factor_dims(G: Group, sig: Signature, arr: np.ndarray) -> tuple[list[RationalIrrep], np.ndarray]:
    """Factor dimensions for every row of a vector array, shape ``(count, #irreps)``."""
    irreps = rational_irreducibles(G)
    table = fixed_table(G, irreps)
    ell = arr[:, 2 * sig.h:]
    out = np.empty((len(arr), len(irreps)), dtype=np.int64)
    for i, V in enumerate(irreps):
        if V.is_trivial:
            out[:, i] = sig.h
            continue
        d = V.complex_degree
        twice = 2 * d * (sig.h - 1) + (d - table[i][ell]).sum(axis=1)
        if np.any(twice % 2):
            raise ConsistencyError(f"half-integral dimension for {V.label}")
        out[:, i] = V.galois_degree * twice // 2
    return irreps, out


def batch_quotient_genus(G: Group, sig: Signature, arr: np.ndarray, H: Subgroup) -> np.ndarray:
    counts = np.asarray(coset_orbit_counts(G, H), dtype=np.int64)
    idx = H.index
    ell = arr[:, 2 * sig.h:]
    twice = idx * (2 * sig.h - 2) + (idx - counts[ell]).sum(axis=1) + 2
    if np.any(twice % 2) or np.any(twice < 0):
        raise ConsistencyError("quotient genus is not a non-negative integer")
    return twice // 2


# -- subgroup descriptors -----------------------------------------------------------


_GEN = re.compile(r"^<(.*)>$")


def parse_subgroup(G: Group, text: str) -> Subgroup:
    """``"G"``, ``"1"``, ``"<r>"``, ``"<s,r^2>"`` or ``"{#1,#4}"``."""
    s = text.strip()
    if s == "G":
        return Subgroup(G, tuple(range(G.order)))
    if s == "1":
        return Subgroup(G, (G.identity,))
    m = _GEN.match(s) or re.match(r"^\{(.*)\}$", s)
    if not m:
        raise ParseError(f"subgroup descriptor {text!r} is not G, 1, <gens> or {{gens}}")
    gens = [G.parse_element(tok) for tok in m.group(1).split(",") if tok.strip()]
    return subgroup_generated(G, gens)


def subgroup_key(H: Subgroup) -> str:
    G = H.parent
    if H.order == G.order:
        return "G"
    if H.order == 1:
        return "1"
    for x in H.elements:
        if G.element_orders[x] == H.order:
            return f"<{G.name_of(x)}>"
    gens: list[int] = []
    span: set[int] = {G.identity}
    for x in H.elements:
        if x not in span:
            gens.append(x)
            span = set(subgroup_generated(G, gens).elements)
    return "<" + ",".join(G.name_of(x) for x in gens) + ">"


def standard_subgroups(G: Group) -> list[tuple[str, Subgroup]]:
    """The subgroups used in the cross-checks: <r>, <s>, <sr>, G, 1 (dihedral)
    or every subgroup <t^e> (cyclic)."""
    if G.kind == "dihedral":
        keys = ["<r>", "<s>", "<sr>", "G", "1"]
        return [(k, parse_subgroup(G, k)) for k in keys]
    if G.kind == "cyclic":
        rows = [(k, parse_subgroup(G, k)) for k in ("G", "1")]
        for e in divisors(G.n):
            if 1 < e < G.n:
                H = subgroup_generated(G, [e])
                rows.append((subgroup_key(H), H))
        return rows
    rows = [("G", parse_subgroup(G, "G")), ("1", parse_subgroup(G, "1"))]
    seen = set()
    for x in range(G.order):
        H = subgroup_generated(G, [x])
        if 1 < H.order < G.order and H.elements not in seen:
            seen.add(H.elements)
            rows.append((subgroup_key(H), H))
    return rows


def decompose(
    vec: GeneratingVector,
    subgroups: Iterable[str] = (),
    pryms: Iterable[tuple[str, str]] = (),
) -> DecompositionReport:
    """Factor dims plus the requested quotient and Prym rows."""
    check = is_surface_kernel(vec.group, vec.signature, vec)
    if not check:
        raise ShapeError(f"({vec}) is not a surface-kernel generating vector: {check.reason}")
    report = factor_dims(vec)
    G = vec.group
    for key in subgroups:
        H = parse_subgroup(G, key)
        report.quotient_rows.append(quotient_decomposition(report, H, key))
    for k1, k2 in pryms:
        H1, H2 = parse_subgroup(G, k1), parse_subgroup(G, k2)
        report.prym_rows.append(prym_decomposition(report, H1, H2, f"{k1}/{k2}"))
    return report
