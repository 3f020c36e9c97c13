"""Finite groups as exact multiplication tables.

Elements are dense integer indices ``0..order-1``; ``table[a][b]`` is the
index of the product ``a*b``.  Names like ``"sr^2"`` exist only for I/O.

Built-in families use fixed index layouts:

* ``cyclic(n)``: index ``k`` is ``t^k``.
* ``dihedral(n)``: index ``k`` is ``r^k`` and index ``n + k`` is ``s r^k``,
  with ``r^n = s^2 = (sr)^2 = 1``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CapabilityError, GroupValidationError, ParseError, ShapeError

BRUTE_FORCE_AUT_LIMIT = 64


class Group:
    """An immutable finite group given by its Cayley table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        *,
        kind: str = "external",
        n: int | None = None,
        name: str = "",
        names: Sequence[str] | None = None,
        generators: dict[str, int] | None = None,
        spec: str | None = None,
        validate: bool = True,
    ):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.kind = kind
        self.n = n
        self.name = name or (spec or f"G{self.order}")
        self.spec = spec or self.name
        if validate:
            _validate_table(self.table)
        self.identity = _find_identity(self.table)
        if names is not None and len(names) != self.order:
            raise GroupValidationError(
                f"{len(names)} element names given for a group of order {self.order}"
            )
        self._names = tuple(names) if names is not None else None
        self.generators = dict(generators or {})
        self.generator_indices = tuple(self.generators.values())

    def __repr__(self):
        return f"Group({self.spec!r}, order={self.order})"

    # -- arithmetic ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(e)
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        for x in elements:
            acc = self.table[acc][x]
        return acc

    def conjugate(self, x: int, g: int) -> int:
        """Return ``g^-1 x g``."""
        return self.table[self.table[self.inverse[g]][x]][g]

    def commutator(self, u: int, v: int) -> int:
        """Return ``u v u^-1 v^-1``."""
        t = self.table
        return t[t[t[u][v]][self.inverse[u]]][self.inverse[v]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for x in range(self.order):
            k, y = 1, x
            while y != self.identity:
                y = self.table[y][x]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.np_table
        return bool(np.array_equal(t, t.T))

    @cached_property
    def np_table(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def elements_of_order(self, m: int) -> list[int]:
        return [x for x, o in enumerate(self.element_orders) if o == m]

    # -- naming -------------------------------------------------------------

    def name_of(self, x: int) -> str:
        if self._names is not None:
            return self._names[x]
        if self.kind == "cyclic":
            return _power_name("t", x)
        if self.kind == "dihedral":
            n = self.n
            if x < n:
                return _power_name("r", x)
            k = x - n
            return "s" if k == 0 else "s" + _power_name("r", k)
        return f"#{x}"

    def parse_element(self, text: str) -> int:
        """Parse ``1``, ``r``, ``sr^2``, ``t^-1``, ``#k`` or a custom element name."""
        text = text.strip()
        if self._names is not None and text in self._names:
            return self._names.index(text)
        compact = text.replace(" ", "").replace("{", "").replace("}", "")
        if not compact:
            raise ParseError("empty element literal")
        pos, acc = 0, self.identity
        for m in _TOKEN.finditer(compact):
            if m.start() != pos:
                break
            atom, exp = m.group(1), m.group(2)
            if atom == "1":
                x = self.identity
            elif atom.startswith("#"):
                x = int(atom[1:])
                if not 0 <= x < self.order:
                    raise ParseError(f"element index {x} out of range for {self.spec}")
            elif atom in self.generators:
                x = self.generators[atom]
            else:
                raise ParseError(f"unknown generator {atom!r} in {text!r} for {self.spec}")
            acc = self.table[acc][self.power(x, int(exp) if exp else 1)]
            pos = m.end()
        if pos != len(compact):
            raise ParseError(f"malformed element literal {text!r}")
        return acc


_TOKEN = re.compile(r"(1|#\d+|[a-zA-Z])(?:\^\(?(-?\d+)\)?)?")


def _power_name(sym: str, k: int) -> str:
    if k == 0:
        return "1"
    return sym if k == 1 else f"{sym}^{k}"


def _find_identity(table) -> int:
    n = len(table)
    ident = tuple(range(n))
    for e in range(n):
        if table[e] == ident and all(table[x][e] == x for x in range(n)):
            return e
    raise GroupValidationError("table has no two-sided identity")


def _validate_table(table) -> None:
    n = len(table)
    if n == 0:
        raise GroupValidationError("empty table")
    t = np.array(table, dtype=np.int64)
    if t.shape != (n, n):
        raise GroupValidationError(f"table is not square: shape {t.shape}")
    if t.min() < 0 or t.max() >= n:
        raise GroupValidationError("table entries out of range")
    ref = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(t[a]), ref):
            raise GroupValidationError(f"row {a} is not a permutation", witness=(a,))
        if not np.array_equal(np.sort(t[:, a]), ref):
            raise GroupValidationError(f"column {a} is not a permutation", witness=(a,))
    _find_identity(tuple(tuple(r) for r in t.tolist()))
    for a in range(n):
        # (a*b)*c against a*(b*c) for all b, c at once
        left = t[t[a], :]
        right = t[a][t]
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            raise GroupValidationError(
                f"associativity fails on ({a}, {b}, {c})", witness=(a, b, c)
            )


# -- constructors -----------------------------------------------------------


def cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return Group(
        table, kind="cyclic", n=n, spec=f"C:{n}", name=f"C{n}",
        generators={"t": 1 % n}, validate=False,
    )


def dihedral(n: int) -> Group:
    """Dihedral group of order ``2n`` generated by ``r`` (order n) and ``s``."""
    if n < 2:
        raise ValueError("dihedral(n) needs n >= 2")
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for x in range(size):
        xs, a = divmod(x, n)
        for y in range(size):
            ys, b = divmod(y, n)
            if not xs and not ys:
                z = (a + b) % n
            elif not xs:
                z = n + (b - a) % n
            elif not ys:
                z = n + (a + b) % n
            else:
                z = (b - a) % n
            table[x][y] = z
    return Group(
        table, kind="dihedral", n=n, spec=f"D:{n}", name=f"D{n}",
        generators={"r": 1, "s": n}, validate=False,
    )


def from_table(
    table, *, name: str = "", generators: Sequence[int] = (),
    element_names: Sequence[str] | None = None, spec: str | None = None,
) -> Group:
    """Build and validate an external group from a Cayley table."""
    G = Group(table, kind="external", name=name, names=element_names, spec=spec or name)
    gens = list(generators)
    if gens:
        if any(not 0 <= g < G.order for g in gens):
            raise GroupValidationError("generator index out of range")
        if len(subgroup_generated(G, gens)) != G.order:
            raise GroupValidationError(f"listed generators do not generate {G.name}")
    names = element_names or [f"#{i}" for i in range(G.order)]
    for g in gens:
        nm = names[g]
        if re.fullmatch(r"[a-zA-Z]", nm):
            G.generators[nm] = g
    G.generator_indices = tuple(gens)
    return G


def load_catalog(path) -> list[Group]:
    """Read a JSON catalog: one group object or a list of them."""
    path = Path(path)
    data = json.loads(path.read_text())
    if isinstance(data, dict) and "groups" in data:
        data = data["groups"]
    if isinstance(data, dict):
        data = [data]
    groups = []
    for entry in data:
        try:
            name, order, table = entry["name"], entry["order"], entry["table"]
        except KeyError as exc:
            raise GroupValidationError(f"catalog entry missing field {exc}") from None
        if len(table) != order:
            raise GroupValidationError(f"{name}: table has {len(table)} rows, order is {order}")
        groups.append(
            from_table(
                table, name=name, generators=entry.get("generators", ()),
                element_names=entry.get("element_names"), spec=f"file:{path}#{name}",
            )
        )
    return groups


def group_to_catalog_entry(G: Group) -> dict:
    return {
        "name": G.name,
        "order": G.order,
        "table": [list(r) for r in G.table],
        "generators": list(G.generator_indices) or generating_set(G),
        "element_names": [G.name_of(x) for x in range(G.order)],
    }


_SPEC = re.compile(r"^\s*([CD])\s*:\s*(\d+)\s*$")


def build_group(spec: str, catalogs: Sequence[Group] = ()) -> Group:
    """Resolve ``C:n``, ``D:n`` or ``file:PATH#NAME`` (or a catalog group name)."""
    m = _SPEC.match(spec)
    if m:
        kind, n = m.group(1), int(m.group(2))
        try:
            return cyclic(n) if kind == "C" else dihedral(n)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if spec.startswith("file:"):
        path, _, name = spec[5:].partition("#")
        groups = load_catalog(path)
        if not name:
            if len(groups) != 1:
                raise ParseError(f"{path} holds {len(groups)} groups; use file:PATH#NAME")
            return groups[0]
        for G in groups:
            if G.name == name:
                return G
        raise ParseError(f"no group named {name!r} in {path}")
    for G in catalogs:
        if G.name == spec or G.spec == spec:
            return G
    raise ParseError(f"unknown group spec {spec!r} (expected C:n, D:n or file:PATH#NAME)")


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    def __post_init__(self):
        G, elems = self.parent, tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        s = set(elems)
        if G.identity not in s:
            raise ShapeError("subgroup must contain the identity")
        for a in elems:
            if G.inverse[a] not in s:
                raise ShapeError(f"not closed under inverse at {G.name_of(a)}")
            for b in elems:
                if G.table[a][b] not in s:
                    raise ShapeError(
                        f"not closed under product: {G.name_of(a)}*{G.name_of(b)}"
                    )
        if G.order % len(elems):
            raise ShapeError("subgroup order does not divide group order")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def issubgroup(self, other: "Subgroup") -> bool:
        return other.parent is self.parent and self._set <= other._set


def subgroup_generated(G: Group, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G, gens))


def _closure(G: Group, gens: Iterable[int]) -> tuple[int, ...]:
    gens = sorted(set(gens))
    seen = {G.identity}
    frontier = [G.identity]
    table = G.table
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def generates(G: Group, elements: Iterable[int]) -> bool:
    return len(_closure(G, elements)) == G.order


def generating_set(G: Group) -> list[int]:
    """A small generating set, chosen greedily by decreasing element order."""
    gens: list[int] = []
    current = {G.identity}
    for x in sorted(range(G.order), key=lambda y: (-G.element_orders[y], y)):
        if x not in current:
            gens.append(x)
            current = set(_closure(G, gens))
            if len(current) == G.order:
                break
    return gens


def element_order(G: Group, x: int) -> int:
    return G.element_orders[x]


# -- automorphisms ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Automorphism:
    parent: Group
    map: tuple[int, ...]
    label: str = ""

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and other.parent is self.parent
            and other.map == self.map
        )

    def __hash__(self):
        return hash(self.map)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other`` (apply ``other`` first)."""
        return Automorphism(self.parent, tuple(self.map[x] for x in other.map))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return Automorphism(self.parent, tuple(inv))

    def is_homomorphism(self) -> bool:
        t = self.parent.table
        m = self.map
        return (
            sorted(m) == list(range(len(m)))
            and all(m[t[a][b]] == t[m[a]][m[b]] for a in range(len(m)) for b in range(len(m)))
        )


def dihedral_automorphism(G: Group, alpha: int, beta: int) -> Automorphism:
    """``(r, s) -> (r^alpha, s r^beta)`` on ``dihedral(n)``."""
    n = G.n
    if G.kind != "dihedral" or math.gcd(alpha, n) != 1:
        raise ShapeError("phi(alpha, beta) needs a dihedral group and alpha a unit mod n")
    m = [(alpha * k) % n for k in range(n)] + [n + (beta + alpha * k) % n for k in range(n)]
    return Automorphism(G, tuple(m), label=f"phi({alpha % n},{beta % n})")


def automorphisms(G: Group, limit: int = BRUTE_FORCE_AUT_LIMIT) -> list[Automorphism]:
    """All automorphisms of ``G``; closed forms for cyclic and dihedral (n >= 3)."""
    cached = G.__dict__.get("_automorphisms")
    if cached is not None:
        return cached
    if G.kind == "cyclic":
        n = G.n
        result = [
            Automorphism(G, tuple((a * k) % n for k in range(n)), label=f"t->t^{a}")
            for a in range(1, n + 1) if math.gcd(a, n) == 1
        ]
        if n == 1:
            result = [Automorphism(G, (0,), label="id")]
    elif G.kind == "dihedral" and G.n >= 3:
        n = G.n
        result = [
            dihedral_automorphism(G, a, b)
            for a in range(1, n) if math.gcd(a, n) == 1
            for b in range(n)
        ]
    else:
        if G.order > limit:
            raise CapabilityError(
                f"automorphism search limited to order <= {limit}; {G.name} has order {G.order}"
            )
        result = _brute_force_automorphisms(G)
    G.__dict__["_automorphisms"] = result
    return result


def _brute_force_automorphisms(G: Group) -> list[Automorphism]:
    gens = generating_set(G)
    orders = G.element_orders
    candidates = [G.elements_of_order(orders[g]) for g in gens]
    t = G.table
    result = []
    for images in product(*candidates):
        m = {G.identity: G.identity}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                mx = m[x]
                for g, img in zip(gens, images):
                    y, my = t[x][g], t[mx][img]
                    seen = m.get(y)
                    if seen is None:
                        m[y] = my
                        nxt.append(y)
                    elif seen != my:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if not ok or len(m) != G.order or len(set(m.values())) != G.order:
            continue
        mp = tuple(m[x] for x in range(G.order))
        if all(mp[t[a][b]] == t[mp[a]][mp[b]] for a in range(G.order) for b in range(G.order)):
            result.append(Automorphism(G, mp))
    result.sort(key=lambda a: a.map)
    return result


def automorphism_generators(G: Group) -> list[Automorphism]:
    """A small generating set of Aut(G), picked greedily."""
    auts = automorphisms(G)
    ident = tuple(range(G.order))
    gens: list[Automorphism] = []
    span = {ident}
    for a in auts:
        if a.map in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    c = tuple(g.map[x] for x in m)
                    if c not in span:
                        span.add(c)
                        nxt.append(c)
            frontier = nxt
        if len(span) == len(auts):
            break
    return gens


# -- cosets -------------------------------------------------------------------


def left_cosets(G: Group, H: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``gH`` ordered by least element index."""
    assigned = [False] * G.order
    cosets = []
    for g in range(G.order):
        if assigned[g]:
            continue
        c = tuple(sorted(G.table[g][h] for h in H.elements))
        for y in c:
            assigned[y] = True
        cosets.append(c)
    return cosets


def coset_action(G: Group, H: Subgroup, x: int) -> tuple[int, ...]:
    """Permutation ``c -> x c`` on the left cosets of ``H``."""
    cosets = left_cosets(G, H)
    where = {}
    for i, c in enumerate(cosets):
        for y in c:
            where[y] = i
    return tuple(where[G.table[x][c[0]]] for c in cosets)


def conjugacy_class(G: Group, x: int) -> frozenset[int]:
    return frozenset(G.conjugate(x, g) for g in range(G.order))
