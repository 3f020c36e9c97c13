"""Slow, independent reference computations used to freeze derived values.

Nothing here imports the enumeration, move or representation modules: only
the multiplication table of a group is shared.
"""

from __future__ import annotations

from itertools import permutations, product


def _orders(table):
    n = len(table)
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    out = []
    for x in range(n):
        k, y = 1, x
        while y != e:
            y = table[y][x]
            k += 1
        out.append(k)
    return e, out


def _inverse(table, e):
    n = len(table)
    return [next(y for y in range(n) if table[x][y] == e) for x in range(n)]


def _span(table, e, gens):
    seen = {e}
    stack = [e]
    while stack:
        x = stack.pop()
        for g in gens:
            y = table[x][g]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen)


def naive_vectors(table, h, periods):
    """Every tuple over the whole group, filtered by the three conditions."""
    n = len(table)
    e, orders = _orders(table)
    inv = _inverse(table, e)
    out = []
    for tup in product(range(n), repeat=2 * h + len(periods)):
        acc = e
        for i in range(h):
            a, b = tup[2 * i], tup[2 * i + 1]
            acc = table[acc][table[table[table[a][b]][inv[a]]][inv[b]]]
        for x in tup[2 * h:]:
            acc = table[acc][x]
        if acc != e:
            continue
        if any(orders[x] != m for x, m in zip(tup[2 * h:], periods)):
            continue
        if _span(table, e, tup) == n:
            out.append(tup)
    return out


def pooled_vectors(table, h, periods):
    """Like naive_vectors but drawing each elliptic entry from its order class."""
    n = len(table)
    e, orders = _orders(table)
    inv = _inverse(table, e)
    pools = [range(n)] * (2 * h) + [[x for x in range(n) if orders[x] == m] for m in periods]
    out = []
    for tup in product(*pools):
        acc = e
        for i in range(h):
            a, b = tup[2 * i], tup[2 * i + 1]
            acc = table[acc][table[table[table[a][b]][inv[a]]][inv[b]]]
        for x in tup[2 * h:]:
            acc = table[acc][x]
        if acc == e and _span(table, e, tup) == n:
            out.append(tup)
    return out


def brute_automorphisms(table):
    """All automorphisms, by trying every permutation of a generating set's images."""
    n = len(table)
    e, orders = _orders(table)
    gens = []
    for x in sorted(range(n), key=lambda y: -orders[y]):
        if _span(table, e, gens) == n:
            break
        if _span(table, e, gens + [x]) > _span(table, e, gens):
            gens.append(x)
    auts = []
    for images in product(*[[y for y in range(n) if orders[y] == orders[g]] for g in gens]):
        m = {e: e}
        for g, im in zip(gens, images):
            m[g] = im
        stack = list(gens)
        ok = True
        # extend multiplicatively along words in the generators
        while stack and ok:
            x = stack.pop()
            for g in gens:
                y = table[x][g]
                img = table[m[x]][m[g]]
                if y in m:
                    if m[y] != img:
                        ok = False
                        break
                else:
                    m[y] = img
                    stack.append(y)
        if not ok or len(m) != n or len(set(m.values())) != n:
            continue
        if all(m[table[a][b]] == table[m[a]][m[b]] for a in range(n) for b in range(n)):
            auts.append(tuple(m[x] for x in range(n)))
    return sorted(set(auts))


def _moves(table, e, inv, h, l):
    """Forward move maps on flat tuples, written directly from their formulas."""

    def mul(*xs):
        acc = e
        for x in xs:
            acc = table[acc][x]
        return acc

    maps = []
    for i in range(l - 1):
        def braid(v, i=i):
            v = list(v)
            x, y = v[2 * h + i], v[2 * h + i + 1]
            v[2 * h + i], v[2 * h + i + 1] = y, mul(inv[y], x, y)
            return tuple(v)
        maps.append(braid)
    if h == 1:
        def a1(v):
            a, b = v[0], v[1]
            return (a, mul(b, a)) + v[2:]

        def a2(v):
            a, b = v[0], v[1]
            return (mul(a, b), b) + v[2:]

        maps += [a1, a2]
        for i in range(l):
            def c1(v, i=i):
                a, b, xs = v[0], v[1], list(v[2:])
                w, z = mul(*xs[:i]), mul(*xs[i + 1:])
                u, c = mul(inv[b], w, z), mul(z, inv[b], w)
                xs[i] = mul(c, xs[i], inv[c])
                return (mul(u, a), b) + tuple(xs)

            def c2(v, i=i):
                a, b, xs = v[0], v[1], list(v[2:])
                w, z = mul(*xs[:i]), mul(*xs[i + 1:])
                u, c = mul(w, z, a), mul(z, a, w)
                xs[i] = mul(c, xs[i], inv[c])
                return (a, mul(u, b)) + tuple(xs)

            maps += [c1, c2]
    return maps


def bfs_orbits(table, h, periods, seeds=None):
    """Orbit partition of the sorted-period vectors by plain BFS with a visited set.

    The search runs through vectors of every period arrangement (braids move
    periods around) and every automorphism; classes are reported on the
    sorted arrangement only.  Returns sorted ``[(representative, size)]``.
    """
    e, orders = _orders(table)
    inv = _inverse(table, e)
    l = len(periods)
    periods = tuple(sorted(periods))
    if seeds is None:
        seeds = pooled_vectors(table, h, periods)
    auts = brute_automorphisms(table)
    maps = _moves(table, e, inv, h, l)
    for m in auts:
        maps.append(lambda v, m=m: tuple(m[x] for x in v))
    label = {}
    classes = []
    for seed in sorted(seeds):
        if seed in label:
            continue
        k = len(classes)
        label[seed] = k
        frontier = [seed]
        members = [seed]
        while frontier:
            nxt = []
            for v in frontier:
                for f in maps:
                    w = f(v)
                    if w not in label:
                        label[w] = k
                        nxt.append(w)
                        members.append(w)
            frontier = nxt
        sorted_members = [v for v in members if tuple(orders[x] for x in v[2 * h:]) == periods]
        classes.append((min(sorted_members), len(sorted_members)))
    return sorted(classes)


def period_arrangements(periods):
    return sorted(set(permutations(periods)))
