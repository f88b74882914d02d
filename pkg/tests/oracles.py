"""Brute-force reference computations, written against coordinates only.

Nothing here touches bitsets, addition tables or the rep_counts kernels.
"""

from itertools import product


def coords(orders, g):
    out = []
    for j in range(len(orders)):
        w = 1
        for n in orders[j + 1 :]:
            w *= n
        out.append((g // w) % orders[j])
    return out


def flat(orders, c):
    g = 0
    for a, n in zip(c, orders):
        g = g * n + (a % n)
    return g


def add(orders, g, h):
    return flat(orders, [a + b for a, b in zip(coords(orders, g), coords(orders, h))])


def neg(orders, g):
    return flat(orders, [-a for a in coords(orders, g)])


def order_of(orders):
    n = 1
    for m in orders:
        n *= m
    return n


def rep_counts(orders, A, B):
    counts = [0] * order_of(orders)
    for a, b in product(A, B):
        counts[add(orders, a, b)] += 1
    return counts


def sumset(orders, A, B):
    return {add(orders, a, b) for a, b in product(A, B)}


def stabilizer(orders, S):
    S = set(S)
    return {x for x in range(order_of(orders)) if {add(orders, x, s) for s in S} == S}


def all_subgroups(orders):
    """Every subset containing 0 that is closed under addition (tiny groups only)."""
    n = order_of(orders)
    found = []
    for mask in range(1 << n):
        if not mask & 1:
            continue
        S = {g for g in range(n) if (mask >> g) & 1}
        if all(add(orders, x, y) in S for x in S for y in S):
            found.append(frozenset(S))
    return found
