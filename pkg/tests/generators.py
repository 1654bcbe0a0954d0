"""Random Steiner instances: connected multigraphs with n in [3, 8], at most 14
distinct edges, multiplicities in [1, 3] and |S| in [2, n].

Plain uniform sampling almost never produces skeleton cycles or terminal
non-Steiner units, so three structured families are mixed in.
"""

import random

from hypothesis import strategies as st

from carcass.graphcore import MultiGraph, SteinerContext


def _finish(rng, n, edges, S=None):
    if S is None:
        S = rng.sample(range(n), rng.randint(2, n))
    return SteinerContext(MultiGraph(n, [(u, v, w) for (u, v), w in sorted(edges.items())]), frozenset(S))


def uniform(rng):
    n = rng.randint(3, 8)
    edges = {}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(1, 3)
    target = rng.randint(n - 1, min(14, n * (n - 1) // 2))
    while len(edges) < target:
        u, v = rng.sample(range(n), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.randint(1, 3))
    return _finish(rng, n, edges)


def cactus(rng):
    # cycles glued at vertices, one multiplicity per cycle
    n = rng.randint(4, 8)
    edges = {}
    verts = [0]
    nxt = 1
    while nxt < n:
        L = rng.randint(3, 6)
        ring = [rng.choice(verts)]
        while len(ring) < L and nxt < n:
            ring.append(nxt)
            verts.append(nxt)
            nxt += 1
        w = rng.choice([1, 1, 2])
        if len(ring) == 2:
            edges[(min(ring), max(ring))] = rng.randint(1, 3)
            continue
        for i in range(len(ring)):
            a, b = ring[i], ring[(i + 1) % len(ring)]
            key = (min(a, b), max(a, b))
            edges[key] = edges.get(key, 0) + w
    for k in list(edges):
        edges[k] = min(edges[k], 3)
    while len(edges) > 14:
        edges.pop(next(iter(edges)))
    if not MultiGraph(n, [(u, v, w) for (u, v), w in edges.items()]).is_connected():
        return uniform(rng)
    return _finish(rng, n, edges)


def ringish(rng):
    # a single ring, some positions grown into small blobs
    L = rng.randint(4, 6)
    n = rng.randint(L, 8)
    w = rng.choice([1, 2])
    edges = {}
    for i in range(L):
        a, b = i, (i + 1) % L
        edges[(min(a, b), max(a, b))] = w
    for extra in range(L, n):
        host = rng.randrange(extra)
        edges[(host, extra)] = rng.randint(1, 3)
        if rng.random() < 0.5:
            other = rng.randrange(extra)
            if other != host:
                edges.setdefault((min(other, extra), max(other, extra)), rng.randint(1, 2))
    return _finish(rng, n, edges)


def hubs(rng):
    # non-Steiner hubs joined in a tree, Steiner leaves hanging off the hubs
    h = rng.randint(1, 3)
    edges = {}
    n = h
    leaves = []
    wl = rng.randint(1, 2)
    for hub in range(h):
        if hub:
            edges[(rng.randrange(hub), hub)] = rng.randint(1, 3)
        for _ in range(rng.randint(2 if h > 1 else 3, 3)):
            if n >= 8:
                break
            edges[(hub, n)] = wl
            leaves.append(n)
            n += 1
    if rng.random() < 0.3 and n < 8:
        a, b = rng.sample(leaves, 2)
        edges[(min(a, b), max(a, b))] = 1
    S = leaves if rng.random() < 0.7 else rng.sample(range(n), rng.randint(2, n))
    return _finish(rng, n, edges, S)


FAMILIES = (uniform, cactus, ringish, hubs)


def instance(rng):
    return rng.choice(FAMILIES)(rng)


def suite(count=300, seed=20240):
    rng = random.Random(seed)
    return [instance(rng) for _ in range(count)]


instances = st.integers(0, 2**32 - 1).map(lambda seed: instance(random.Random(seed)))
