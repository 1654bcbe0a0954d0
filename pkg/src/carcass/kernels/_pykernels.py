"""Pure-Python kernels. Same contract as the compiled ``_ckernels`` module."""
from collections import deque

import numpy as np

SOURCE = 1
SINK = 2


def cut_capacities(n, eu, ev, ew):
    """Capacity of every cut whose inside contains vertex 0.

    Entry ``k`` of the result is the capacity of ``{0} | {i + 1 : bit i of k}``,
    for ``k`` in ``range(2 ** (n - 1))``.
    """
    half = 1 << (n - 1)
    inside = (np.arange(half, dtype=np.int64) << 1) | 1
    cap = np.zeros(half, dtype=np.int64)
    for u, v, w in zip(eu, ev, ew):
        cap += w * (((inside >> int(u)) ^ (inside >> int(v))) & 1)
    return cap


def _augment(s, start, arcs, head, cap, role, level, it):
    stack = []
    u = s
    while True:
        if role[u] == SINK:
            f = min(cap[a] for a in stack)
            for a in stack:
                cap[a] -= f
                cap[a ^ 1] += f
            return f
        end = start[u + 1]
        nxt = -1
        while it[u] < end:
            a = arcs[it[u]]
            if cap[a] > 0 and level[head[a]] == level[u] + 1:
                nxt = a
                break
            it[u] += 1
        if nxt >= 0:
            stack.append(nxt)
            u = head[nxt]
        else:
            level[u] = -1
            if not stack:
                return 0
            a = stack.pop()
            u = head[a ^ 1]
            it[u] += 1


def dinic(n, start, arcs, head, cap, role):
    """Blocking-flow max flow from every ``role == 1`` vertex to every ``role == 2`` vertex.

    ``cap`` holds residual capacities and is updated in place; arcs ``a`` and
    ``a ^ 1`` are mutual reverses. Returns the flow value.
    """
    start = [int(x) for x in start]
    arcs = [int(x) for x in arcs]
    head = [int(x) for x in head]
    role = [int(x) for x in role]
    res = [int(x) for x in cap]
    sources = [v for v in range(n) if role[v] == SOURCE]
    total = 0
    while True:
        level = [-1] * n
        queue = deque(sources)
        for s in sources:
            level[s] = 0
        reached = False
        while queue:
            u = queue.popleft()
            if role[u] == SINK:
                reached = True
                continue
            for p in range(start[u], start[u + 1]):
                a = arcs[p]
                v = head[a]
                if res[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        if not reached:
            break
        it = start[:n]
        for s in sources:
            while True:
                f = _augment(s, start, arcs, head, res, role, level, it)
                if f == 0:
                    break
                total += f
    for a, r in enumerate(res):
        cap[a] = r
    return total
