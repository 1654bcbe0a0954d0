# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exhaustive cut capacities and blocking-flow max flow."""
import numpy as np
from libc.stdlib cimport malloc, free


def cut_capacities(int n, const long long[:] eu, const long long[:] ev, const long long[:] ew):
    cdef Py_ssize_t half = (<Py_ssize_t>1) << (n - 1)
    cdef Py_ssize_t m = eu.shape[0]
    out = np.zeros(half, dtype=np.int64)
    cdef long long[:] cap = out
    cdef Py_ssize_t k, j
    cdef long long inside, acc
    for k in range(half):
        inside = (k << 1) | 1
        acc = 0
        for j in range(m):
            if ((inside >> eu[j]) ^ (inside >> ev[j])) & 1:
                acc += ew[j]
        cap[k] = acc
    return out


cdef long long _augment(int s, const long long[:] start, const long long[:] arcs,
                        const long long[:] head, long long[:] cap, const signed char[:] role,
                        int* level, long long* it, long long* stack) nogil:
    cdef int depth = 0
    cdef int u = s
    cdef long long a, nxt, f, end
    cdef int i
    while True:
        if role[u] == 2:
            f = cap[stack[0]]
            for i in range(1, depth):
                if cap[stack[i]] < f:
                    f = cap[stack[i]]
            for i in range(depth):
                cap[stack[i]] -= f
                cap[stack[i] ^ 1] += f
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
            stack[depth] = nxt
            depth += 1
            u = <int>head[nxt]
        else:
            level[u] = -1
            if depth == 0:
                return 0
            depth -= 1
            a = stack[depth]
            u = <int>head[a ^ 1]
            it[u] += 1


def dinic(int n, const long long[:] start, const long long[:] arcs, const long long[:] head,
          long long[:] cap, const signed char[:] role):
    cdef int* level = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef long long* it = <long long*>malloc(n * sizeof(long long))
    cdef long long* stack = <long long*>malloc((n + 1) * sizeof(long long))
    cdef long long total = 0, f
    cdef int qh, qt, u, v, s
    cdef long long p, a
    cdef bint reached
    if not level or not queue or not it or not stack:
        free(level); free(queue); free(it); free(stack)
        raise MemoryError()
    try:
        with nogil:
            while True:
                qh = 0
                qt = 0
                for v in range(n):
                    level[v] = -1
                    if role[v] == 1:
                        level[v] = 0
                        queue[qt] = v
                        qt += 1
                reached = False
                while qh < qt:
                    u = queue[qh]
                    qh += 1
                    if role[u] == 2:
                        reached = True
                        continue
                    for p in range(start[u], start[u + 1]):
                        a = arcs[p]
                        v = <int>head[a]
                        if cap[a] > 0 and level[v] < 0:
                            level[v] = level[u] + 1
                            queue[qt] = v
                            qt += 1
                if not reached:
                    break
                for v in range(n):
                    it[v] = start[v]
                for s in range(n):
                    if role[s] != 1:
                        continue
                    while True:
                        f = _augment(s, start, arcs, head, cap, role, level, it, stack)
                        if f == 0:
                            break
                        total += f
    finally:
        free(level); free(queue); free(it); free(stack)
    return total
