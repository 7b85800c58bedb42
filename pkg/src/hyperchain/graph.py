"""Small digraph toolkit: Tarjan SCCs, condensation reachability, restricted search.

A digraph is a tuple of successor tuples indexed by vertex.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence

Digraph = tuple[tuple[int, ...], ...]


def strongly_connected_components(succ: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Iterative Tarjan; linear in vertices + arcs.

    Returns ``(sccs, comp_of)``. SCCs come out in reverse topological order of the
    condensation: every arc leaving an SCC points to one listed earlier.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            nbrs = succ[v]
            if pos < len(nbrs):
                work[-1] = (v, pos + 1)
                w = nbrs[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(sccs)
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                sccs.append(comp)
    return sccs, comp_of


def cyclic_vertices(succ: Sequence[Sequence[int]], sccs=None, comp_of=None) -> list[bool]:
    """Vertices lying on a cycle (path of length >= 1 back to themselves)."""
    if sccs is None:
        sccs, comp_of = strongly_connected_components(succ)
    flags = [False] * len(succ)
    for comp in sccs:
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            for v in comp:
                flags[v] = True
    return flags


def reachable(succ: Sequence[Sequence[int]], start: int, within: Iterable[int] | None = None) -> set[int]:
    """Vertices reachable from ``start`` by paths of length >= 1, optionally inside ``within``.

    ``start`` itself is included only if it lies on such a closed path.
    """
    allowed = None if within is None else set(within)
    seen: set[int] = set()
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w in seen or (allowed is not None and w not in allowed):
                continue
            seen.add(w)
            queue.append(w)
    return seen


def restrict(succ: Sequence[Sequence[int]], vertices: Iterable[int]) -> tuple[list[int], Digraph]:
    """Induced subgraph, relabelled to ``0..k-1``. Returns ``(old_ids, subgraph)``."""
    old = sorted(set(vertices))
    new = {v: i for i, v in enumerate(old)}
    sub = tuple(tuple(new[w] for w in succ[v] if w in new) for v in old)
    return old, sub


def arc_count(succ: Sequence[Sequence[int]]) -> int:
    return sum(len(s) for s in succ)
