"""Strongly connected components and reachability on integer graphs.

Graphs are adjacency lists: ``succ[u]`` is an iterable of successor
node indices, nodes are ``0 .. len(succ) - 1``.
"""

from collections import deque


def tarjan(succ):
    """Return ``(comp, components)``.

    ``comp[u]`` is the component index of node ``u``. ``components`` lists
    the node lists of each component in topological order of the
    condensation (every edge goes from a lower to a higher or equal
    component index). Iterative, so deep graphs do not hit the recursion
    limit.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    found = []
    comp = [-1] * n
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                block = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    block.append(w)
                    if w == v:
                        break
                found.append(block)
    # Tarjan emits sinks first.
    found.reverse()
    for i, block in enumerate(found):
        block.sort()
        for v in block:
            comp[v] = i
    return comp, found


def reachable(succ, sources):
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reverse_graph(succ):
    pred = [[] for _ in succ]
    for v, ws in enumerate(succ):
        for w in ws:
            pred[w].append(v)
    return pred


def bfs_path(succ_labeled, sources, is_target, allowed=None):
    """Shortest path over a labeled graph.

    ``succ_labeled[v]`` yields ``(label, w)`` pairs. Returns the list of
    edges ``(v, label, w)`` from some source to the first node accepted by
    ``is_target`` (sources themselves are not tested), or ``None``.
    ``allowed`` optionally restricts the nodes that may be entered.
    """
    parent = {}
    queue = deque()
    for s in sources:
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        for label, w in succ_labeled[v]:
            if allowed is not None and not allowed(w):
                continue
            if is_target(w):
                path = [(v, label, w)]
                while parent[v] is not None:
                    path.append(parent[v])
                    v = parent[v][0]
                path.reverse()
                return path
            if w not in parent:
                parent[w] = (v, label, w)
                queue.append(w)
    return None
