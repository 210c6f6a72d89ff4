"""Pure-Python implementations of the search kernels.

Every function here has a compiled twin in ordramsey._speedups with identical
semantics (same witnesses, same enumeration order); ordramsey.kernels picks
one at import time.  Inputs are primitives: 1-based adjacency bitmask rows
(index 0 unused) and plain ints, so both twins share a calling convention.
"""

from __future__ import annotations


def _full_mask(n: int) -> int:
    return ((1 << (n + 1)) - 1) & ~1


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_embedding(
    host_n: int,
    host_adj: list[int],
    pat_n: int,
    pat_pre: list[list[int]],
    slots: list[int] | None = None,
) -> list[int] | None:
    """Lexicographically least order-preserving embedding, or None.

    pat_pre[t] lists the pattern neighbors of t that are smaller than t.
    slots, when given, holds a per-pattern-vertex bitmask of allowed host
    vertices (length pat_n + 1, index 0 unused).  The result has element
    i-1 carrying the host vertex of pattern vertex i.
    """
    if pat_n == 0:
        return []
    full = _full_mask(host_n)
    if slots is None:
        slots = [full] * (pat_n + 1)
    mapping = [0] * (pat_n + 1)
    cand = [0] * (pat_n + 1)
    cursor = [0] * (pat_n + 1)

    t = 1
    cand[1] = slots[1] & full
    while t >= 1:
        rest = cand[t] & ~((1 << (cursor[t] + 1)) - 1) if cursor[t] else cand[t]
        if not rest:
            t -= 1
            continue
        w = (rest & -rest).bit_length() - 1
        cursor[t] = w
        mapping[t] = w
        if t == pat_n:
            return mapping[1:]
        nxt = t + 1
        c = slots[nxt] & full & ~((1 << (w + 1)) - 1)
        for j in pat_pre[nxt]:
            c &= host_adj[mapping[j]]
        cand[nxt] = c
        cursor[nxt] = 0
        t = nxt
    return None


def count_embeddings(
    host_n: int,
    host_adj: list[int],
    pat_n: int,
    pat_pre: list[list[int]],
    slots: list[int] | None,
    cap: int,
) -> int:
    """Number of distinct embeddings, saturating at cap."""
    if pat_n == 0:
        return min(1, cap)
    full = _full_mask(host_n)
    if slots is None:
        slots = [full] * (pat_n + 1)
    mapping = [0] * (pat_n + 1)
    count = 0

    def rec(t: int) -> bool:
        nonlocal count
        for w in _bits(cand_at(t)):
            mapping[t] = w
            if t == pat_n:
                count += 1
                if count >= cap:
                    return True
            elif rec(t + 1):
                return True
        return False

    def cand_at(t: int) -> int:
        prev = mapping[t - 1] if t > 1 else 0
        c = slots[t] & full & ~((1 << (prev + 1)) - 1)
        for j in pat_pre[t]:
            c &= host_adj[mapping[j]]
        return c

    rec(1)
    return count


def _exists_pinned(
    host_n: int,
    adj: list[int],
    pat_n: int,
    pat_pre: list[list[int]],
    p: int,
    q: int,
    u: int,
    v: int,
) -> bool:
    """Does an embedding exist with pattern vertex p pinned to u and q to v?"""
    full = _full_mask(host_n)
    mapping = [0] * (pat_n + 1)

    def rec(t: int) -> bool:
        prev = mapping[t - 1] if t > 1 else 0
        c = full & ~((1 << (prev + 1)) - 1)
        if t == p:
            c &= 1 << u
        elif t == q:
            c &= 1 << v
        for j in pat_pre[t]:
            c &= adj[mapping[j]]
        for w in _bits(c):
            mapping[t] = w
            if t == pat_n or rec(t + 1):
                return True
        return False

    return rec(1)


def search_good_coloring(
    N: int,
    pat1_n: int,
    pat1_edges: list[tuple[int, int]],
    pat2_n: int,
    pat2_edges: list[tuple[int, int]],
) -> list[int] | None:
    """Find a coloring of ordered K_N with no Red copy of pattern 1 and no Blue
    copy of pattern 2, backtracking over pairs in colex order (Red tried first).

    Returns per-pair colors in colex order (0 Red, 1 Blue), or None when every
    coloring contains a forbidden copy.
    """
    # an edgeless pattern that fits is present in any coloring of its color
    if pat1_n <= N and not pat1_edges:
        return None
    if pat2_n <= N and not pat2_edges:
        return None

    def prelist(pn: int, pedges: list[tuple[int, int]]) -> list[list[int]]:
        pre: list[list[int]] = [[] for _ in range(pn + 1)]
        for a, b in pedges:
            pre[b].append(a)
        for row in pre:
            row.sort()
        return pre

    pre1 = prelist(pat1_n, pat1_edges)
    pre2 = prelist(pat2_n, pat2_edges)
    pairs = [(i, j) for j in range(2, N + 1) for i in range(1, j)]
    red = [0] * (N + 1)
    blue = [0] * (N + 1)
    bits: list[int] = []

    def completes(adj: list[int], pn: int, pre, pedges, i: int, j: int) -> bool:
        if pn > N:
            return False
        for a, b in pedges:
            if _exists_pinned(N, adj, pn, pre, a, b, i, j):
                return True
        return False

    def place(k: int) -> bool:
        if k == len(pairs):
            return True
        i, j = pairs[k]
        bi, bj = 1 << i, 1 << j
        red[i] |= bj
        red[j] |= bi
        bits.append(0)
        if not completes(red, pat1_n, pre1, pat1_edges, i, j) and place(k + 1):
            return True
        red[i] &= ~bj
        red[j] &= ~bi
        bits.pop()
        blue[i] |= bj
        blue[j] |= bi
        bits.append(1)
        if not completes(blue, pat2_n, pre2, pat2_edges, i, j) and place(k + 1):
            return True
        blue[i] &= ~bj
        blue[j] &= ~bi
        bits.pop()
        return False

    return list(bits) if place(0) else None


def transitive_chain(N: int, beats: list[int], k: int) -> list[int] | None:
    """First dominance-ordered transitive subtournament of size k in DFS order."""
    if k <= 0:
        return []
    chain = [0] * k

    def rec(depth: int, cands: int) -> bool:
        if cands.bit_count() < k - depth:
            return False
        for v in _bits(cands):
            chain[depth] = v
            if depth + 1 == k or rec(depth + 1, cands & beats[v]):
                return True
        return False

    full = _full_mask(N)
    return chain[:] if rec(0, full) else None


def digraph_injection(
    host_n: int,
    beats: list[int],
    pat_n: int,
    pat_arcs: list[tuple[int, int]],
    order: list[int],
    budget: int,
) -> tuple[list[int] | None, int, bool]:
    """Arc-preserving injection of a digraph pattern into a tournament host.

    Assigns pattern vertices in the given order with forward checking; every
    attempted assignment counts one node against the budget.  Returns
    (mapping with element i-1 the host of pattern vertex i, nodes used, exhausted).
    """
    full = _full_mask(host_n)
    if pat_n > host_n:
        return None, 0, False
    beaten = [0] * (host_n + 1)
    for h in range(1, host_n + 1):
        beaten[h] = full & ~beats[h] & ~(1 << h)

    out_pat = [0] * (pat_n + 1)
    in_pat = [0] * (pat_n + 1)
    for u, v in pat_arcs:
        out_pat[u] |= 1 << v
        in_pat[v] |= 1 << u

    cand = [full] * (pat_n + 1)
    mapping = [0] * (pat_n + 1)
    trail: list[tuple[int, int]] = []
    nodes = 0
    exhausted = False

    def assign(p: int, h: int, upcoming: list[int]) -> bool:
        for q in upcoming:
            old = cand[q]
            new = old & ~(1 << h)
            if out_pat[p] & (1 << q):
                new &= beats[h]
            if in_pat[p] & (1 << q):
                new &= beaten[h]
            if new != old:
                trail.append((q, old))
                cand[q] = new
                if not new:
                    return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            q, old = trail.pop()
            cand[q] = old

    def rec(t: int) -> bool:
        nonlocal nodes, exhausted
        if t == pat_n:
            return True
        p = order[t]
        upcoming = order[t + 1 :]
        for h in _bits(cand[p]):
            nodes += 1
            if nodes > budget:
                exhausted = True
                return False
            mapping[p] = h
            mark = len(trail)
            if assign(p, h, upcoming) and rec(t + 1):
                return True
            undo(mark)
            if exhausted:
                return False
        return False

    found = rec(0)
    return (mapping[1:] if found else None), nodes, exhausted


def clique_tuple_buckets(
    n: int, adj: list[int], k: int, cap: int
) -> tuple[int, bool, dict[tuple[int, ...], list]]:
    """Enumerate increasing k-tuples spanning cliques, in lexicographic order.

    Aggregates tuples into buckets keyed by the odd-position vertices
    (positions 2, 4, ... in 1-based position counting); each bucket holds
    [tuple count, list of even-position vertex bitmasks].  Stops after cap
    tuples; truncated is True when at least one further tuple existed.
    """
    buckets: dict[tuple[int, ...], list] = {}
    total = 0
    truncated = False
    tup = [0] * k
    half = (k + 1) // 2

    class _Stop(Exception):
        pass

    def record() -> None:
        nonlocal total, truncated
        if total >= cap:
            truncated = True
            raise _Stop
        key = tuple(tup[1::2])
        ent = buckets.get(key)
        if ent is None:
            ent = [0, [0] * half]
            buckets[key] = ent
        ent[0] += 1
        masks = ent[1]
        for idx in range(half):
            masks[idx] |= 1 << tup[2 * idx]
        total += 1

    def rec(depth: int, cands: int) -> None:
        if cands.bit_count() < k - depth:
            return
        for v in _bits(cands):
            tup[depth] = v
            if depth + 1 == k:
                record()
            else:
                rec(depth + 1, cands & adj[v] & ~((1 << (v + 1)) - 1))

    full = _full_mask(n)
    try:
        if k >= 1:
            rec(0, full)
    except _Stop:
        pass
    return total, truncated, buckets
