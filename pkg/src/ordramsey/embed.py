"""Order-preserving embeddings and the embed-or-sparse-pair dichotomies.

An embedding of a pattern into a host is a strictly increasing vertex map
that preserves every pattern edge.  The greedy dichotomy places pattern
vertices into prescribed slots while keeping, for every not-yet-placed
vertex, a candidate set that shrinks by at most a factor c per placed
neighbor; when no placement survives, it extracts a pair of vertex sets with
cross density at most c instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .core import OrderedGraph, bits_of, density_between, mask_of, vertex_tuple
from .errors import DomainError, InternalContractError, ParameterError
from .skeleton import Skeleton, verify_skeleton

DEFAULT_COUNT_CAP = 10_000_000


@dataclass(frozen=True)
class Embedding:
    """mapping[i - 1] is the host vertex carrying pattern vertex i."""

    mapping: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.mapping)

    def image(self) -> tuple[int, ...]:
        return self.mapping


@dataclass(frozen=True)
class SparsePair:
    """Vertex sets lower < upper with cross density at most c."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    c: Fraction
    density: Fraction


@dataclass(frozen=True)
class SlotSystem:
    """Nonempty pairwise-disjoint vertex sets with max(V_i) < min(V_{i+1})."""

    slots: tuple[tuple[int, ...], ...]

    def __init__(self, slots: Iterable[Iterable[int]], host_n: int | None = None):
        norm = tuple(tuple(sorted(s)) for s in slots)
        prev_max = 0
        for idx, s in enumerate(norm, start=1):
            if not s:
                raise DomainError(f"slot {idx} is empty")
            if len(set(s)) != len(s):
                raise DomainError(f"slot {idx} has duplicate vertices")
            if host_n is not None and (s[0] < 1 or s[-1] > host_n):
                raise DomainError(f"slot {idx} leaves the host vertex range")
            if s[0] <= prev_max:
                raise DomainError(f"slot {idx} does not lie strictly above slot {idx - 1}")
            prev_max = s[-1]
        object.__setattr__(self, "slots", norm)

    def __len__(self) -> int:
        return len(self.slots)

    def min_size(self) -> int:
        return min(len(s) for s in self.slots)

    def masks(self) -> list[int]:
        return [0] + [mask_of(s) for s in self.slots]


def _pre_lists(pattern: OrderedGraph) -> list[list[int]]:
    pre: list[list[int]] = [[] for _ in range(pattern.n + 1)]
    for i, j in pattern.edges:
        pre[j].append(i)
    for row in pre:
        row.sort()
    return pre


def _coerce_slots(slots, host_n: int) -> SlotSystem | None:
    if slots is None:
        return None
    if isinstance(slots, SlotSystem):
        return slots
    return SlotSystem(slots, host_n)


def verify_embedding(
    host: OrderedGraph,
    pattern: OrderedGraph,
    emb: Embedding | Sequence[int],
    slots=None,
) -> tuple[bool, str | None]:
    """Check an embedding claim; returns (ok, reason for the first violation)."""
    mapping = tuple(emb.mapping if isinstance(emb, Embedding) else emb)
    if len(mapping) != pattern.n:
        return False, f"map length {len(mapping)} != pattern order {pattern.n}"
    for v in mapping:
        if not 1 <= v <= host.n:
            return False, f"host vertex {v} out of range 1..{host.n}"
    for t in range(1, len(mapping)):
        if mapping[t - 1] >= mapping[t]:
            return False, f"map not increasing at pattern vertices {t}, {t + 1}"
    slot_sys = _coerce_slots(slots, host.n)
    if slot_sys is not None:
        if len(slot_sys) != pattern.n:
            return False, f"slot count {len(slot_sys)} != pattern order {pattern.n}"
        for t, v in enumerate(mapping, start=1):
            if v not in slot_sys.slots[t - 1]:
                return False, f"pattern vertex {t} mapped outside its slot"
    for i, j in sorted(pattern.edges):
        if not host.has_edge(mapping[i - 1], mapping[j - 1]):
            return (
                False,
                f"edge ({i}, {j}) not preserved at hosts ({mapping[i - 1]}, {mapping[j - 1]})",
            )
    return True, None


def find_ordered_embedding(
    host: OrderedGraph, pattern: OrderedGraph, slots=None
) -> Embedding | None:
    """Lexicographically least order-preserving embedding, or None."""
    slot_sys = _coerce_slots(slots, host.n)
    masks = None
    if slot_sys is not None:
        if len(slot_sys) != pattern.n:
            raise DomainError(f"slot count {len(slot_sys)} != pattern order {pattern.n}")
        masks = slot_sys.masks()
    res = kernels.find_embedding(host.n, list(host.adj), pattern.n, _pre_lists(pattern), masks)
    return None if res is None else Embedding(tuple(res))


def count_embeddings(
    host: OrderedGraph, pattern: OrderedGraph, cap: int = DEFAULT_COUNT_CAP
) -> int:
    """Number of distinct order-preserving embeddings, saturating at cap."""
    if cap < 1:
        raise ParameterError("cap must be positive")
    return kernels.count_embeddings(
        host.n, list(host.adj), pattern.n, _pre_lists(pattern), None, cap
    )


def greedy_embed_or_sparse_pair(
    host: OrderedGraph,
    pattern: OrderedGraph,
    slots,
    c: Fraction,
    declared_min: int | None = None,
) -> Embedding | SparsePair:
    """Embed the pattern with one vertex per slot, or extract a sparse pair.

    Pattern vertex t must land in slot t.  A host vertex w is accepted for
    step t if every later pattern neighbor i of t keeps at least a c-fraction
    of its candidate set after intersecting with the neighborhood of w; the
    first acceptable w in ascending host order wins.  When no w is
    acceptable, pigeonholing over the later neighbors (smallest witnessing
    neighbor first) yields sets (lower, upper) with cross density below c and
    |lower|, |upper| >= (c^D / D) * N, where D is the pattern's maximum
    degree and N the declared minimum slot size.
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise ParameterError(f"c={c} must lie strictly between 0 and 1")
    slot_sys = _coerce_slots(slots, host.n)
    if slot_sys is None:
        raise DomainError("greedy embedding requires a slot system")
    n = pattern.n
    if len(slot_sys) != n:
        raise DomainError(f"slot count {len(slot_sys)} != pattern order {n}")
    min_size = slot_sys.min_size() if n else 0
    if declared_min is None:
        declared_min = min_size
    if n and not 1 <= declared_min <= min_size:
        raise ParameterError(
            f"declared minimum slot size {declared_min} must lie in 1..{min_size}"
        )
    if n == 0:
        return Embedding(())

    adj = host.adj
    later: list[list[int]] = [[] for _ in range(n + 1)]
    for i, j in pattern.edges:
        later[i].append(j)
    for row in later:
        row.sort()
    delta = pattern.max_degree()

    cand = slot_sys.masks()
    slot_sizes = [0] + [len(s) for s in slot_sys.slots]
    placed_nbrs = [0] * (n + 1)
    mapping = [0] * (n + 1)
    cn, cd = c.numerator, c.denominator

    for t in range(1, n + 1):
        u_t = cand[t]
        if not u_t:
            raise InternalContractError(f"candidate set for pattern vertex {t} emptied")
        chosen = 0
        for w in bits_of(u_t):
            ok = True
            for i in later[t]:
                size_i = cand[i].bit_count()
                kept = (adj[w] & cand[i]).bit_count()
                if kept * cd < cn * size_i:
                    ok = False
                    break
            if ok:
                chosen = w
                break
        if chosen:
            mapping[t] = chosen
            for i in later[t]:
                cand[i] &= adj[chosen]
                placed_nbrs[i] += 1
                # shrink invariant: |U_i| >= c^(placed neighbors) * |V_i|
                assert cand[i].bit_count() * cd ** placed_nbrs[i] >= cn ** placed_nbrs[i] * slot_sizes[i]
            continue
        # dichotomy: every candidate w fails for some later neighbor
        u_size = u_t.bit_count()
        for i in later[t]:
            size_i = cand[i].bit_count()
            low = [
                w
                for w in bits_of(u_t)
                if (adj[w] & cand[i]).bit_count() * cd < cn * size_i
            ]
            if len(low) * delta >= u_size:
                lower = tuple(low)
                upper = tuple(bits_of(cand[i]))
                dens = density_between(host, lower, upper)
                if dens >= c:
                    raise InternalContractError(
                        f"extracted pair has density {dens}, expected below {c}"
                    )
                return SparsePair(lower, upper, c, dens)
        raise InternalContractError("pigeonhole failed to produce a sparse pair")

    emb = Embedding(tuple(mapping[1:]))
    ok, reason = verify_embedding(host, pattern, emb, slot_sys)
    if not ok:
        raise InternalContractError(f"greedy embedding failed verification: {reason}")
    return emb


def skeleton_embed_or_sparse_pair(
    host: OrderedGraph,
    skel: Skeleton,
    pattern: OrderedGraph,
    c: Fraction,
    *,
    enforce_size_precondition: bool = True,
) -> Embedding | SparsePair:
    """Embed a pattern through a skeleton, or extract a sparse pair.

    The skeleton's spine receives the a pattern vertices of largest degree
    (ties to the smaller index); the remaining pattern is placed by the
    greedy dichotomy into equal contiguous partitions of the blocks, chunk
    size floor(|V_j| / count) with leftovers at the top of each block
    discarded.  Requires block size b >= 2 m^2 c^(-2m/a) unless
    enforce_size_precondition is off (the dichotomy still runs; only the
    guaranteed pair size is lost).
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise ParameterError(f"c={c} must lie strictly between 0 and 1")
    report = verify_skeleton(host, skel)
    if not report:
        raise DomainError(f"skeleton fails condition {report.condition} at {report.witness}")
    m = pattern.m
    n = pattern.n
    if m < 1:
        raise ParameterError("pattern must have at least one edge")
    if any(not pattern.adj[v] for v in range(1, n + 1)):
        raise ParameterError("pattern must have no isolated vertices")
    a = skel.a
    if enforce_size_precondition:
        b_needed = 2.0 * m * m * float(c) ** (-2.0 * m / a)
        if skel.b < b_needed:
            raise ParameterError(
                f"block size b={skel.b} below the required 2 m^2 c^(-2m/a) = {b_needed:.6g}"
            )

    if a >= n:
        # the whole pattern fits on the spine clique
        mapping = tuple(skel.spine[:n])
        emb = Embedding(mapping)
        ok, reason = verify_embedding(host, pattern, emb)
        if not ok:
            raise InternalContractError(f"spine embedding failed verification: {reason}")
        return emb

    degrees = [(pattern.adj[v].bit_count(), v) for v in range(1, n + 1)]
    by_size = sorted(degrees, key=lambda dv: (-dv[0], dv[1]))
    spine_pattern = sorted(v for _, v in by_size[:a])
    rest = [v for v in range(1, n + 1) if v not in set(spine_pattern)]
    rest_rank = {v: idx + 1 for idx, v in enumerate(rest)}

    sub_edges = [
        (rest_rank[i], rest_rank[j])
        for (i, j) in pattern.edges
        if i in rest_rank and j in rest_rank
    ]
    sub_pattern = OrderedGraph(len(rest), sub_edges)

    # segment j holds the pattern vertices strictly between spine indices
    bounds = [0] + spine_pattern + [n + 1]
    slot_list: list[tuple[int, ...]] = []
    for j in range(a + 1):
        count = bounds[j + 1] - bounds[j] - 1
        if count == 0:
            continue
        block = skel.blocks[j]
        chunk = len(block) // count
        if chunk == 0:
            raise ParameterError(
                f"block {j} of size {len(block)} cannot be split into {count} nonempty chunks"
            )
        for r in range(count):
            slot_list.append(tuple(block[r * chunk : (r + 1) * chunk]))
    assert len(slot_list) == len(rest)
    slot_sys = SlotSystem(slot_list, host.n)

    res = greedy_embed_or_sparse_pair(host, sub_pattern, slot_sys, c)
    if isinstance(res, SparsePair):
        return res

    mapping = [0] * (n + 1)
    for idx, v in enumerate(spine_pattern):
        mapping[v] = skel.spine[idx]
    for v in rest:
        mapping[v] = res.mapping[rest_rank[v] - 1]
    emb = Embedding(tuple(mapping[1:]))
    ok, reason = verify_embedding(host, pattern, emb)
    if not ok:
        raise InternalContractError(f"skeleton embedding failed verification: {reason}")
    return emb
