"""Spine-and-blocks skeleton structures inside graphs and colorings.

An (a, b)-skeleton in an ordered graph is a spine clique v_1 < ... < v_a
interleaved with vertex blocks V_0 < {v_1} < V_1 < ... < {v_a} < V_a, each
block of size at least b, with every spine vertex adjacent to every block
vertex.  Skeletons are found by enumerating increasing clique tuples and
pigeonholing on their odd positions, and, inside dense colorings, by sampling
windows and growing monochromatic cliques in the sparser class.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from . import kernels
from .core import Color, ColoredCompleteGraph, OrderedGraph, bits_of, color_class, density_within, mask_of
from .errors import DomainError, InternalContractError, ParameterError, TupleCapError

DEFAULT_TUPLE_CAP = 10_000_000
DEFAULT_SAMPLES = 64


@dataclass(frozen=True)
class Skeleton:
    """Spine vertices plus a + 1 blocks; b is the claimed minimum block size."""

    spine: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    a: int
    b: int

    def __init__(self, spine: Iterable[int], blocks: Iterable[Iterable[int]], a: int, b: int):
        spine_t = tuple(spine)
        blocks_t = tuple(tuple(blk) for blk in blocks)
        if a < 1 or b < 1:
            raise DomainError("skeleton parameters a and b must be positive")
        if len(spine_t) != a:
            raise DomainError(f"spine has {len(spine_t)} vertices, expected a = {a}")
        if len(blocks_t) != a + 1:
            raise DomainError(f"skeleton needs a + 1 = {a + 1} blocks, got {len(blocks_t)}")
        object.__setattr__(self, "spine", spine_t)
        object.__setattr__(self, "blocks", blocks_t)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def all_vertices(self) -> tuple[int, ...]:
        out = []
        for j, blk in enumerate(self.blocks):
            out.extend(blk)
            if j < self.a:
                out.append(self.spine[j])
        return tuple(out)


@dataclass(frozen=True)
class SkeletonReport:
    ok: bool
    condition: str | None = None  # "a" interleaving, "b" block size, "c" adjacency
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_skeleton(host: OrderedGraph, s: Skeleton) -> SkeletonReport:
    """Check the three skeleton conditions; names the first violated one."""
    seen: set[int] = set()
    for v in s.spine:
        if not 1 <= v <= host.n:
            return SkeletonReport(False, "a", (v,))
        seen.add(v)
    for blk in s.blocks:
        for v in blk:
            if not 1 <= v <= host.n or v in seen:
                return SkeletonReport(False, "a", (v,))
            seen.add(v)
        if tuple(sorted(blk)) != blk:
            return SkeletonReport(False, "a", blk)
    # interleaving: V_0 < v_1 < V_1 < ... < v_a < V_a
    for j in range(s.a):
        left = s.blocks[j]
        if left and left[-1] >= s.spine[j]:
            return SkeletonReport(False, "a", (left[-1], s.spine[j]))
        right = s.blocks[j + 1]
        if right and s.spine[j] >= right[0]:
            return SkeletonReport(False, "a", (s.spine[j], right[0]))
        if j + 1 < s.a and s.spine[j] >= s.spine[j + 1]:
            return SkeletonReport(False, "a", (s.spine[j], s.spine[j + 1]))
    for j, blk in enumerate(s.blocks):
        if len(blk) < s.b:
            return SkeletonReport(False, "b", (j, len(blk)))
    for x, y in combinations(s.spine, 2):
        if not host.has_edge(x, y):
            return SkeletonReport(False, "c", (x, y))
    for v in s.spine:
        for blk in s.blocks:
            for w in blk:
                if not host.has_edge(v, w):
                    return SkeletonReport(False, "c", (v, w))
    return SkeletonReport(True)


@dataclass(frozen=True)
class CliqueTupleIndex:
    """Increasing clique (4a+1)-tuples bucketed by their odd-position vertices.

    buckets maps each odd-position key to (tuple count, even-position vertex
    masks).  truncated means enumeration stopped at the cap with tuples left.
    """

    k: int
    total: int
    truncated: bool
    buckets: dict

    @property
    def bucket_count(self) -> int:
        return len(self.buckets)

    def max_bucket(self) -> tuple[tuple[int, ...], int] | None:
        """Most populated bucket (ties to the lexicographically least key)."""
        if not self.buckets:
            return None
        key = min(self.buckets, key=lambda kk: (-self.buckets[kk][0], kk))
        return key, self.buckets[key][0]


def build_clique_tuple_index(
    host: OrderedGraph, k: int, tuple_cap: int = DEFAULT_TUPLE_CAP
) -> CliqueTupleIndex:
    """Enumerate increasing clique k-tuples (lexicographic order, capped)."""
    if k < 1:
        raise ParameterError(f"tuple length {k} must be positive")
    if tuple_cap < 1:
        raise ParameterError("tuple cap must be positive")
    total, truncated, buckets = kernels.clique_tuple_buckets(
        host.n, list(host.adj), k, tuple_cap
    )
    return CliqueTupleIndex(k, total, truncated, buckets)


def _index_from_tuples(tuples: Iterable[tuple[int, ...]], k: int) -> CliqueTupleIndex:
    half = (k + 1) // 2
    buckets: dict = {}
    total = 0
    for tup in tuples:
        key = tuple(tup[1::2])
        ent = buckets.get(key)
        if ent is None:
            ent = [0, [0] * half]
            buckets[key] = ent
        ent[0] += 1
        for idx in range(half):
            ent[1][idx] |= 1 << tup[2 * idx]
        total += 1
    return CliqueTupleIndex(k, total, False, buckets)


def _skeleton_from_index(
    index: CliqueTupleIndex, a: int, b_required: Fraction | int
) -> tuple[Skeleton | None, int]:
    """Pick a bucket and assemble a skeleton with blocks of size >= b_required.

    Buckets are scanned by population (descending; ties to the least key), so
    the pigeonhole bucket is tried first.  Within a bucket the a + 1 largest
    even-position sets become the blocks.  Returns (skeleton, selected bucket
    population); (None, 0) when no bucket qualifies.
    """
    order = sorted(index.buckets, key=lambda kk: (-index.buckets[kk][0], kk))
    for key in order:
        count, masks = index.buckets[key]
        sizes = [(m.bit_count(), pos) for pos, m in enumerate(masks)]
        # choose a + 1 positions maximizing the minimum set size; ties keep
        # the leftmost positions for determinism
        chosen = sorted(sorted(sizes, key=lambda sp: (-sp[0], sp[1]))[: a + 1], key=lambda sp: sp[1])
        if len(chosen) < a + 1:
            continue
        b_achieved = min(sz for sz, _ in chosen)
        if b_achieved < 1 or b_achieved < b_required:
            continue
        positions = [pos for _, pos in chosen]
        blocks = tuple(tuple(bits_of(masks[pos])) for pos in positions)
        # spine vertex after even position 2*pos is the odd entry at index pos
        spine = tuple(key[positions[j]] for j in range(a))
        return Skeleton(spine, blocks, a, b_achieved), count
    return None, 0


def find_skeleton_from_cliques(
    host: OrderedGraph,
    n: int,
    a: int,
    d: Fraction | int = 1,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
) -> Skeleton | None:
    """Find an (a, b)-skeleton with b >= d * N / n^5 via clique-tuple pigeonholing.

    Enumerates increasing (4a+1)-clique tuples, buckets them on odd positions,
    and assembles spine and blocks from the best bucket.  Returns None when no
    bucket yields large enough blocks; raises TupleCapError when the
    enumeration cap was hit and no skeleton could be produced from the partial
    index (a skeleton found from a truncated index is still valid as checked).
    """
    big_n = host.n
    if a < 1:
        raise ParameterError("a must be positive")
    if not big_n >= n >= 4 * a + 1:
        raise ParameterError(f"need N >= n >= 4a + 1, got N={big_n}, n={n}, a={a}")
    d = Fraction(d)
    if d <= 0 or d > 1:
        raise ParameterError(f"density parameter d={d} must lie in (0, 1]")
    index = build_clique_tuple_index(host, 4 * a + 1, tuple_cap)
    b_required = d * big_n / Fraction(n) ** 5
    skel, _ = _skeleton_from_index(index, a, b_required)
    if skel is None:
        if index.truncated:
            raise TupleCapError(
                f"clique tuple cap {tuple_cap} exceeded before any (a={a}) skeleton "
                f"with b >= {float(b_required):.6g} was found"
            )
        return None
    report = verify_skeleton(host, skel)
    if not report:
        raise InternalContractError(f"assembled skeleton fails condition {report.condition}")
    return skel


# ---------------------------------------------------------------------------
# sparse-graph clique-or-independent-set finder


def _es_chains(g: OrderedGraph, theta: Fraction) -> tuple[list[int], list[int]]:
    """Two-chain greedy: grow an independent set while the minimum degree stays
    below theta * (|S| - 1), otherwise grow a clique through a maximum-degree
    vertex.  Returns (clique chain, independent chain)."""
    alive = mask_of(range(1, g.n + 1))
    clique: list[int] = []
    indep: list[int] = []
    while alive:
        size = alive.bit_count()
        if size == 1:
            v = alive.bit_length() - 1
            indep.append(v)
            break
        degs = [( (g.adj[v] & alive).bit_count(), v) for v in bits_of(alive)]
        dmin, vmin = min(degs)
        if Fraction(dmin) <= theta * (size - 1):
            indep.append(vmin)
            alive &= ~(1 << vmin)
            alive &= ~g.adj[vmin]
        else:
            dmax, vmax = max(degs, key=lambda dv: (dv[0], -dv[1]))
            clique.append(vmax)
            alive &= g.adj[vmax]
    return clique, indep


def es_bound(n: int, eps: float) -> float:
    """Guaranteed witness size in an eps-sparse n-vertex graph."""
    return math.log(n) / (100.0 * eps * math.log(1.0 / eps))


def es_clique_or_independent(
    g: OrderedGraph, eps: Fraction
) -> tuple[str, tuple[int, ...]]:
    """In a graph of density at most eps, find a clique or an independent set of
    size at least log n / (100 eps log(1/eps)).

    Returns ("clique", vertices) or ("independent", vertices); the witness is
    re-verified pairwise and against the size bound before returning.
    """
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ParameterError(f"eps={eps} must lie in (0, 1/2)")
    if g.n < 1 / eps:
        raise ParameterError(f"need n >= 1/eps, got n={g.n}, 1/eps={float(1 / eps):.4g}")
    dens = density_within(g, range(1, g.n + 1))
    if dens > eps:
        raise ParameterError(f"graph density {dens} exceeds eps={eps}")
    clique, indep = _es_chains(g, eps)
    kind, members = ("independent", indep) if len(indep) >= len(clique) else ("clique", clique)
    members_t = tuple(sorted(members))
    _check_homogeneous(g, kind, members_t)
    bound = es_bound(g.n, float(eps))
    if len(members_t) < bound - 1e-9:
        raise InternalContractError(
            f"witness of size {len(members_t)} misses the bound {bound:.4f}"
        )
    return kind, members_t


def _check_homogeneous(g: OrderedGraph, kind: str, members: tuple[int, ...]) -> None:
    want = kind == "clique"
    for x, y in combinations(members, 2):
        if g.has_edge(x, y) != want:
            raise InternalContractError(f"{kind} witness violated at pair ({x}, {y})")


# ---------------------------------------------------------------------------
# skeleton search inside a dense coloring


@dataclass(frozen=True)
class DenseSkeletonResult:
    color: Color | None
    skeleton: Skeleton | None
    target_b: float
    met_target: bool
    samples_used: int
    cliques_seen: dict

    @property
    def found(self) -> bool:
        return self.skeleton is not None


def expand_clique_tuples(
    clique: tuple[int, ...], k: int, budget: int
) -> list[tuple[int, ...]]:
    """Increasing k-subtuples of a clique, lexicographically, up to budget."""
    if len(clique) < k or budget <= 0:
        return []
    out = []
    for tup in combinations(sorted(clique), k):
        out.append(tup)
        if len(out) >= budget:
            break
    return out


def sample_color_cliques(
    coloring: ColoredCompleteGraph,
    need: dict[Color, int],
    window: int,
    samples: int,
    seed: int,
    density_gate: Fraction | None = None,
    gate_color: Color | None = None,
) -> dict[Color, list[tuple[int, ...]]]:
    """Sample windows and harvest monochromatic cliques of the needed sizes.

    Runs the two-chain greedy on the sparser color class of each sampled
    window; its clique chain is a clique of that color and its independent
    chain is a clique of the other color.  When density_gate is given, windows
    whose gate_color density exceeds the gate are skipped.
    """
    rng = random.Random(seed)
    universe = list(range(1, coloring.N + 1))
    window = min(window, coloring.N)
    found: dict[Color, list[tuple[int, ...]]] = {Color.RED: [], Color.BLUE: []}
    seen: dict[Color, set] = {Color.RED: set(), Color.BLUE: set()}
    for _ in range(samples):
        members = sorted(rng.sample(universe, window)) if window < coloring.N else universe
        sub, back = coloring.induced(members)
        red_graph = color_class(sub, Color.RED)
        red_dens = density_within(red_graph, range(1, sub.N + 1)) if sub.N >= 2 else Fraction(0)
        if density_gate is not None and gate_color is not None:
            gate_dens = red_dens if gate_color is Color.RED else 1 - red_dens
            if sub.N >= 2 and gate_dens > density_gate:
                continue
        sparse = Color.RED if red_dens <= Fraction(1, 2) else Color.BLUE
        graph = red_graph if sparse is Color.RED else color_class(sub, Color.BLUE)
        theta = density_within(graph, range(1, sub.N + 1))
        theta = max(Fraction(1, 100), min(theta, Fraction(49, 100)))
        clique_chain, indep_chain = _es_chains(graph, theta)
        for color, chain in ((sparse, clique_chain), (sparse.other, indep_chain)):
            k_needed = need.get(color)
            if k_needed is None or len(chain) < k_needed:
                continue
            host_clique = tuple(sorted(back[v] for v in chain))
            if host_clique not in seen[color]:
                seen[color].add(host_clique)
                found[color].append(host_clique)
    return found


def find_skeleton_in_dense(
    coloring: ColoredCompleteGraph,
    sparse_color: Color,
    a: int,
    c: Fraction,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
    window: int | None = None,
) -> DenseSkeletonResult:
    """Find a skeleton in one color class of a coloring whose sparse_color
    class has density at most c.

    Samples windows (the window size follows the underlying lemma, capped at
    N), grows monochromatic cliques per sample, takes the majority clique
    color (ties to Red), and feeds the cliques' increasing (4a+1)-tuples to
    the pigeonhole skeleton assembly.  The result reports the lemma's block
    size target and whether it was met; a result with no skeleton is a search
    failure, distinct from a parameter error.
    """
    c = Fraction(c)
    if c <= 0:
        raise ParameterError(f"c={c} must be positive")
    if a < 1:
        raise ParameterError("a must be positive")
    if Fraction(a) < 10 / c:
        raise ParameterError(f"need a >= 10/c = {float(10 / c):.4g}, got a={a}")
    big_n = coloring.N
    dens = class_density_of(coloring, sparse_color)
    if dens > c:
        raise ParameterError(f"{sparse_color} class density {dens} exceeds c={c}")

    k = 4 * a + 1
    if window is None:
        if c >= 1:
            window = big_n
        else:
            log_window = 1000.0 * a * float(c) * math.log(1.0 / float(c))
            if log_window >= math.log(max(big_n, 2)):
                window = big_n
            else:
                window = int(math.ceil(math.exp(max(log_window, 0.0))))
    window = max(min(window, big_n), min(big_n, k))

    gate = min(2 * c, Fraction(1, 1))
    harvest = sample_color_cliques(
        coloring,
        {Color.RED: k, Color.BLUE: k},
        window,
        samples,
        seed,
        density_gate=gate,
        gate_color=sparse_color,
    )
    n_red, n_blue = len(harvest[Color.RED]), len(harvest[Color.BLUE])
    if n_red == 0 and n_blue == 0:
        return DenseSkeletonResult(None, None, _dense_target_b(big_n, a, c), False, samples,
                                   {Color.RED: n_red, Color.BLUE: n_blue})
    majority = Color.RED if n_red >= n_blue else Color.BLUE

    tuples: list[tuple[int, ...]] = []
    budget = tuple_cap
    for clique in harvest[majority]:
        new = expand_clique_tuples(clique, k, budget)
        tuples.extend(new)
        budget -= len(new)
        if budget <= 0:
            break
    index = _index_from_tuples(dict.fromkeys(tuples), k)
    skel, _ = _skeleton_from_index(index, a, 1)
    target = _dense_target_b(big_n, a, c)
    if skel is None:
        return DenseSkeletonResult(None, None, target, False, samples,
                                   {Color.RED: n_red, Color.BLUE: n_blue})
    host = color_class(coloring, majority)
    report = verify_skeleton(host, skel)
    if not report:
        raise InternalContractError(f"dense skeleton fails condition {report.condition}")
    met = skel.b >= target
    return DenseSkeletonResult(majority, skel, target, met, samples,
                               {Color.RED: n_red, Color.BLUE: n_blue})


def _dense_target_b(big_n: int, a: int, c: Fraction) -> float:
    log_b = -6000.0 * a * float(c) * math.log(1.0 / float(c)) if c < 1 else 0.0
    try:
        return math.exp(log_b) * big_n
    except OverflowError:
        return float("inf")


def class_density_of(coloring: ColoredCompleteGraph, color: Color) -> Fraction:
    g = color_class(coloring, color)
    if coloring.N < 2:
        return Fraction(0)
    return density_within(g, range(1, coloring.N + 1))
