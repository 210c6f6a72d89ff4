"""Sparse-set recursion, the monochromatic-copy pipeline, and an exact oracle.

The central objects are certificates: a MonoCopy pins a monochromatic ordered
copy of one pattern, a SparseSet pins a vertex set whose density in one color
is below a stated bound, and Exhausted carries a trace of the phases that
failed.  Every certificate returned by this module has been re-verified
against the coloring before being handed to the caller; Exhausted is never a
proof of absence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count

from . import kernels
from .core import (
    Color,
    ColoredCompleteGraph,
    OrderedGraph,
    class_density,
    color_class,
    mask_of,
    remove_isolated,
    vertex_tuple,
)
from .embed import (
    Embedding,
    find_ordered_embedding,
    skeleton_embed_or_sparse_pair,
    verify_embedding,
)
from .errors import InternalContractError, ParameterError
from .skeleton import (
    DEFAULT_SAMPLES,
    DEFAULT_TUPLE_CAP,
    _index_from_tuples,
    _skeleton_from_index,
    expand_clique_tuples,
    find_skeleton_in_dense,
    sample_color_cliques,
)

DEFAULT_EXHAUSTIVE_THRESHOLD = 9
TRIM_SCAN_LIMIT = 20


def _loglog(m: int) -> float:
    """log log m, clamped below so tiny edge counts stay usable."""
    if m >= 3 and math.log(m) > 1.0:
        return max(0.7, math.log(math.log(m)))
    return 0.7


def _ceil_log2(x: Fraction) -> int:
    """Least h >= 0 with 2^h >= x, computed exactly."""
    h = 0
    while Fraction(2) ** h < x:
        h += 1
    return h


@dataclass(frozen=True)
class RecursionParams:
    """Knobs for the binary-tree sparse-set recursion.

    c is the target density, k1/k2 the per-color skeleton sizes, alpha the
    per-level shrink factor, h1/h2 the halving budgets, and window the size
    of the sampled sub-colorings used to hunt for monochromatic cliques.
    """

    c: Fraction
    k1: int
    k2: int
    alpha: float
    h1: int
    h2: int
    window: int

    def __post_init__(self):
        if not 0 < self.c < Fraction(1, 8):
            raise ParameterError(f"c={self.c} must lie strictly in (0, 1/8)")
        if not self.k1 >= self.k2 >= 1:
            raise ParameterError(f"need k1 >= k2 >= 1, got k1={self.k1}, k2={self.k2}")
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"alpha={self.alpha} must lie strictly in (0, 1)")
        if self.h1 < 0 or self.h2 < 0:
            raise ParameterError("halving budgets must be nonnegative")
        if self.window < 1:
            raise ParameterError("window must be positive")

    @classmethod
    def from_patterns(
        cls,
        pat1: OrderedGraph,
        pat2: OrderedGraph,
        c,
        big_n: int,
        *,
        alpha: float | None = None,
        window: int | None = None,
    ) -> "RecursionParams":
        c = Fraction(c)
        m1, m2 = pat1.m, pat2.m
        if m1 < 1 or m2 < 1:
            raise ParameterError("patterns must each have at least one edge")
        ll1 = _loglog(m1)
        k2 = max(1, int(math.sqrt(m2 * ll1)))
        k1 = max(k2, m1 * k2 // m2)
        h = _ceil_log2(2 / c)
        if window is None:
            exponent = (k1 + k2) * math.log(4.0)
            if exponent >= math.log(max(big_n, 2)):
                window = big_n
            else:
                window = min(big_n, 4 ** (k1 + k2))
        window = max(1, min(window, big_n))
        if alpha is None:
            base = float(c) / 8.0
            alpha = base ** (2.0 * math.sqrt(m2 / ll1)) / (8.0 * window**5 * m1**2)
            alpha = max(alpha, 1e-300)
        return cls(c, k1, k2, alpha, h, h, window)


@dataclass(frozen=True)
class PipelineParams:
    """Knobs for the monochromatic-copy pipeline.

    c1 gates the sparse-set phase, a sizes the second skeleton, c2 gates the
    skeleton embedding; alpha/window/samples/tuple_cap are optional
    overrides threaded through to the underlying searches.
    """

    c1: Fraction
    a: int
    c2: Fraction
    alpha: float | None = None
    window: int | None = None
    samples: int = DEFAULT_SAMPLES
    tuple_cap: int = DEFAULT_TUPLE_CAP

    def __post_init__(self):
        if not 0 < self.c1 < 1:
            raise ParameterError(f"c1={self.c1} must lie strictly in (0, 1)")
        if not 0 < self.c2 < 1:
            raise ParameterError(f"c2={self.c2} must lie strictly in (0, 1)")
        if self.a < 1:
            raise ParameterError("a must be positive")
        if self.samples < 1:
            raise ParameterError("samples must be positive")
        if self.tuple_cap < 1:
            raise ParameterError("tuple cap must be positive")

    @classmethod
    def from_patterns(
        cls,
        pat1: OrderedGraph,
        pat2: OrderedGraph,
        *,
        alpha: float | None = None,
        window: int | None = None,
        samples: int = DEFAULT_SAMPLES,
        tuple_cap: int = DEFAULT_TUPLE_CAP,
    ) -> "PipelineParams":
        m1, m2 = pat1.m, pat2.m
        if m1 < 1 or m2 < 1:
            raise ParameterError("patterns must each have at least one edge")
        lg2 = math.log(max(m1, 2)) ** 2
        c1 = min(Fraction.from_float(m2 / (m1 * lg2)), Fraction(1, 9))
        a = max(1, int(10.0 * m1 * lg2 / math.sqrt(m2)))
        c2 = Fraction(1, 6 * m1)
        return cls(c1, a, c2, alpha, window, samples, tuple_cap)


@dataclass(frozen=True)
class MonoCopy:
    """mapping[i - 1] hosts vertex i of the pattern assigned to color."""

    color: Color
    mapping: tuple[int, ...]


@dataclass(frozen=True)
class SparseSet:
    """A vertex set together with its certified density bound in one color."""

    color: Color
    members: tuple[int, ...]
    density: Fraction
    bound: Fraction
    size_target: int
    met_size_target: bool
    alpha: float
    h1: int
    h2: int


@dataclass(frozen=True)
class Exhausted:
    trace: tuple[str, ...]


def verify_mono_copy(
    coloring: ColoredCompleteGraph,
    pat1: OrderedGraph,
    pat2: OrderedGraph,
    mc: MonoCopy,
) -> tuple[bool, str | None]:
    pattern = pat1 if mc.color is Color.RED else pat2
    return verify_embedding(color_class(coloring, mc.color), pattern, mc.mapping)


def verify_sparse_set(
    coloring: ColoredCompleteGraph, ss: SparseSet
) -> tuple[bool, str | None]:
    dens = class_density(coloring, ss.color, ss.members)
    if dens != ss.density:
        return False, f"recomputed density {dens} differs from claimed {ss.density}"
    if dens > ss.bound:
        return False, f"density {dens} exceeds the bound {ss.bound}"
    return True, None


def _gate_patterns(pat1: OrderedGraph, pat2: OrderedGraph) -> None:
    for name, pat in (("first", pat1), ("second", pat2)):
        if pat.m < 1:
            raise ParameterError(f"{name} pattern must have at least one edge")
        if any(not pat.adj[v] for v in range(1, pat.n + 1)):
            raise ParameterError(
                f"{name} pattern has isolated vertices; strip them with remove_isolated"
            )


def _sparser_color_on(coloring: ColoredCompleteGraph, members: tuple[int, ...]) -> Color:
    dr = class_density(coloring, Color.RED, members)
    db = class_density(coloring, Color.BLUE, members)
    return Color.RED if dr <= db else Color.BLUE


def _rows_density(rows, members) -> Fraction:
    k = len(members)
    if k < 2:
        return Fraction(0)
    m = mask_of(members)
    edges = sum((rows[v] & m).bit_count() for v in members) // 2
    return Fraction(edges, k * (k - 1) // 2)


def _size_target(alpha: float, levels: int, size: int) -> int:
    return max(1, math.ceil(alpha**levels * size))


def _trim_to_density(rows, members: tuple[int, ...], target: int, bound: Fraction):
    """Shrink members to the target size keeping density within bound.

    Greedily removes the vertex of highest degree inside the current set
    (ties to the larger index), which never increases the density; the bound
    is re-checked and, should the greedy ever miss it, small sets fall back
    to an exhaustive scan over subsets.
    """
    cur = list(members)
    target = max(1, min(target, len(cur)))
    while len(cur) > target:
        m = mask_of(cur)
        worst = max(cur, key=lambda v: ((rows[v] & m).bit_count(), v))
        cur.remove(worst)
    if _rows_density(rows, cur) <= bound:
        return tuple(cur)
    if len(members) <= TRIM_SCAN_LIMIT:
        for sub in combinations(members, target):
            if _rows_density(rows, sub) <= bound:
                return tuple(sub)
    return None


class _BtState:
    def __init__(self, coloring, pat1, pat2, params, samples, tuple_cap, seed):
        self.coloring = coloring
        self.pat1 = pat1
        self.pat2 = pat2
        self.params = params
        self.samples = samples
        self.tuple_cap = tuple_cap
        self.seeds = count(seed)


def binary_tree_sparse(
    coloring: ColoredCompleteGraph,
    members,
    pat1: OrderedGraph,
    pat2: OrderedGraph,
    params: RecursionParams,
    *,
    samples: int = DEFAULT_SAMPLES,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
    seed: int = 0,
):
    """Recursively extract a sparse set inside members, or stumble on a copy.

    At each node: find a monochromatic clique skeleton in a sampled window,
    run the skeleton embedding for that color's pattern (a success
    short-circuits the whole recursion as a MonoCopy), otherwise split the
    returned sparse pair into low-degree halves and recurse with a reduced
    halving budget, finally trimming and uniting the two sparse sets.
    Returns MonoCopy, SparseSet, or Exhausted.
    """
    X = vertex_tuple(members, coloring.N, "X")
    if not X:
        raise ParameterError("X must be nonempty")
    _gate_patterns(pat1, pat2)
    state = _BtState(coloring, pat1, pat2, params, samples, tuple_cap, seed)
    res = _bt_node(state, X, params.h1, params.h2, ())
    if isinstance(res, (MonoCopy, Exhausted)):
        return res
    color, W = res
    dens = class_density(coloring, color, W)
    h_top = params.h1 if color is Color.RED else params.h2
    bound = Fraction(1, 2**h_top) + params.c / 2
    if dens > bound:
        raise InternalContractError(
            f"sparse-set density {dens} exceeds the certified bound {bound}"
        )
    target = _size_target(params.alpha, params.h1 + params.h2, len(X))
    return SparseSet(
        color, W, dens, bound, target, len(W) >= target, params.alpha, params.h1, params.h2
    )


def _bt_node(state: _BtState, X: tuple[int, ...], h1: int, h2: int, trace: tuple):
    coloring = state.coloring
    params = state.params
    if h1 == 0 and h2 == 0:
        return (_sparser_color_on(coloring, X), X)
    if h1 == 0:
        return (Color.RED, X)
    if h2 == 0:
        return (Color.BLUE, X)
    if params.alpha ** (h1 + h2) * len(X) < 1.0:
        return (_sparser_color_on(coloring, X), (min(X),))

    sub, back = coloring.induced(X)
    need1, need2 = 4 * params.k1 + 1, 4 * params.k2 + 1
    window = min(params.window, len(X))
    if window < min(need1, need2):
        return Exhausted(
            trace + (f"window {window} is below the smallest clique size {min(need1, need2)}",)
        )
    harvest = sample_color_cliques(
        sub,
        {Color.RED: need1, Color.BLUE: need2},
        window,
        state.samples,
        next(state.seeds),
    )
    n_red, n_blue = len(harvest[Color.RED]), len(harvest[Color.BLUE])
    if n_red == 0 and n_blue == 0:
        return Exhausted(trace + (f"no monochromatic cliques sampled on {len(X)} vertices",))
    order = [Color.RED, Color.BLUE] if n_red >= n_blue else [Color.BLUE, Color.RED]

    skel = None
    skel_color = None
    for col in order:
        if not harvest[col]:
            continue
        k_col = need1 if col is Color.RED else need2
        a_col = params.k1 if col is Color.RED else params.k2
        tuples: list[tuple[int, ...]] = []
        budget = state.tuple_cap
        for clique in harvest[col]:
            new = expand_clique_tuples(clique, k_col, budget)
            tuples.extend(new)
            budget -= len(new)
            if budget <= 0:
                break
        index = _index_from_tuples(dict.fromkeys(tuples), k_col)
        cand, _ = _skeleton_from_index(index, a_col, Fraction(len(X), 2 * window**5))
        if cand is not None:
            skel, skel_color = cand, col
            break
    if skel is None:
        return Exhausted(trace + ("no skeleton assembled from the sampled cliques",))

    i = skel_color
    host = color_class(sub, i)
    pattern = state.pat1 if i is Color.RED else state.pat2
    try:
        res = skeleton_embed_or_sparse_pair(
            host, skel, pattern, params.c / 8, enforce_size_precondition=False
        )
    except ParameterError as exc:
        return Exhausted(trace + (f"skeleton embedding inapplicable: {exc}",))
    if isinstance(res, Embedding):
        mc = MonoCopy(i, tuple(back[v] for v in res.mapping))
        ok, reason = verify_mono_copy(coloring, state.pat1, state.pat2, mc)
        if not ok:
            raise InternalContractError(f"short-circuit copy failed verification: {reason}")
        return mc

    A = tuple(back[v] for v in res.lower)
    B = tuple(back[v] for v in res.upper)
    c = params.c
    rows = coloring.class_rows(i)
    s_star = _size_target(params.alpha, h1 + h2, len(X))
    half_target = math.ceil(params.alpha * len(X))

    a_size = min(half_target, len(A) // 2)
    if a_size < 1:
        return Exhausted(trace + (f"lower pair half of size {len(A)} is too small to halve",))
    mask_b = mask_of(B)
    by_deg = sorted(((rows[v] & mask_b).bit_count(), v) for v in A)
    a_prime = tuple(sorted(v for _, v in by_deg[:a_size]))
    if by_deg[a_size - 1][0] * 4 * c.denominator > c.numerator * len(B):
        raise InternalContractError("low-degree half of A exceeds the c/4 degree bound")

    h1c, h2c = (h1 - 1, h2) if i is Color.RED else (h1, h2 - 1)
    r1 = _bt_node(state, a_prime, h1c, h2c, trace + (f"lower half, {len(a_prime)} vertices",))
    if isinstance(r1, (MonoCopy, Exhausted)):
        return r1
    ell1, w1_raw = r1
    if ell1 is not i:
        return (ell1, w1_raw)
    child_bound = Fraction(1, 2 ** (h1c if i is Color.RED else h2c)) + c / 2
    w1 = _trim_to_density(rows, w1_raw, min(s_star, len(w1_raw)), child_bound)
    if w1 is None:
        return Exhausted(trace + ("density trim of the lower sparse set failed",))

    b_size = min(half_target, len(B) // 2)
    if b_size < 1:
        return Exhausted(trace + (f"upper pair half of size {len(B)} is too small to halve",))
    mask_w1 = mask_of(w1)
    by_deg_b = sorted(((rows[v] & mask_w1).bit_count(), v) for v in B)
    b_prime = tuple(sorted(v for _, v in by_deg_b[:b_size]))
    if by_deg_b[b_size - 1][0] * 2 * c.denominator > c.numerator * len(w1):
        raise InternalContractError("low-degree half of B exceeds the c/2 degree bound")

    r2 = _bt_node(state, b_prime, h1c, h2c, trace + (f"upper half, {len(b_prime)} vertices",))
    if isinstance(r2, (MonoCopy, Exhausted)):
        return r2
    ell2, w2_raw = r2
    if ell2 is not i:
        return (ell2, w2_raw)
    s_use = min(len(w1), len(w2_raw), s_star)
    if s_use < len(w1):
        w1 = _trim_to_density(rows, w1, s_use, child_bound)
        if w1 is None:
            return Exhausted(trace + ("density re-trim of the lower sparse set failed",))
    w2 = _trim_to_density(rows, w2_raw, s_use, child_bound)
    if w2 is None:
        return Exhausted(trace + ("density trim of the upper sparse set failed",))

    union = tuple(sorted(w1 + w2))
    bound = Fraction(1, 2 ** (h1 if i is Color.RED else h2)) + c / 2
    if _rows_density(rows, union) > bound:
        return Exhausted(
            trace + (f"union density exceeds the bound {bound} at {len(union)} vertices",)
        )
    return (i, union)


def recursive_sparse_set(
    coloring: ColoredCompleteGraph,
    pat1: OrderedGraph,
    pat2: OrderedGraph,
    c,
    *,
    alpha: float | None = None,
    window: int | None = None,
    samples: int = DEFAULT_SAMPLES,
    tuple_cap: int = DEFAULT_TUPLE_CAP,
    seed: int = 0,
):
    """Find a set with density at most c in one color, or stumble on a copy.

    Wraps the binary-tree recursion with halving budgets h1 = h2 =
    ceil(log2(2/c)); the returned SparseSet then satisfies density <= c.
    """
    c = Fraction(c)
    if not 0 < c < Fraction(1, 8):
        raise ParameterError(f"c={c} must lie strictly in (0, 1/8)")
    _gate_patterns(pat1, pat2)
    params = RecursionParams.from_patterns(
        pat1, pat2, c, coloring.N, alpha=alpha, window=window
    )
    res = binary_tree_sparse(
        coloring,
        range(1, coloring.N + 1),
        pat1,
        pat2,
        params,
        samples=samples,
        tuple_cap=tuple_cap,
        seed=seed,
    )
    if isinstance(res, SparseSet) and res.density > c:
        raise InternalContractError(f"sparse set density {res.density} exceeds c={c}")
    return res


def split_pattern(pattern: OrderedGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the vertices into a prefix and suffix, each with <= m/2 edges.

    The prefix is the longest one whose induced edge count stays within half
    of the total; disjointness of prefix and suffix edge sets makes the
    suffix bound automatic.
    """
    if pattern.m < 1:
        raise ParameterError("pattern must have at least one edge")
    m = pattern.m
    ends = [0] * (pattern.n + 1)
    for _, j in pattern.edges:
        ends[j] += 1
    best = 1
    seen = 0
    for ell in range(1, pattern.n + 1):
        seen += ends[ell]
        if 2 * seen <= m:
            best = ell
    lower = tuple(range(1, best + 1))
    upper = tuple(range(best + 1, pattern.n + 1))
    upper_edges = sum(1 for (i, _) in pattern.edges if i > best)
    if 2 * upper_edges > m:
        raise InternalContractError("suffix of the split exceeds half the edges")
    return lower, upper


def find_good_coloring(
    pat1: OrderedGraph, pat2: OrderedGraph, big_n: int
) -> ColoredCompleteGraph | None:
    """A coloring of ordered K_N with no red pat1 and no blue pat2, or None."""
    if big_n < 1:
        raise ParameterError("N must be positive")
    bits = kernels.search_good_coloring(
        big_n, pat1.n, sorted(pat1.edges), pat2.n, sorted(pat2.edges)
    )
    return None if bits is None else ColoredCompleteGraph.from_colex_bits(big_n, bits)


def exact_ordered_ramsey(
    pat1: OrderedGraph, pat2: OrderedGraph, max_n: int
) -> tuple[int, ColoredCompleteGraph] | None:
    """Least N <= max_n forcing a red pat1 or blue pat2, with a witness.

    The witness is a good coloring on N* - 1 vertices containing neither
    pattern in its color.  Returns None when N* exceeds max_n.
    """
    if pat1.m < 1 or pat2.m < 1:
        raise ParameterError("patterns must each have at least one edge")
    if max_n < 1:
        raise ParameterError("maxN must be positive")
    witness = None
    for big_n in range(1, max_n + 1):
        good = find_good_coloring(pat1, pat2, big_n)
        if good is None:
            assert witness is not None  # K_1 contains no pattern with an edge
            return big_n, witness
        witness = good
    return None


def _insert_isolated(
    total: int, old2new: dict[int, int], hosts: tuple[int, ...], pool: tuple[int, ...]
):
    """Extend an embedding over isolated pattern positions using pool slots.

    Positions 1..total that appear in old2new are already matched to hosts
    (in order); the rest greedily take the least unused pool vertex that
    keeps the whole map strictly increasing.  Returns the full host list or
    None when the pool runs dry in some gap.
    """
    nxt = [0] * (total + 2)
    following = 0
    for p in range(total, 0, -1):
        if p in old2new:
            following = hosts[old2new[p] - 1]
        nxt[p] = following
    out = []
    prev = 0
    used = set(hosts)
    idx = 0
    for p in range(1, total + 1):
        if p in old2new:
            h = hosts[old2new[p] - 1]
            out.append(h)
            prev = h
            continue
        upper = nxt[p]
        while idx < len(pool) and (pool[idx] <= prev or pool[idx] in used):
            idx += 1
        if idx >= len(pool) or (upper and pool[idx] >= upper):
            return None
        out.append(pool[idx])
        prev = pool[idx]
        used.add(pool[idx])
        idx += 1
    return out


def _spaced(pool: tuple[int, ...], step: int) -> tuple[int, ...]:
    """Every step-th pool vertex, omitting the last one picked."""
    picked = pool[step - 1 :: step]
    return picked[:-1]


def find_mono_copy(
    coloring: ColoredCompleteGraph,
    pat1: OrderedGraph,
    pat2: OrderedGraph,
    params: PipelineParams | None = None,
    *,
    seed: int = 0,
    exhaustive_threshold: int = DEFAULT_EXHAUSTIVE_THRESHOLD,
):
    """Search for a red copy of pat1 or a blue copy of pat2.

    Runs the full program: direct embedding attempts first (a found copy is
    the contradiction the structural phases argue toward), then sparse-set
    extraction, skeleton finding in the dense color, skeleton embedding, and
    finally the split-and-stitch recursion across a dense ordered pair.
    Small vertex sets are settled exhaustively.  Returns MonoCopy or
    Exhausted; Exhausted is never a proof that no copy exists.
    """
    _gate_patterns(pat1, pat2)
    if params is None:
        params = PipelineParams.from_patterns(pat1, pat2)
    if exhaustive_threshold < 1:
        raise ParameterError("exhaustive threshold must be positive")
    X = tuple(range(1, coloring.N + 1))
    return _pipeline_search(coloring, X, pat1, pat2, params, seed, exhaustive_threshold, ())


def _verified_copy(coloring, pat1, pat2, color, mapping) -> MonoCopy:
    mc = MonoCopy(color, tuple(mapping))
    ok, reason = verify_mono_copy(coloring, pat1, pat2, mc)
    if not ok:
        raise InternalContractError(f"pipeline copy failed verification: {reason}")
    return mc


def _pipeline_search(
    coloring: ColoredCompleteGraph,
    X: tuple[int, ...],
    pat1: OrderedGraph,
    pat2: OrderedGraph,
    params: PipelineParams,
    seed: int,
    threshold: int,
    trace: tuple,
):
    sub, back = coloring.induced(X)

    # a found copy is exactly the contradiction the structural argument
    # assumes away, so look for it before doing any heavy lifting
    for col, pat in ((Color.RED, pat1), (Color.BLUE, pat2)):
        if pat.n <= sub.N:
            emb = find_ordered_embedding(color_class(sub, col), pat)
            if emb is not None:
                return _verified_copy(
                    coloring, pat1, pat2, col, tuple(back[v] for v in emb.mapping)
                )
    if len(X) <= threshold:
        return Exhausted(trace + (f"exhaustive search over {len(X)} vertices found no copy",))

    rss = recursive_sparse_set(
        sub,
        pat1,
        pat2,
        params.c1,
        alpha=params.alpha,
        window=params.window,
        samples=params.samples,
        tuple_cap=params.tuple_cap,
        seed=seed,
    )
    if isinstance(rss, MonoCopy):
        return _verified_copy(
            coloring, pat1, pat2, rss.color, tuple(back[v] for v in rss.mapping)
        )
    if isinstance(rss, Exhausted):
        return Exhausted(trace + rss.trace + ("sparse-set recursion exhausted",))

    i1 = rss.color
    w_local = rss.members
    a_eff = min(params.a, (len(w_local) - 1) // 4)
    if a_eff < 1:
        return Exhausted(
            trace + (f"sparse set of {len(w_local)} vertices is too small for a skeleton",)
        )
    sub_w, back_w = sub.induced(w_local)
    c_skel = max(params.c1, Fraction(10, a_eff))
    dres = find_skeleton_in_dense(
        sub_w,
        i1,
        a_eff,
        c_skel,
        samples=params.samples,
        seed=seed + 1,
        tuple_cap=params.tuple_cap,
        window=params.window,
    )
    if not dres.found:
        return Exhausted(
            trace + (f"no skeleton found in the dense color on {len(w_local)} vertices",)
        )
    i2 = dres.color
    i3 = i2.other
    pat_dense = pat1 if i2 is Color.RED else pat2
    try:
        res = skeleton_embed_or_sparse_pair(
            color_class(sub_w, i2),
            dres.skeleton,
            pat_dense,
            params.c2,
            enforce_size_precondition=False,
        )
    except ParameterError as exc:
        return Exhausted(trace + (f"skeleton embedding inapplicable: {exc}",))
    if isinstance(res, Embedding):
        return _verified_copy(
            coloring, pat1, pat2, i2, tuple(back[back_w[v]] for v in res.mapping)
        )

    A = tuple(back[back_w[v]] for v in res.lower)
    B = tuple(back[back_w[v]] for v in res.upper)
    c2 = params.c2
    rows3 = coloring.class_rows(i3)
    mask_b = mask_of(B)
    lack = c2.denominator - 2 * c2.numerator
    a_prime = tuple(
        v for v in A if (rows3[v] & mask_b).bit_count() * c2.denominator >= lack * len(B)
    )
    if not a_prime:
        return Exhausted(trace + ("no vertices of the lower half see most of the upper half",))
    if 2 * len(a_prime) < len(A):
        raise InternalContractError("high-degree filter kept under half of the lower pair")

    pat_split = pat1 if i3 is Color.RED else pat2
    u_l, u_r = split_pattern(pat_split)
    step = 3 * pat1.m

    sub_l, _ = pat_split.induced(u_l)
    l_strip, l_map = remove_isolated(sub_l)
    if l_strip.n > 0:
        spaced_a = _spaced(a_prime, step)
        if not spaced_a:
            return Exhausted(trace + ("spaced lower half is empty",))
        child = (l_strip, pat2) if i3 is Color.RED else (pat1, l_strip)
        child_params = PipelineParams.from_patterns(
            *child,
            alpha=params.alpha,
            window=params.window,
            samples=params.samples,
            tuple_cap=params.tuple_cap,
        )
        r_low = _pipeline_search(
            coloring,
            spaced_a,
            *child,
            child_params,
            seed + 2,
            threshold,
            trace + (f"prefix half on {len(spaced_a)} spaced vertices",),
        )
        if isinstance(r_low, Exhausted):
            return r_low
        if r_low.color is i2:
            return r_low
        phi1 = r_low.mapping
    else:
        phi1 = ()
    psi_l = _insert_isolated(len(u_l), l_map, phi1, a_prime)
    if psi_l is None:
        return Exhausted(trace + ("could not seat the prefix's isolated vertices",))

    b_common = tuple(v for v in B if all((rows3[v] >> h) & 1 for h in psi_l))
    if not b_common:
        return Exhausted(trace + ("placed prefix has no common neighborhood above",))

    sub_r, _ = pat_split.induced(u_r)
    r_strip, r_map = remove_isolated(sub_r)
    if r_strip.n > 0:
        spaced_b = _spaced(b_common, step)
        if not spaced_b:
            return Exhausted(trace + ("spaced upper half is empty",))
        child = (r_strip, pat2) if i3 is Color.RED else (pat1, r_strip)
        child_params = PipelineParams.from_patterns(
            *child,
            alpha=params.alpha,
            window=params.window,
            samples=params.samples,
            tuple_cap=params.tuple_cap,
        )
        r_high = _pipeline_search(
            coloring,
            spaced_b,
            *child,
            child_params,
            seed + 3,
            threshold,
            trace + (f"suffix half on {len(spaced_b)} spaced vertices",),
        )
        if isinstance(r_high, Exhausted):
            return r_high
        if r_high.color is i2:
            return r_high
        phi3 = r_high.mapping
    else:
        phi3 = ()
    psi_r = _insert_isolated(len(u_r), r_map, phi3, b_common)
    if psi_r is None:
        return Exhausted(trace + ("could not seat the suffix's isolated vertices",))

    return _verified_copy(coloring, pat1, pat2, i3, tuple(psi_l) + tuple(psi_r))
