"""Star subdivisions, avoiding tournaments, and the iterated blowup lower bound."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import kernels
from .core import Digraph, Tournament
from .errors import DomainError, GenerationError, ParameterError

DEFAULT_NODE_BUDGET = 10_000_000
BASE_CUTOFF = 20


@dataclass(frozen=True)
class Subdivision:
    """The subdivided star on base 1..n plus one middle vertex per triple.

    Base vertices come first, then triple vertices in lexicographic order of
    (i, j, k); triple_index maps each triple to its vertex id.
    """

    n: int
    digraph: Digraph
    base: tuple[int, ...]
    triple_index: dict[tuple[int, int, int], int]


def build_subdivision_S(n: int) -> Subdivision:
    """Digraph with arcs i -> t, t -> j, t -> k for every triple i < j < k."""
    if n < 3:
        raise ParameterError(f"subdivided star needs n >= 3, got {n}")
    triples = list(combinations(range(1, n + 1), 3))
    index = {t: n + 1 + pos for pos, t in enumerate(triples)}
    arcs = []
    for (i, j, k), t in index.items():
        arcs.append((i, t))
        arcs.append((t, j))
        arcs.append((t, k))
    d = Digraph(n + len(triples), arcs)
    return Subdivision(n, d, tuple(range(1, n + 1)), index)


def find_transitive_subtournament(T: Tournament, k: int) -> tuple[int, ...] | None:
    """Lexicographically least transitive k-subtournament, in dominance order."""
    if k < 1:
        raise ParameterError(f"subtournament size must be >= 1, got {k}")
    chain = kernels.transitive_chain(T.N, list(T.beats), k)
    return None if chain is None else tuple(chain)


def random_tournament_avoiding(
    m: int, k: int, seed: int, max_tries: int = 64
) -> Tournament:
    """Uniform m-vertex tournament with no transitive subtournament on k vertices.

    Draws from a single seeded stream and re-verifies each draw, so equal
    (m, k, seed) always return the same tournament.
    """
    if m < 1:
        raise ParameterError(f"vertex count must be >= 1, got {m}")
    if k < 1:
        raise ParameterError(f"forbidden size must be >= 1, got {k}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        T = Tournament.from_random(m, rng)
        if find_transitive_subtournament(T, k) is None:
            return T
    raise GenerationError(
        f"no {m}-vertex tournament avoiding a transitive {k}-set found", max_tries
    )


@dataclass(frozen=True)
class BlowupTournament:
    """Blowup substituting a copy of inner for every vertex of outer.

    Block ell holds the consecutive vertices (ell-1)*s+1 .. ell*s where s is
    the inner size; arcs inside a block copy inner, arcs between blocks all
    follow the outer arc.
    """

    outer: Tournament
    inner: Tournament
    blocks: tuple[tuple[int, int], ...]
    tournament: Tournament

    def block_of(self, v: int) -> int:
        if not 1 <= v <= self.tournament.N:
            raise DomainError(f"vertex {v} outside 1..{self.tournament.N}")
        return (v - 1) // self.inner.N + 1


def blowup(outer: Tournament, inner: Tournament) -> BlowupTournament:
    if outer.N < 1 or inner.N < 1:
        raise ParameterError("blowup factors must both be nonempty")
    s = inner.N
    total = outer.N * s
    rows = [0] * (total + 1)
    for ell in range(1, outer.N + 1):
        off = (ell - 1) * s
        for u in range(1, s + 1):
            rows[off + u] |= inner.beats[u] << off
        for ell2 in range(1, outer.N + 1):
            if outer.has_arc(ell, ell2):
                block2 = ((1 << s) - 1) << ((ell2 - 1) * s + 1)
                for u in range(1, s + 1):
                    rows[off + u] |= block2
    blocks = tuple(((ell - 1) * s + 1, ell * s) for ell in range(1, outer.N + 1))
    return BlowupTournament(outer, inner, blocks, Tournament(total, tuple(rows)))


def lower_bound_parameters(n: int) -> tuple[int, int, int]:
    """(outer size m, forbidden transitive size k, recursive size n') for n > 20."""
    if n <= BASE_CUTOFF:
        raise ParameterError(f"n = {n} is handled by the fixed base tournament")
    m = max(1, n // 10)
    k = math.ceil(4.0 * math.log(n))
    n_prime = max(3, math.floor(n / (40.0 * math.log(n))))
    return m, k, n_prime


def _base_tournament() -> Tournament:
    # vertex 1 beats everyone, 2 -> 3 -> 4 -> 2; no vertex has both an
    # in-arc and out-degree 2, which is what a subdivided-star middle needs
    return Tournament.from_arcs(
        4, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)]
    )


def iterated_lower_bound_tournament(n: int, seed: int) -> Tournament:
    """Recursive blowup construction for a tournament with no subdivided-star copy.

    Below the cutoff this is a fixed 4-vertex tournament; above it, an
    avoiding outer tournament blown up by the recursion at seed + 1.
    """
    if n < 3:
        raise ParameterError(f"construction needs n >= 3, got {n}")
    if n <= BASE_CUTOFF:
        return _base_tournament()
    m, k, n_prime = lower_bound_parameters(n)
    outer = random_tournament_avoiding(m, k, seed)
    inner = iterated_lower_bound_tournament(n_prime, seed + 1)
    return blowup(outer, inner).tournament


@dataclass(frozen=True)
class InjectionResult:
    """Outcome of a budgeted injection search; exhaustion is not a `no`."""

    mapping: tuple[int, ...] | None
    nodes: int
    exhausted: bool

    @property
    def found(self) -> bool:
        return self.mapping is not None


def verify_subdivision_copy(
    T: Tournament, n: int, mapping: Sequence[int]
) -> tuple[bool, str]:
    """Check that mapping is an injective arc-preserving copy of the subdivided star."""
    S = build_subdivision_S(n)
    total = S.digraph.n
    if len(mapping) != total:
        return False, f"mapping has {len(mapping)} entries, need {total}"
    seen = set()
    for h in mapping:
        if not 1 <= h <= T.N:
            return False, f"image {h} outside 1..{T.N}"
        if h in seen:
            return False, f"image {h} repeats"
        seen.add(h)
    for u, v in sorted(S.digraph.arcs):
        if not T.has_arc(mapping[u - 1], mapping[v - 1]):
            return False, f"arc ({u}, {v}) maps to a reversed pair"
    return True, "ok"


def contains_subdivision(
    T: Tournament, n: int, budget: int = DEFAULT_NODE_BUDGET
) -> InjectionResult:
    """Budgeted search for a copy of the subdivided star on n base vertices.

    Assigns base vertices 1..n first and then triple vertices in
    lexicographic order; every attempted assignment costs one node.
    """
    if budget < 1:
        raise ParameterError(f"node budget must be >= 1, got {budget}")
    S = build_subdivision_S(n)
    if S.digraph.n > T.N:
        return InjectionResult(None, 0, False)
    order = list(range(1, S.digraph.n + 1))
    mapping, nodes, exhausted = kernels.digraph_injection(
        T.N, list(T.beats), S.digraph.n, sorted(S.digraph.arcs), order, budget
    )
    return InjectionResult(
        None if mapping is None else tuple(mapping), nodes, exhausted
    )


@dataclass(frozen=True)
class BucketReport:
    """Block-by-block accounting of where a copy's base vertices landed.

    Claims mirror the counting argument: every bucket stays below n', and
    fewer than 4 ln n buckets hold two or more base vertices.  Small n can
    break either claim, so both are reported rather than assumed.
    """

    bucket_sizes: tuple[int, ...]
    n_prime: int
    multi_threshold: float
    multi_buckets: int
    claim_all_small: bool
    claim_few_multi: bool
    sum_matches: bool

    @property
    def all_claims_hold(self) -> bool:
        return self.claim_all_small and self.claim_few_multi and self.sum_matches


def verify_bucket_claims(
    B: BlowupTournament, mapping: Sequence[int], n: int
) -> BucketReport:
    """Bucket the base images of a verified copy by blowup block and test the claims."""
    ok, reason = verify_subdivision_copy(B.tournament, n, mapping)
    if not ok:
        raise DomainError(f"mapping is not a subdivided-star copy: {reason}")
    sizes = [0] * B.outer.N
    for base_vertex in range(1, n + 1):
        sizes[B.block_of(mapping[base_vertex - 1]) - 1] += 1
    n_prime = max(3, math.floor(n / (40.0 * math.log(n)))) if n > 1 else 3
    threshold = 4.0 * math.log(n)
    multi = sum(1 for s in sizes if s >= 2)
    return BucketReport(
        bucket_sizes=tuple(sizes),
        n_prime=n_prime,
        multi_threshold=threshold,
        multi_buckets=multi,
        claim_all_small=all(s < n_prime for s in sizes),
        claim_few_multi=multi < threshold,
        sum_matches=sum(sizes) == n,
    )
