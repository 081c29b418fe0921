"""Local views of d-regular graphs up to color-permutation equivalence.

A local view records, for a center vertex v of degree d: the edges among
N(v) (the center is implicitly adjacent to every neighbor), and for each
neighbor the multiset of colors on its external neighbors.  The center and
its neighbors are uncolored.  Two views are identified when one maps to the
other by permuting neighbors (respecting the inner edges) and renaming
colors; the stored form is the lexicographically minimal encoding over all
such symmetries, with boundary colors an initial segment 1..q_C.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .graphs import Graph

SUPPORTED_DEGREES = (2, 3, 4, 5)


@dataclass(frozen=True)
class LocalView:
    """Canonical local view; construct through canonicalize()."""

    d: int
    inner_edges: tuple[tuple[int, int], ...]
    boundary: tuple[tuple[int, ...], ...]

    @property
    def q_c(self) -> int:
        """Number of distinct boundary colors (they form 1..q_c)."""
        return max((c for mset in self.boundary for c in mset), default=0)

    @property
    def inner_edge_count(self) -> int:
        return len(self.inner_edges)

    def inner_degree(self, i: int) -> int:
        return sum(1 for e in self.inner_edges if i in e)

    def describe(self) -> str:
        inner = ",".join(f"{a}-{b}" for a, b in self.inner_edges) or "none"
        bnd = "; ".join("{" + ",".join(map(str, m)) + "}" for m in self.boundary)
        return f"d={self.d} inner[{inner}] boundary[{bnd}]"


def _inner_degrees(d: int, inner: tuple[tuple[int, int], ...]) -> list[int]:
    deg = [0] * d
    for a, b in inner:
        deg[a] += 1
        deg[b] += 1
    return deg


def _min_color_encoding(multisets: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Lexicographically smallest per-multiset sorted encoding over color renamings."""
    used = sorted({c for m in multisets for c in m})
    if not used:
        return multisets
    k = len(used)
    profile = {c: tuple(m.count(c) for m in multisets) for c in used}
    mapping: dict[int, int] = {}
    best: list[tuple[tuple[int, ...], ...] | None] = [None]

    def bound_key(next_label: int) -> tuple[tuple[int, ...], ...]:
        # lower bound: assigned labels in place, unassigned slots >= next_label
        out = []
        for m in multisets:
            assigned = sorted(mapping[c] for c in m if c in mapping)
            free = len(m) - len(assigned)
            out.append(tuple(assigned + [next_label] * free))
        return tuple(out)

    def rec(next_label: int) -> None:
        if best[0] is not None and bound_key(next_label) > best[0]:
            return
        if next_label > k:
            enc = tuple(tuple(sorted(mapping[c] for c in m)) for m in multisets)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        # colors with equal occurrence profiles are interchangeable
        groups: dict[tuple[int, ...], int] = {}
        for c in used:
            if c not in mapping:
                groups.setdefault(profile[c], c)
        for c in groups.values():
            mapping[c] = next_label
            rec(next_label + 1)
            del mapping[c]

    rec(1)
    assert best[0] is not None
    return best[0]


def canonicalize(d: int, inner_edges, boundary) -> LocalView:
    """Validate a raw view and return its canonical representative."""
    if d not in SUPPORTED_DEGREES:
        raise ValueError(f"unsupported degree {d}; supported: {SUPPORTED_DEGREES}")
    inner = set()
    for e in inner_edges:
        a, b = e
        if not (0 <= a < d and 0 <= b < d) or a == b:
            raise ValueError(f"bad inner edge {e!r}")
        inner.add((min(a, b), max(a, b)))
    inner_t = tuple(sorted(inner))
    bnd = tuple(tuple(sorted(m)) for m in boundary)
    if len(bnd) != d:
        raise ValueError(f"boundary must list {d} multisets, got {len(bnd)}")
    deg = _inner_degrees(d, inner_t)
    for i, m in enumerate(bnd):
        if len(m) != d - 1 - deg[i]:
            raise ValueError(
                f"neighbor {i}: boundary size {len(m)} + inner degree {deg[i]} != d-1={d - 1}"
            )
        if any(not isinstance(c, int) or c < 1 for c in m):
            raise ValueError(f"boundary colors must be positive integers, got {m!r}")
    # shrink the cache key: rename colors by first use (canonicalization
    # quotients by all renamings, so this is value-preserving)
    relabel: dict[int, int] = {}
    normalized = []
    for m in bnd:
        row = []
        for c in m:
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            row.append(relabel[c])
        row.sort()
        normalized.append(tuple(row))
    return _canonicalize_cached(d, inner_t, tuple(normalized))


@lru_cache(maxsize=65536)
def _canonicalize_cached(
    d: int,
    inner_t: tuple[tuple[int, int], ...],
    bnd: tuple[tuple[int, ...], ...],
) -> LocalView:
    best_inner = None
    argmin_perms = []
    for perm in permutations(range(d)):
        mapped = tuple(sorted(
            (min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in inner_t
        ))
        if best_inner is None or mapped < best_inner:
            best_inner = mapped
            argmin_perms = [perm]
        elif mapped == best_inner:
            argmin_perms.append(perm)

    best_bnd = None
    for perm in argmin_perms:
        arranged = [None] * d
        for i in range(d):
            arranged[perm[i]] = bnd[i]
        enc = _min_color_encoding(tuple(arranged))
        if best_bnd is None or enc < best_bnd:
            best_bnd = enc
    return LocalView(d=d, inner_edges=best_inner, boundary=best_bnd)


class ViewClassTable:
    """Ordered, duplicate-free list of canonical views with ordinal lookup."""

    def __init__(self, d: int, views):
        self.d = d
        self.views = tuple(views)
        self.index = {v: i for i, v in enumerate(self.views)}

    def __len__(self) -> int:
        return len(self.views)

    def __iter__(self):
        return iter(self.views)

    def __getitem__(self, ordinal: int) -> LocalView:
        return self.views[ordinal]

    def ordinal(self, view: LocalView) -> int:
        try:
            return self.index[view]
        except KeyError:
            raise KeyError(f"view not in table: {view.describe()}") from None

    def admissible(self, q: int) -> tuple[int, ...]:
        """Ordinals of views whose boundary uses at most q colors."""
        return tuple(i for i, v in enumerate(self.views) if v.q_c <= q)


_TABLE_CACHE: dict[tuple[int, int], ViewClassTable] = {}


def enumerate_views(d: int, max_colors: int | None = None) -> ViewClassTable:
    """Complete table of canonical views for degree d.

    Views are ordered by (inner edge count, inner edges, boundary), which
    puts the all-one-color boundary view first and the full clique view
    last.  max_colors caps the number of distinct boundary colors (the full
    table uses d*(d-1), the most that can appear).
    """
    if d not in SUPPORTED_DEGREES:
        raise ValueError(f"unsupported degree {d}; supported: {SUPPORTED_DEGREES}")
    cap = d * (d - 1) if max_colors is None else min(max_colors, d * (d - 1))
    if cap < 1:
        raise ValueError("max_colors must be at least 1")
    key = (d, cap)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]

    inner_reps = set()
    all_edges = list(combinations(range(d), 2))
    for mask in range(1 << len(all_edges)):
        inner = tuple(all_edges[i] for i in range(len(all_edges)) if mask >> i & 1)
        best = min(
            tuple(sorted((min(p[a], p[b]), max(p[a], p[b])) for a, b in inner))
            for p in permutations(range(d))
        )
        inner_reps.add(best)

    views = set()
    for inner in sorted(inner_reps):
        deg = _inner_degrees(d, inner)
        sizes = [d - 1 - deg[i] for i in range(d)]
        firsts = set()
        at = 0
        for size in sizes:
            firsts.add(at)
            at += size
        slots = sum(sizes)

        # colors appear in first-use order and non-decreasing inside each
        # neighbor's multiset; canonicalization collapses the rest
        def rec(pos: int, acc: list[int], mx: int) -> None:
            if pos == slots:
                bnd, at = [], 0
                for size in sizes:
                    bnd.append(tuple(acc[at:at + size]))
                    at += size
                views.add(canonicalize(d, inner, bnd))
                return
            floor = 1 if pos in firsts else acc[-1]
            for c in range(floor, min(mx + 1, cap) + 1):
                acc.append(c)
                rec(pos + 1, acc, max(mx, c))
                acc.pop()

        rec(0, [], 0)

    table = ViewClassTable(d, sorted(views, key=lambda v: (len(v.inner_edges), v.inner_edges, v.boundary)))
    _TABLE_CACHE[key] = table
    return table


def extract_view(g: Graph, v: int, sigma) -> LocalView:
    """Canonical local view of coloring sigma at vertex v (colors of v and
    N(v) are not recorded)."""
    d = g.regular_degree()
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    sigma = tuple(sigma)
    if len(sigma) != g.n:
        raise ValueError(f"coloring has {len(sigma)} entries, graph has {g.n} vertices")
    if any(not isinstance(c, int) or c < 1 for c in sigma):
        raise ValueError("colors must be positive integers")
    nbrs = g.adj[v]
    closed = set(nbrs) | {v}
    nbr_sets = [set(g.adj[u]) for u in nbrs]
    inner = tuple(
        (i, j)
        for i in range(d)
        for j in range(i + 1, d)
        if nbrs[j] in nbr_sets[i]
    )
    boundary = tuple(
        tuple(sorted(sigma[w] for w in g.adj[u] if w not in closed)) for u in nbrs
    )
    return canonicalize(d, inner, boundary)


# named landmark views (degree 3)

def uniform_boundary_view() -> LocalView:
    """No inner edges; all six boundary slots carry one color."""
    return canonicalize(3, (), ((1, 1), (1, 1), (1, 1)))


def bicolor_boundary_view() -> LocalView:
    """No inner edges; every neighbor sees the same two colors."""
    return canonicalize(3, (), ((1, 2), (1, 2), (1, 2)))


def clique_view(d: int = 3) -> LocalView:
    """All inner edges present and no boundary: the (d+1)-clique's view."""
    return canonicalize(d, tuple(combinations(range(d), 2)), ((),) * d)
