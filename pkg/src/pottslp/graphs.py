"""Finite simple graphs, standard generators, and the exact Potts oracle.

The oracle enumerates colorings with a color-symmetry reduction: only
colorings whose distinct colors appear in first-use order are visited, and
each one stands for q*(q-1)*...*(q-k+1) concrete colorings (k = number of
classes).  This keeps everything an exact Fraction while pushing the
feasible size to roughly sixteen vertices at moderate q.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

DEFAULT_VERTEX_CAP = 16


def vertex_cap() -> int:
    """Exhaustive-enumeration guard; override with POTTSLP_VERTEX_CAP."""
    raw = os.environ.get("POTTSLP_VERTEX_CAP")
    if raw is None:
        return DEFAULT_VERTEX_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"POTTSLP_VERTEX_CAP={raw!r} is not an integer") from exc


class GraphParseError(ValueError):
    """Malformed edge-list or graph6 input."""


class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e!r} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key!r}")
            seen.add(key)
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(tuple(sorted(s)) for s in nbrs))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Graph is immutable")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def regular_degree(self) -> int:
        """Common degree, or raise if the graph is not regular."""
        degs = set(self.degrees())
        if len(degs) != 1:
            raise ValueError("graph is not regular")
        return degs.pop()

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees())
        if len(degs) > 1:
            return False
        if d is None:
            return True
        return not degs or degs == {d}

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for start in range(self.n):
            if color[start] >= 0:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v in self.adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# generators and parsers
# ---------------------------------------------------------------------------

def complete(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(k, combinations(range(k), 2))


def complete_bipartite(d: int) -> Graph:
    """The d-regular complete bipartite graph on 2d vertices."""
    if d < 1:
        raise ValueError("complete bipartite graph needs d >= 1")
    return Graph(2 * d, ((i, d + j) for i in range(d) for j in range(d)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def prism(n: int) -> Graph:
    """Circular ladder: two n-cycles joined by a perfect matching (cubic)."""
    if n < 3:
        raise ValueError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def _tokenize_with_offsets(text: str) -> list[tuple[str, int]]:
    toks = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch == "#":
            while i < size and text[i] != "\n":
                i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < size and not text[j].isspace() and text[j] != "#":
                j += 1
            toks.append((text[i:j], i))
            i = j
    return toks


def from_edge_list(text: str) -> Graph:
    """Parse 'n' then one 'u v' pair per line (0-indexed, '#' comments)."""
    tokens = _tokenize_with_offsets(text)
    if not tokens:
        raise GraphParseError("empty edge list (byte offset 0)")

    def as_int(item):
        tok, off = item
        try:
            return int(tok)
        except ValueError:
            raise GraphParseError(f"bad token {tok!r} at byte offset {off}") from None

    n = as_int(tokens[0])
    rest = tokens[1:]
    if len(rest) % 2:
        tok, off = rest[-1]
        raise GraphParseError(f"dangling endpoint {tok!r} at byte offset {off}")
    pairs = [(as_int(rest[i]), as_int(rest[i + 1])) for i in range(0, len(rest), 2)]
    try:
        return Graph(n, pairs)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def from_graph6(text: str) -> Graph:
    """Parse a graph6 string (n <= 62 supported)."""
    s = text.strip()
    if not s:
        raise GraphParseError("empty graph6 string (byte offset 0)")
    data = s.encode("ascii", errors="replace")
    if data[0] == 126:  # '~' long form
        raise GraphParseError("graph6 long form (n > 62) not supported (byte offset 0)")
    n = data[0] - 63
    if not 0 <= n <= 62:
        raise GraphParseError(f"bad graph6 size byte {chr(data[0])!r} (byte offset 0)")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) - 1 != need:
        raise GraphParseError(
            f"graph6 body has {len(data) - 1} bytes, expected {need} (byte offset {min(len(data), need + 1)})"
        )
    bits = []
    for pos, byte in enumerate(data[1:], start=1):
        val = byte - 63
        if not 0 <= val < 64:
            raise GraphParseError(f"bad graph6 byte {chr(byte)!r} (byte offset {pos})")
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Potts oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PottsEvaluation:
    """Exact partition function, energy, and optional edge-count histogram."""

    q: int
    lam: Fraction
    partition: Fraction
    energy: Fraction
    monochromatic_edge_distribution: dict[int, Fraction] | None = None


def falling_factorial(q: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= q - j
    return out


def _check_oracle_input(g: Graph, q: int) -> None:
    if q < 1:
        raise ValueError("q must be at least 1")
    if g.n > vertex_cap():
        raise ValueError(
            f"instance too large: {g.n} vertices exceeds cap {vertex_cap()} "
            "(set POTTSLP_VERTEX_CAP to override)"
        )


_KM_CACHE: dict[tuple[Graph, int], dict[tuple[int, int], int]] = {}
_VIEW_CACHE: dict[tuple[Graph, int], dict] = {}


def _km_counters(g: Graph, cap: int) -> dict[tuple[int, int], int]:
    """Map (classes used, monochromatic edges) -> number of canonical colorings."""
    for (gg, c), table in _VIEW_CACHE.items():
        if gg == g and c >= cap:
            return table["km"]
    best = None
    for (gg, c), table in _KM_CACHE.items():
        if gg == g and c >= cap and (best is None or c < best[0]):
            best = (c, table)
    if best:
        return best[1]

    n = g.n
    earlier = [tuple(u for u in g.adj[v] if u < v) for v in range(n)]
    counts: dict[tuple[int, int], int] = {}
    colors = [0] * n

    def rec(v: int, used: int, m: int) -> None:
        if v == n:
            key = (used, m)
            counts[key] = counts.get(key, 0) + 1
            return
        nbrs = earlier[v]
        for c in range(1, used + 1):
            dm = 0
            for u in nbrs:
                if colors[u] == c:
                    dm += 1
            colors[v] = c
            rec(v + 1, used, m + dm)
        if used < cap:
            colors[v] = used + 1
            rec(v + 1, used + 1, m)
        colors[v] = 0

    rec(0, 0, 0)
    _KM_CACHE[(g, cap)] = counts
    return counts


def potts_partition(g: Graph, q: int, lam: Fraction) -> Fraction:
    """Exact Z = sum over colorings of lam^(monochromatic edges)."""
    _check_oracle_input(g, q)
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lam must be non-negative")
    counts = _km_counters(g, min(g.n, q))
    lam_pow = _powers(lam, max((m for _, m in counts), default=0))
    total = Fraction(0)
    for (k, m), c in counts.items():
        if k <= q:
            w = c * falling_factorial(q, k)
            if m == 0 or lam != 0:
                total += w * lam_pow[m]
    return total


def _powers(lam: Fraction, top: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(top):
        out.append(out[-1] * lam)
    return out


def internal_energy(g: Graph, q: int, lam: Fraction) -> Fraction:
    """Expected monochromatic edges per vertex, exactly."""
    _check_oracle_input(g, q)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lam must be positive for the energy")
    counts = _km_counters(g, min(g.n, q))
    lam_pow = _powers(lam, max((m for _, m in counts), default=0))
    z = Fraction(0)
    mw = Fraction(0)
    for (k, m), c in counts.items():
        if k <= q:
            w = c * falling_factorial(q, k) * lam_pow[m]
            z += w
            mw += m * w
    return mw / (g.n * z)


def potts_evaluation(g: Graph, q: int, lam: Fraction, with_distribution: bool = False) -> PottsEvaluation:
    _check_oracle_input(g, q)
    lam = Fraction(lam)
    counts = _km_counters(g, min(g.n, q))
    lam_pow = _powers(lam, max((m for _, m in counts), default=0))
    z = Fraction(0)
    mw = Fraction(0)
    dist: dict[int, Fraction] = {}
    for (k, m), c in counts.items():
        if k <= q:
            w = c * falling_factorial(q, k) * lam_pow[m]
            z += w
            mw += m * w
            if with_distribution and w:
                dist[m] = dist.get(m, Fraction(0)) + w
    energy = mw / (g.n * z) if g.n else Fraction(0)
    return PottsEvaluation(
        q=q,
        lam=lam,
        partition=z,
        energy=energy,
        monochromatic_edge_distribution=dict(sorted(dist.items())) if with_distribution else None,
    )


def count_proper_colorings(g: Graph, q: int) -> int:
    """Exact number of proper q-colorings (pruned symmetry-reduced search)."""
    _check_oracle_input(g, q)
    n = g.n
    cap = min(n, q)
    earlier = [tuple(u for u in g.adj[v] if u < v) for v in range(n)]
    colors = [0] * n
    per_k = [0] * (cap + 1)

    def rec(v: int, used: int) -> None:
        if v == n:
            per_k[used] += 1
            return
        nbrs = earlier[v]
        forbidden = {colors[u] for u in nbrs}
        for c in range(1, used + 1):
            if c not in forbidden:
                colors[v] = c
                rec(v + 1, used)
        if used < cap:
            colors[v] = used + 1
            rec(v + 1, used + 1)
        colors[v] = 0

    rec(0, 0)
    return sum(cnt * falling_factorial(q, k) for k, cnt in enumerate(per_k))


# ---------------------------------------------------------------------------
# local-view distribution (joint experiment: uniform vertex, Potts coloring)
# ---------------------------------------------------------------------------

def _view_counters(g: Graph, cap: int) -> dict:
    """Per-graph counters keyed (view ordinal-free): view -> {(k, m): count}."""
    for (gg, c), table in _VIEW_CACHE.items():
        if gg == g and c >= cap:
            return table

    from . import localview  # local import; localview depends on Graph

    d = g.regular_degree()
    n = g.n
    nbr_sets = [set(a) for a in g.adj]
    plans = []
    for v in range(n):
        nbrs = g.adj[v]
        closed = nbr_sets[v] | {v}
        inner = tuple(
            (i, j)
            for i in range(d)
            for j in range(i + 1, d)
            if nbrs[j] in nbr_sets[nbrs[i]]
        )
        ext = tuple(tuple(w for w in g.adj[u] if w not in closed) for u in nbrs)
        plans.append((inner, ext))

    earlier = [tuple(u for u in g.adj[v] if u < v) for v in range(n)]
    colors = [0] * n
    view_counts: dict = {}
    km: dict[tuple[int, int], int] = {}
    canon_memo: dict = {}

    def normalize(inner, bnd):
        # cheap first-use relabel to shrink the memo key space
        relabel: dict[int, int] = {}
        out = []
        for mset in bnd:
            mapped = []
            for c in mset:
                if c not in relabel:
                    relabel[c] = len(relabel) + 1
                mapped.append(relabel[c])
            mapped.sort()
            out.append(tuple(mapped))
        return (inner, tuple(out))

    def canonical_view(inner, bnd):
        key = normalize(inner, bnd)
        view = canon_memo.get(key)
        if view is None:
            view = localview.canonicalize(d, key[0], key[1])
            canon_memo[key] = view
        return view

    def record(used: int, m: int) -> None:
        kmkey = (used, m)
        km[kmkey] = km.get(kmkey, 0) + 1
        for inner, ext in plans:
            bnd = tuple(tuple(sorted(colors[w] for w in slots)) for slots in ext)
            view = canonical_view(inner, bnd)
            vk = (view, used, m)
            view_counts[vk] = view_counts.get(vk, 0) + 1

    def rec(v: int, used: int, m: int) -> None:
        if v == n:
            record(used, m)
            return
        nbrs = earlier[v]
        for c in range(1, used + 1):
            dm = 0
            for u in nbrs:
                if colors[u] == c:
                    dm += 1
            colors[v] = c
            rec(v + 1, used, m + dm)
        if used < cap:
            colors[v] = used + 1
            rec(v + 1, used + 1, m)
        colors[v] = 0

    rec(0, 0, 0)
    table = {"views": view_counts, "km": km, "cap": cap}
    _VIEW_CACHE[(g, cap)] = table
    return table


def local_view_distribution(g: Graph, q: int, lam: Fraction) -> dict:
    """Exact probability of each canonical local view under the joint draw."""
    _check_oracle_input(g, q)
    g.regular_degree()
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lam must be positive")
    table = _view_counters(g, min(g.n, q))
    km = table["km"]
    lam_pow = _powers(lam, max((m for _, m in km), default=0))
    z = Fraction(0)
    for (k, m), c in km.items():
        if k <= q:
            z += c * falling_factorial(q, k) * lam_pow[m]
    dist: dict = {}
    for (view, k, m), c in table["views"].items():
        if k <= q:
            w = c * falling_factorial(q, k) * lam_pow[m]
            if w:
                dist[view] = dist.get(view, Fraction(0)) + w
    total = z * g.n
    return {view: w / total for view, w in dist.items() if w}


# ---------------------------------------------------------------------------
# cycles and the infinite line
# ---------------------------------------------------------------------------

def cycle_closed_forms(n: int, q: int, lam: Fraction) -> tuple[Fraction, Fraction]:
    """Exact (Z, U) for the n-cycle from the transfer-matrix closed form."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    if q < 1:
        raise ValueError("q must be at least 1")
    lam = Fraction(lam)
    z = (q - 1) * (lam - 1) ** n + (lam + q - 1) ** n
    if lam == 1:
        return z, Fraction(1, q)
    # U = lam * dZ/dlam / (n Z); both cycle families differentiate termwise
    du = lam * ((q - 1) * (lam - 1) ** (n - 1) + (lam + q - 1) ** (n - 1))
    return z, du / z


def line_energy(q: int, lam: Fraction) -> Fraction:
    """Internal energy per particle of the infinite line."""
    lam = Fraction(lam)
    if q == 1 and lam == 0:
        raise ValueError("line energy undefined at q=1, lam=0")
    return lam / (lam + q - 1)


# ---------------------------------------------------------------------------
# connected cubic graphs on up to ten vertices (internal corpus)
# ---------------------------------------------------------------------------

_CUBIC_CACHE: dict[int, tuple[Graph, ...]] = {}


def _iso_invariant(g: Graph) -> tuple:
    n = g.n
    nbr = [set(a) for a in g.adj]
    tri = [sum(1 for a, b in combinations(g.adj[v], 2) if b in nbr[a]) for v in range(n)]
    profiles = []
    for v in range(n):
        dist = [-1] * n
        dist[v] = 0
        frontier = [v]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if dist[w] < 0:
                        dist[w] = depth
                        nxt.append(w)
            frontier = nxt
        hist = {}
        for x in dist:
            hist[x] = hist.get(x, 0) + 1
        profiles.append((tri[v], tuple(sorted(hist.items()))))
    return (n, g.edge_count, tuple(sorted(profiles)))


def _isomorphic(g1: Graph, g2: Graph, key1: tuple, key2: tuple) -> bool:
    if key1 != key2:
        return False
    n = g1.n

    def vertex_keys(g):
        nbr = [set(a) for a in g.adj]
        keys = []
        for v in range(g.n):
            tri = sum(1 for a, b in combinations(g.adj[v], 2) if b in nbr[a])
            dist = [-1] * g.n
            dist[v] = 0
            frontier = [v]
            depth = 0
            while frontier:
                depth += 1
                nxt = []
                for u in frontier:
                    for w in g.adj[u]:
                        if dist[w] < 0:
                            dist[w] = depth
                            nxt.append(w)
                frontier = nxt
            hist = {}
            for x in dist:
                hist[x] = hist.get(x, 0) + 1
            keys.append((tri, tuple(sorted(hist.items()))))
        return keys

    k1 = vertex_keys(g1)
    k2 = vertex_keys(g2)
    candidates = [[u for u in range(n) if k2[u] == k1[v]] for v in range(n)]
    if any(not c for c in candidates):
        return False

    # order g1 vertices: BFS from the most constrained vertex
    start = min(range(n), key=lambda v: len(candidates[v]))
    order = [start]
    seen = {start}
    qu = [start]
    while qu:
        u = qu.pop(0)
        for w in g1.adj[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                qu.append(w)
    for v in range(n):
        if v not in seen:
            order.append(v)
            seen.add(v)

    nbr2 = [set(a) for a in g2.adj]
    mapping = [-1] * n
    used = [False] * n

    def place(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        mapped_nbrs = [mapping[u] for u in g1.adj[v] if mapping[u] >= 0]
        for img in candidates[v]:
            if used[img]:
                continue
            if all(mu in nbr2[img] for mu in mapped_nbrs):
                deg_needed = len(g1.adj[v])
                if len(g2.adj[img]) != deg_needed:
                    continue
                mapping[v] = img
                used[img] = True
                if place(idx + 1):
                    return True
                mapping[v] = -1
                used[img] = False
        return False

    return place(0)


def connected_cubic_graphs(n: int) -> tuple[Graph, ...]:
    """All connected 3-regular graphs on n vertices, one per isomorphism class.

    Generated by completing the smallest unfinished vertex with neighbors of
    larger index (each labeled graph arises once), with N(0) pinned to
    {1, 2, 3} as a symmetry break, then deduplicated exactly.
    """
    if n % 2 or n < 4:
        raise ValueError("cubic graphs need even n >= 4")
    if n in _CUBIC_CACHE:
        return _CUBIC_CACHE[n]

    reps: list[Graph] = []
    keys: list[tuple] = []

    adj = [set() for _ in range(n)]

    def first_incomplete() -> int:
        for v in range(n):
            if len(adj[v]) < 3:
                return v
        return -1

    def candidates_for(v: int) -> list[int]:
        return [u for u in range(v + 1, n) if len(adj[u]) < 3 and u not in adj[v]]

    def finish() -> None:
        g = Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
        if not g.is_connected():
            return
        key = _iso_invariant(g)
        for rep, rkey in zip(reps, keys):
            if rkey == key and _isomorphic(g, rep, key, rkey):
                return
        reps.append(g)
        keys.append(key)

    def extend() -> None:
        v = first_incomplete()
        if v < 0:
            finish()
            return
        need = 3 - len(adj[v])
        cands = candidates_for(v)
        if len(cands) < need:
            return
        for group in combinations(cands, need):
            for u in group:
                adj[v].add(u)
                adj[u].add(v)
            extend()
            for u in group:
                adj[v].remove(u)
                adj[u].remove(v)

    # pin N(0) = {1, 2, 3}: every cubic graph has a labeling with this property
    for u in (1, 2, 3):
        adj[0].add(u)
        adj[u].add(0)
    extend()

    out = tuple(reps)
    _CUBIC_CACHE[n] = out
    return out
