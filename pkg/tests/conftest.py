"""Shared naive oracles: independent, brute-force implementations used to
pin expected values.  These deliberately avoid the package's symmetry
reductions and polynomial machinery."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from pottslp.graphs import Graph


def naive_potts(g: Graph, q: int, lam: Fraction) -> Fraction:
    """Partition function by full enumeration over q^n colorings."""
    lam = Fraction(lam)
    edges = g.edges
    total = Fraction(0)
    for sigma in product(range(q), repeat=g.n):
        m = sum(1 for u, v in edges if sigma[u] == sigma[v])
        total += lam ** m
    return total


def naive_energy(g: Graph, q: int, lam: Fraction) -> Fraction:
    lam = Fraction(lam)
    edges = g.edges
    z = Fraction(0)
    mz = Fraction(0)
    for sigma in product(range(q), repeat=g.n):
        m = sum(1 for u, v in edges if sigma[u] == sigma[v])
        w = lam ** m
        z += w
        mz += m * w
    return mz / (g.n * z)


def naive_proper_count(g: Graph, q: int) -> int:
    edges = g.edges
    count = 0
    for sigma in product(range(q), repeat=g.n):
        if all(sigma[u] != sigma[v] for u, v in edges):
            count += 1
    return count


def view_structure(view):
    """Edges and boundary of a view over vertices (0=center, 1..d)."""
    spokes = [(0, i + 1) for i in range(view.d)]
    inner = [(a + 1, b + 1) for a, b in view.inner_edges]
    return spokes + inner, view.boundary


def naive_local_weights(view, q: int, lam: Fraction):
    """Yield (assignment, weight, m_center, per-neighbor m) over [q]^(d+1)."""
    lam = Fraction(lam)
    edges, boundary = view_structure(view)
    d = view.d
    for assignment in product(range(1, q + 1), repeat=d + 1):
        m = 0
        m_center = 0
        m_nbr = [0] * d
        for a, b in edges:
            if assignment[a] == assignment[b]:
                m += 1
                if a == 0:
                    m_center += 1
                    m_nbr[b - 1] += 1
                else:
                    m_nbr[a - 1] += 1
                    m_nbr[b - 1] += 1
        for i in range(d):
            hits = sum(1 for c in boundary[i] if c == assignment[i + 1])
            m += hits
            m_nbr[i] += hits
        yield assignment, lam ** m, m_center, m_nbr


def naive_local_z(view, q: int, lam: Fraction) -> Fraction:
    return sum(w for _, w, _, _ in naive_local_weights(view, q, lam))


def naive_local_uv(view, q: int, lam: Fraction) -> Fraction:
    z = Fraction(0)
    acc = Fraction(0)
    for _, w, mc, _ in naive_local_weights(view, q, lam):
        z += w
        acc += mc * w
    return acc / (2 * z)


def naive_local_un(view, q: int, lam: Fraction) -> Fraction:
    z = Fraction(0)
    acc = Fraction(0)
    for _, w, _, mn in naive_local_weights(view, q, lam):
        z += w
        acc += sum(mn) * w
    return acc / (2 * view.d * z)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    edges = list(g1.edges) + [(u + g1.n, v + g1.n) for u, v in g2.edges]
    return Graph(g1.n + g2.n, edges)
