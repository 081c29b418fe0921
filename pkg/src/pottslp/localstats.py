"""Exact local quantities of a view: partition function, center and
neighborhood energies, and color-histogram probabilities.

Everything is a polynomial (or ratio of polynomials) in (lam, q).  The q
dependence comes from representative colorings: vertices take boundary
colors 1..q_C or fresh colors in first-use order, and a representative
using ell - q_C fresh colors stands for (q-q_C)(q-q_C-1)...(q-ell+1)
concrete colorings.  Totals are checked against q^(d+1) and against naive
enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .localview import LocalView, clique_view
from .polynomial import LAM, Q, Polynomial, RationalFunction, poly


@dataclass(frozen=True)
class RepColoring:
    """One representative coloring of the d+1 uncolored vertices."""

    assignment: tuple[int, ...]          # colors of (center, neighbor 0, ...)
    ell: int                             # largest color used jointly with boundary
    mono: int                            # monochromatic edges incl. to the boundary
    mono_center: int
    mono_per_neighbor: tuple[int, ...]
    neighbor_histogram: tuple[int, ...]


def histogram(colors) -> tuple[int, ...]:
    """Non-increasing multiplicity vector of a color multiset (zeros dropped)."""
    counts: dict = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.values(), reverse=True))


def q_partitions(d: int, max_parts: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of d into at most max_parts positive parts, descending."""
    limit = d if max_parts is None else max_parts
    out: list[tuple[int, ...]] = []

    def rec(rem: int, largest: int, acc: list[int]) -> None:
        if rem == 0:
            out.append(tuple(acc))
            return
        if len(acc) == limit:
            return
        for p in range(min(rem, largest), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(d, d, [])
    return tuple(sorted(out, reverse=True))


def mean_center_matches(parts: tuple[int, ...], q: int, lam: Fraction) -> Fraction:
    """Expected matches between a vertex and its neighborhood, given the
    neighborhood's color histogram.

    The vertex sees the histogram's color classes; conditionally its color
    is c with probability proportional to lam^(size of class of c).
    """
    lam = Fraction(lam)
    k = len(parts)
    if q < k:
        raise ValueError(f"histogram has {k} classes but only q={q} colors")
    num = sum(s * lam ** s for s in parts)
    den = sum(lam ** s for s in parts) + (q - k)
    return Fraction(num) / den


def _view_edges(view: LocalView):
    """Edges of the view among vertices (0=center, 1..d=neighbors)."""
    spokes = tuple((0, i + 1) for i in range(view.d))
    inner = tuple((a + 1, b + 1) for a, b in view.inner_edges)
    return spokes, inner


def _iter_reps(view: LocalView):
    """Yield (assignment, ell, mono, mono_center, mono_per_neighbor) for
    every representative coloring, in first-use order."""
    d = view.d
    qc = view.q_c
    spokes, inner = _view_edges(view)
    boundary = view.boundary
    assignment: list[int] = []

    def rec(pos: int, top: int):
        if pos == d + 1:
            mono = 0
            mono_center = 0
            mono_nbr = [0] * d
            for a, b in spokes:
                if assignment[a] == assignment[b]:
                    mono += 1
                    mono_center += 1
                    mono_nbr[b - 1] += 1
            for a, b in inner:
                if assignment[a] == assignment[b]:
                    mono += 1
                    mono_nbr[a - 1] += 1
                    mono_nbr[b - 1] += 1
            for i in range(d):
                hits = sum(1 for c in boundary[i] if c == assignment[i + 1])
                mono += hits
                mono_nbr[i] += hits
            yield tuple(assignment), max(qc, top), mono, mono_center, tuple(mono_nbr)
            return
        for c in range(1, top + 2):
            assignment.append(c)
            yield from rec(pos + 1, max(top, c))
            assignment.pop()

    yield from rec(0, qc)


def _fresh_weight(qc: int, ell: int) -> Polynomial:
    """(q - qc)(q - qc - 1)...(q - ell + 1) as a polynomial in q."""
    weight = poly(1)
    for fresh in range(qc, ell):
        weight = weight * (Q - fresh)
    return weight


def rep_colorings(view: LocalView) -> tuple[tuple[RepColoring, Polynomial], ...]:
    """All representative colorings with their q-polynomial weights.

    The weighted total is q^(d+1) as a polynomial identity.
    """
    qc = view.q_c
    weights = {}
    out = []
    for assignment, ell, mono, mono_center, mono_nbr in _iter_reps(view):
        if ell not in weights:
            weights[ell] = _fresh_weight(qc, ell)
        out.append((
            RepColoring(
                assignment=assignment,
                ell=ell,
                mono=mono,
                mono_center=mono_center,
                mono_per_neighbor=mono_nbr,
                neighbor_histogram=histogram(assignment[1:]),
            ),
            weights[ell],
        ))
    return tuple(out)


def _assemble(counters: dict, qc: int) -> Polynomial:
    """Turn {(ell, mono): integer} counters into a polynomial in (lam, q)."""
    total = Polynomial.zero()
    for (ell, mono), count in sorted(counters.items()):
        total = total + count * _fresh_weight(qc, ell) * LAM ** mono
    return total


class LocalQuantities:
    """Cached exact quantities of one canonical view.

    One pass over the representative colorings accumulates small integer
    counters keyed (largest color, monochromatic edges); polynomials are
    assembled from those at the end.  Histogram statistics run a second,
    lazy pass the first time gamma() is called.
    """

    def __init__(self, view: LocalView):
        self.view = view
        z_cnt: dict = {}
        uv_cnt: dict = {}
        un_cnt: dict = {}
        for _, ell, mono, mono_center, mono_nbr in _iter_reps(view):
            key = (ell, mono)
            z_cnt[key] = z_cnt.get(key, 0) + 1
            if mono_center:
                uv_cnt[key] = uv_cnt.get(key, 0) + mono_center
            tot = sum(mono_nbr)
            if tot:
                un_cnt[key] = un_cnt.get(key, 0) + tot
        qc = view.q_c
        self.z = _assemble(z_cnt, qc)
        self.uv_num = _assemble(uv_cnt, qc)
        self.un_num = _assemble(un_cnt, qc)
        self._gamma_v_cnt: dict | None = None
        self._gamma_n_cnt: dict | None = None
        self._gamma: dict[tuple[int, ...], tuple[Polynomial, Polynomial]] = {}

    # U^v = uv_num / (2 Z);  U^N = un_num / (2 d Z)

    def uv(self) -> RationalFunction:
        return RationalFunction(self.uv_num, 2 * self.z)

    def un(self) -> RationalFunction:
        return RationalFunction(self.un_num, 2 * self.view.d * self.z)

    def _build_gamma_counters(self) -> None:
        d = self.view.d
        inner = self.view.inner_edges
        boundary = self.view.boundary
        gv: dict = {}
        gn: dict = {}
        for assignment, ell, mono, _, _ in _iter_reps(self.view):
            key = (histogram(assignment[1:]), ell, mono)
            gv[key] = gv.get(key, 0) + 1
            for i in range(d):
                around = [assignment[0]]
                for a, b in inner:
                    if a == i:
                        around.append(assignment[b + 1])
                    elif b == i:
                        around.append(assignment[a + 1])
                around.extend(boundary[i])
                nkey = (histogram(around), ell, mono)
                gn[nkey] = gn.get(nkey, 0) + 1
        self._gamma_v_cnt = gv
        self._gamma_n_cnt = gn

    def gamma(self, parts: tuple[int, ...]) -> tuple[Polynomial, Polynomial]:
        """Numerators (center, neighbor-averaged) of the histogram
        probabilities; both divide by Z."""
        parts = tuple(parts)
        if parts in self._gamma:
            return self._gamma[parts]
        if self._gamma_v_cnt is None:
            self._build_gamma_counters()
        qc = self.view.q_c
        num_v = _assemble(
            {(ell, mono): c for (p, ell, mono), c in self._gamma_v_cnt.items() if p == parts},
            qc,
        )
        share = Fraction(1, self.view.d)
        num_n = share * _assemble(
            {(ell, mono): c for (p, ell, mono), c in self._gamma_n_cnt.items() if p == parts},
            qc,
        )
        result = (num_v, num_n)
        self._gamma[parts] = result
        return result

    # exact point evaluations

    def z_value(self, q: int, lam: Fraction) -> Fraction:
        return self.z.eval_rational({"q": q, "lam": lam})

    def uv_value(self, q: int, lam: Fraction) -> Fraction:
        return self.uv_num.eval_rational({"q": q, "lam": lam}) / (2 * self.z_value(q, lam))

    def un_value(self, q: int, lam: Fraction) -> Fraction:
        return self.un_num.eval_rational({"q": q, "lam": lam}) / (
            2 * self.view.d * self.z_value(q, lam)
        )

    def gamma_value(self, parts, q: int, lam: Fraction) -> tuple[Fraction, Fraction]:
        num_v, num_n = self.gamma(tuple(parts))
        z = self.z_value(q, lam)
        point = {"q": q, "lam": lam}
        return num_v.eval_rational(point) / z, num_n.eval_rational(point) / z


@lru_cache(maxsize=None)
def local_quantities(view: LocalView) -> LocalQuantities:
    return LocalQuantities(view)


def local_Z(view: LocalView) -> Polynomial:
    return local_quantities(view).z


def U_v(view: LocalView) -> RationalFunction:
    return local_quantities(view).uv()


def U_N(view: LocalView) -> RationalFunction:
    return local_quantities(view).un()


def gamma(view: LocalView, parts) -> tuple[RationalFunction, RationalFunction]:
    lq = local_quantities(view)
    num_v, num_n = lq.gamma(tuple(parts))
    return RationalFunction(num_v, lq.z), RationalFunction(num_n, lq.z)


# ---------------------------------------------------------------------------
# closed forms for the extremal graphs
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bipartite_partition_polynomial(d: int) -> Polynomial:
    """Z of the complete bipartite d-regular graph as a polynomial in (lam, q).

    One-sided expansion: fix the left side's coloring, then each right
    vertex contributes sum_c lam^(left vertices colored c) independently.
    """
    if not 1 <= d <= 5:
        raise ValueError("closed form kept for 1 <= d <= 5")
    total = Polynomial.zero()
    assignment: list[int] = []

    def rec(pos: int, top: int) -> None:
        nonlocal total
        if pos == d:
            weight = poly(1)
            for fresh in range(top):
                weight = weight * (Q - fresh)
            sizes: dict[int, int] = {}
            for c in assignment:
                sizes[c] = sizes.get(c, 0) + 1
            factor = Q - top
            for size in sizes.values():
                factor = factor + LAM ** size
            total = total + weight * factor ** d
            return
        for c in range(1, top + 2):
            assignment.append(c)
            rec(pos + 1, max(top, c))
            assignment.pop()

    rec(0, 0)
    return total


def energy_from_partition(z: Polynomial, n_vertices: int) -> RationalFunction:
    """Internal energy per particle from a partition polynomial:
    lam * dZ/dlam / (n Z)."""
    return RationalFunction(LAM * z.derivative("lam"), n_vertices * z)


@dataclass(frozen=True)
class ClosedForms:
    """Exact (lam, q) forms for the cubic extremal graphs."""

    z_bipartite: Polynomial          # complete bipartite cubic graph
    u_bipartite: RationalFunction
    z_clique: Polynomial             # 4-clique
    u_clique: RationalFunction

    def z_bipartite_general(self, d: int) -> Polynomial:
        return bipartite_partition_polynomial(d)

    def u_bipartite_general(self, d: int) -> RationalFunction:
        return energy_from_partition(bipartite_partition_polynomial(d), 2 * d)


@lru_cache(maxsize=None)
def closed_forms() -> ClosedForms:
    z33 = bipartite_partition_polynomial(3)
    z4 = local_Z(clique_view(3))  # the clique view is the 4-clique itself
    return ClosedForms(
        z_bipartite=z33,
        u_bipartite=energy_from_partition(z33, 6),
        z_clique=z4,
        u_clique=energy_from_partition(z4, 4),
    )
