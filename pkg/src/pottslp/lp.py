"""Exact rational linear programs over local-view probabilities.

The primal puts one variable per admissible view (boundary uses at most q
colors), a simplex row, and either the single energy-balance row or one row
per color-histogram class.  Solving is a two-phase tableau simplex on
Fractions with Bland's rule; optima, bases, and duals are exact, so a zero
gap means zero, not 1e-12.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, local_view_distribution
from .localstats import (
    bipartite_partition_polynomial,
    energy_from_partition,
    local_quantities,
    mean_center_matches,
    q_partitions,
)
from .localview import LocalView, enumerate_views

CONSTRAINT_SETS = ("energy_only", "q_partitions")


@dataclass(frozen=True)
class LPInstance:
    """One exact LP over admissible views at a concrete (q, lam)."""

    sense: str
    d: int
    q: int
    lam: Fraction
    constraint_set: str
    views: tuple[LocalView, ...]
    objective: tuple[Fraction, ...]          # U^v per view
    rows: tuple[tuple[str, tuple[Fraction, ...], Fraction], ...]
    energy_row_redundant: bool | None = None  # verified only for q_partitions

    @property
    def row_names(self) -> tuple[str, ...]:
        return tuple(name for name, _, _ in self.rows)


@dataclass(frozen=True)
class LPSolution:
    status: str                              # optimal | infeasible | unbounded
    optimum: Fraction | None
    distribution: dict[int, Fraction]        # view index within instance -> p
    dual_values: dict[str, Fraction]


def _row_in_span(target: list[Fraction], rows: list[list[Fraction]]) -> bool:
    """Exact Gaussian elimination: is target a linear combination of rows?"""
    work = [row[:] for row in rows]
    t = target[:]
    n = len(t)
    pivots: list[int] = []
    reduced: list[list[Fraction]] = []
    for row in work:
        row = row[:]
        for pcol, prow in zip(pivots, reduced):
            if row[pcol]:
                f = row[pcol]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((j for j in range(n) if row[j]), None)
        if lead is None:
            continue
        row = [a / row[lead] for a in row]
        pivots.append(lead)
        reduced.append(row)
    for pcol, prow in zip(pivots, reduced):
        if t[pcol]:
            f = t[pcol]
            t = [a - f * b for a, b in zip(t, prow)]
    return all(a == 0 for a in t)


def build_lp(
    d: int,
    q: int,
    lam: Fraction,
    constraint_set: str = "energy_only",
    sense: str = "min",
) -> LPInstance:
    """Assemble the exact LP for degree d at a concrete rational (q, lam)."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    if constraint_set not in CONSTRAINT_SETS:
        raise ValueError(f"constraint_set must be one of {CONSTRAINT_SETS}")
    if q < 2:
        raise ValueError("q must be at least 2")
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError("lam must lie strictly between 0 and 1")
    table = enumerate_views(d, max_colors=min(q, d * (d - 1)))
    views = tuple(v for v in table if v.q_c <= q)

    quantities = [local_quantities(v) for v in views]
    objective = tuple(lq.uv_value(q, lam) for lq in quantities)
    un_vals = [lq.un_value(q, lam) for lq in quantities]

    rows: list[tuple[str, tuple[Fraction, ...], Fraction]] = [
        ("total", tuple(Fraction(1) for _ in views), Fraction(1)),
        ("energy", tuple(u - w for u, w in zip(objective, un_vals)), Fraction(0)),
    ]
    redundant = None
    if constraint_set == "q_partitions":
        gamma_rows = []
        for parts in q_partitions(d, max_parts=q):
            coeffs = []
            for lq in quantities:
                gv, gn = lq.gamma_value(parts, q, lam)
                coeffs.append(gv - gn)
            name = "gamma(" + ",".join(map(str, parts)) + ")"
            gamma_rows.append((name, tuple(coeffs), Fraction(0)))
            rows.append(gamma_rows[-1])
        # the energy row is implied by the histogram rows; verify both ways
        weights = {
            parts: mean_center_matches(parts, q, lam) / 2
            for parts in q_partitions(d, max_parts=q)
        }
        implied = []
        for j in range(len(views)):
            total = Fraction(0)
            for name, coeffs, _ in gamma_rows:
                total += weights[_parts_of(name)] * coeffs[j]
            implied.append(total)
        energy = rows[1][1]
        by_identity = all(a == b for a, b in zip(implied, energy))
        by_elimination = _row_in_span(list(energy), [list(c) for _, c, _ in gamma_rows])
        redundant = by_identity and by_elimination

    return LPInstance(
        sense=sense,
        d=d,
        q=q,
        lam=lam,
        constraint_set=constraint_set,
        views=views,
        objective=objective,
        rows=tuple(rows),
        energy_row_redundant=redundant,
    )


def _parts_of(name: str) -> tuple[int, ...]:
    inside = name[name.index("(") + 1:name.index(")")]
    return tuple(int(x) for x in inside.split(","))


# ---------------------------------------------------------------------------
# exact two-phase simplex
# ---------------------------------------------------------------------------

def _simplex(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]):
    """min c.x subject to Ax = b, x >= 0.  Returns (status, x, duals)."""
    m, n = len(A), len(c)
    A = [row[:] for row in A]
    b = b[:]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    ncols = n + m
    tableau = [A[i] + [Fraction(j == i) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def pivot(row: int, col: int) -> None:
        piv = tableau[row][col]
        tableau[row] = [x / piv for x in tableau[row]]
        prow = tableau[row]
        for i in range(m):
            if i != row and tableau[i][col]:
                f = tableau[i][col]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], prow)]
        basis[row] = col

    def optimize(costs: list[Fraction], allowed_top: int) -> str:
        # Bland's rule: smallest eligible entering index, smallest-index tie
        # break on the leaving row; guarantees termination.
        while True:
            cb = [costs[basis[i]] for i in range(m)]
            enter = -1
            for j in range(allowed_top):
                reduced = costs[j] - sum(cb[i] * tableau[i][j] for i in range(m))
                if reduced < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best: Fraction | None = None
            for i in range(m):
                if tableau[i][enter] > 0:
                    ratio = tableau[i][ncols] / tableau[i][enter]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    status = optimize(phase1, ncols)
    if status != "optimal":  # pragma: no cover - phase 1 is always bounded
        return status, None, None
    infeasibility = sum(phase1[basis[i]] * tableau[i][ncols] for i in range(m))
    if infeasibility != 0:
        return "infeasible", None, None
    # push artificials out of the basis where possible; a stuck artificial
    # sits at value zero and is harmless in phase 2
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if tableau[i][j]:
                    pivot(i, j)
                    break

    phase2 = list(c) + [Fraction(0)] * m
    status = optimize(phase2, n)
    if status != "optimal":
        return status, None, None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][ncols]
    # duals from the artificial columns: y = c_B B^{-1}
    cb = [phase2[basis[i]] for i in range(m)]
    duals = [sum(cb[i] * tableau[i][n + k] for i in range(m)) for k in range(m)]
    return "optimal", x, duals


def solve_exact(lp: LPInstance) -> LPSolution:
    """Exact optimum, a basic optimal distribution, and exact duals."""
    c = list(lp.objective)
    if lp.sense == "max":
        c = [-x for x in c]
    A = [list(coeffs) for _, coeffs, _ in lp.rows]
    b = [rhs for _, _, rhs in lp.rows]
    status, x, duals = _simplex(c, A, b)
    if status != "optimal":
        return LPSolution(status=status, optimum=None, distribution={}, dual_values={})
    optimum = sum(ci * xi for ci, xi in zip(c, x))
    if lp.sense == "max":
        optimum = -optimum
        duals = [-y for y in duals]
    distribution = {j: xj for j, xj in enumerate(x) if xj}
    dual_values = {name: duals[i] for i, (name, _, _) in enumerate(lp.rows)}
    return LPSolution(
        status="optimal",
        optimum=optimum,
        distribution=distribution,
        dual_values=dual_values,
    )


# ---------------------------------------------------------------------------
# graph feasibility and tightness scans
# ---------------------------------------------------------------------------

def check_graph_feasibility(
    g: Graph,
    q: int,
    lam: Fraction,
    constraint_set: str = "energy_only",
) -> bool:
    """Every graph-induced local-view distribution satisfies the LP rows."""
    lam = Fraction(lam)
    d = g.regular_degree()
    lp = build_lp(d, q, lam, constraint_set=constraint_set)
    dist = local_view_distribution(g, q, lam)
    return distribution_feasible(lp, dist)


def distribution_feasible(lp: LPInstance, dist: dict[LocalView, Fraction]) -> bool:
    """Check a distribution over views against an instance's rows, exactly."""
    index = {v: i for i, v in enumerate(lp.views)}
    p = [Fraction(0)] * len(lp.views)
    for view, prob in dist.items():
        if view not in index:
            return False
        p[index[view]] = prob
    if any(x < 0 for x in p):
        return False
    for _, coeffs, rhs in lp.rows:
        if sum(ci * pi for ci, pi in zip(coeffs, p)) != rhs:
            return False
    return True


@dataclass(frozen=True)
class ScanEntry:
    lam: Fraction
    lp_min: Fraction
    u_bipartite: Fraction
    gap: Fraction  # lp_min - u_bipartite; negative means the LP is loose


@dataclass(frozen=True)
class TightnessScan:
    d: int
    q: int
    constraint_set: str
    entries: tuple[ScanEntry, ...]
    truncated: bool = False
    truncation_reason: str | None = None

    @property
    def witnesses(self) -> tuple[Fraction, ...]:
        """lam values where the LP minimum falls strictly below the
        bipartite energy."""
        return tuple(e.lam for e in self.entries if e.gap < 0)


DEFAULT_VIEW_BUDGET = 5000


def tightness_scan(
    d: int,
    q: int,
    lams,
    constraint_set: str = "energy_only",
    max_views: int = DEFAULT_VIEW_BUDGET,
    time_budget: float | None = None,
) -> TightnessScan:
    """Compare the LP minimum against the complete bipartite graph's energy.

    d = 5 needs an explicit max_views override; exceeding a budget returns
    the partial report with a truncation marker rather than raising.
    """
    if d == 5 and max_views == DEFAULT_VIEW_BUDGET:
        raise ValueError("d = 5 scans need an explicit max_views budget override")
    u_poly = energy_from_partition(bipartite_partition_polynomial(d), 2 * d)
    table = enumerate_views(d, max_colors=min(q, d * (d - 1)))
    if len(table) > max_views:
        return TightnessScan(
            d=d, q=q, constraint_set=constraint_set, entries=(),
            truncated=True,
            truncation_reason=f"view table size {len(table)} exceeds budget {max_views}",
        )
    start = time.monotonic()
    entries = []
    for lam in lams:
        if time_budget is not None and time.monotonic() - start > time_budget:
            return TightnessScan(
                d=d, q=q, constraint_set=constraint_set, entries=tuple(entries),
                truncated=True,
                truncation_reason=f"time budget {time_budget}s exhausted",
            )
        lam = Fraction(lam)
        lp = build_lp(d, q, lam, constraint_set=constraint_set, sense="min")
        sol = solve_exact(lp)
        if sol.status != "optimal":  # pragma: no cover - always feasible/bounded
            raise RuntimeError(f"unexpected LP status {sol.status}")
        u_ref = u_poly.eval_rational({"q": q, "lam": lam})
        entries.append(ScanEntry(
            lam=lam, lp_min=sol.optimum, u_bipartite=u_ref, gap=sol.optimum - u_ref,
        ))
    return TightnessScan(
        d=d, q=q, constraint_set=constraint_set, entries=tuple(entries),
    )
