"""Exact LP construction, the simplex, duality, and graph feasibility."""

from __future__ import annotations

from fractions import Fraction

import pytest

from pottslp.graphs import (
    complete_bipartite,
    connected_cubic_graphs,
    local_view_distribution,
)
from pottslp.localstats import closed_forms, local_quantities
from pottslp.localview import bicolor_boundary_view, enumerate_views, uniform_boundary_view
from pottslp.lp import (
    LPInstance,
    _simplex,
    build_lp,
    check_graph_feasibility,
    distribution_feasible,
    solve_exact,
    tightness_scan,
)


def assert_optimality_certificates(instance: LPInstance, solution) -> None:
    """Exact primal feasibility, strong duality, dual feasibility, and
    complementary slackness."""
    assert solution.status == "optimal"
    p = [solution.distribution.get(j, Fraction(0)) for j in range(len(instance.views))]
    assert all(x >= 0 for x in p)
    for name, coeffs, rhs in instance.rows:
        assert sum(c * x for c, x in zip(coeffs, p)) == rhs, name
    duals = [solution.dual_values[name] for name, _, _ in instance.rows]
    rhs_values = [rhs for _, _, rhs in instance.rows]
    assert sum(y * r for y, r in zip(duals, rhs_values)) == solution.optimum
    sign = 1 if instance.sense == "min" else -1
    for j, c in enumerate(instance.objective):
        reduced = c - sum(duals[i] * instance.rows[i][1][j] for i in range(len(duals)))
        assert sign * reduced >= 0, f"dual infeasible at column {j}"
        if p[j] > 0:
            assert reduced == 0, f"complementary slackness fails at column {j}"


def test_variable_counts_follow_admissibility():
    table = enumerate_views(3)
    lp3 = build_lp(3, 3, Fraction(1, 2))
    assert len(lp3.views) == len(table.admissible(3)) == 25
    lp2 = build_lp(3, 2, Fraction(1, 2))
    assert len(lp2.views) == len(table.admissible(2)) == 14
    lp6 = build_lp(3, 6, Fraction(1, 2))
    assert len(lp6.views) == 35


def test_partition_rows_for_cubic_graphs():
    inst = build_lp(3, 3, Fraction(1, 2), constraint_set="q_partitions")
    assert inst.row_names == ("total", "energy", "gamma(3)", "gamma(2,1)", "gamma(1,1,1)")
    inst2 = build_lp(3, 2, Fraction(1, 2), constraint_set="q_partitions")
    assert inst2.row_names == ("total", "energy", "gamma(3)", "gamma(2,1)")


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_lp(3, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        build_lp(3, 3, Fraction(3, 2))
    with pytest.raises(ValueError):
        build_lp(6, 3, Fraction(1, 2))
    with pytest.raises(ValueError):
        build_lp(3, 3, Fraction(1, 2), constraint_set="nope")


@pytest.mark.parametrize("q,lam", [(3, Fraction(1, 2)), (2, Fraction(1, 3)), (4, Fraction(2, 3))])
def test_minimum_is_the_bipartite_energy(q, lam):
    forms = closed_forms()
    inst = build_lp(3, q, lam, sense="min")
    sol = solve_exact(inst)
    assert_optimality_certificates(inst, sol)
    assert sol.optimum == forms.u_bipartite.eval_rational({"q": q, "lam": lam})


@pytest.mark.parametrize("q,lam", [(3, Fraction(1, 2)), (2, Fraction(1, 3)), (5, Fraction(1, 5))])
def test_maximum_is_the_clique_energy(q, lam):
    forms = closed_forms()
    inst = build_lp(3, q, lam, sense="max")
    sol = solve_exact(inst)
    assert_optimality_certificates(inst, sol)
    assert sol.optimum == forms.u_clique.eval_rational({"q": q, "lam": lam})


def test_histogram_rows_do_not_change_the_cubic_optimum():
    q, lam = 3, Fraction(2, 5)
    base = solve_exact(build_lp(3, q, lam, sense="min"))
    strong = solve_exact(build_lp(3, q, lam, constraint_set="q_partitions", sense="min"))
    assert base.optimum == strong.optimum


def test_energy_row_is_redundant_under_histogram_rows():
    inst = build_lp(3, 3, Fraction(1, 2), constraint_set="q_partitions")
    assert inst.energy_row_redundant is True
    inst4 = build_lp(4, 3, Fraction(1, 2), constraint_set="q_partitions")
    assert inst4.energy_row_redundant is True


def test_minimum_support_is_the_bipartite_pair():
    inst = build_lp(3, 3, Fraction(1, 2), sense="min")
    sol = solve_exact(inst)
    support = {inst.views[j] for j in sol.distribution}
    assert support == {uniform_boundary_view(), bicolor_boundary_view()}


def test_inadmissible_views_do_not_move_the_optimum():
    # append the views needing more boundary colors than q; their presence
    # must not change either optimum at the sampled parameters.  q = 2 is
    # excluded: several q_C >= 3 views have formally vanishing Z there, so
    # their LP coefficients are undefined (0/0).
    table = enumerate_views(3)
    for q, lam in ((3, Fraction(1, 2)), (4, Fraction(2, 5))):
        for sense in ("min", "max"):
            inst = build_lp(3, q, lam, sense=sense)
            extra = [v for v in table if v.q_c > q]
            views = inst.views + tuple(extra)
            quantities = [local_quantities(v) for v in views]
            objective = tuple(lq.uv_value(q, lam) for lq in quantities)
            energy = tuple(
                lq.uv_value(q, lam) - lq.un_value(q, lam) for lq in quantities
            )
            padded = LPInstance(
                sense=sense,
                d=3,
                q=q,
                lam=lam,
                constraint_set="energy_only",
                views=views,
                objective=objective,
                rows=(
                    ("total", tuple(Fraction(1) for _ in views), Fraction(1)),
                    ("energy", energy, Fraction(0)),
                ),
            )
            assert solve_exact(padded).optimum == solve_exact(inst).optimum


def test_graph_distributions_are_feasible():
    for n in (4, 6, 8):
        for g in connected_cubic_graphs(n):
            assert check_graph_feasibility(g, 3, Fraction(1, 2))
            assert check_graph_feasibility(g, 3, Fraction(1, 2), "q_partitions")


def test_four_regular_graph_distribution_is_feasible():
    assert check_graph_feasibility(complete_bipartite(4), 3, Fraction(1, 2), "q_partitions")


def test_perturbed_distribution_is_infeasible():
    g = complete_bipartite(3)
    q, lam = 3, Fraction(1, 2)
    inst = build_lp(3, q, lam)
    dist = dict(local_view_distribution(g, q, lam))
    assert distribution_feasible(inst, dist)
    a, b = sorted(dist, key=lambda v: (v.inner_edges, v.boundary))[:2]
    eps = Fraction(1, 1000)
    dist[a] += eps
    dist[b] -= eps
    assert not distribution_feasible(inst, dist)


def test_simplex_reports_infeasible_and_unbounded():
    one = Fraction(1)
    status, _, _ = _simplex([one], [[one]], [Fraction(-1)])
    assert status == "infeasible"
    status, _, _ = _simplex([-one, Fraction(0)], [[one, -one]], [Fraction(0)])
    assert status == "unbounded"


def test_tightness_scan_is_flat_for_cubic_graphs():
    scan = tightness_scan(3, 3, [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
    assert not scan.truncated
    assert all(e.gap == 0 for e in scan.entries)
    assert scan.witnesses == ()


def test_scan_budgets():
    with pytest.raises(ValueError):
        tightness_scan(5, 3, [Fraction(1, 2)])
    scan = tightness_scan(3, 3, [Fraction(1, 2)], max_views=2)
    assert scan.truncated and scan.entries == ()
    assert "budget" in scan.truncation_reason
