"""Per-view exact quantities against naive enumeration and closed forms."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from conftest import (
    naive_local_un,
    naive_local_uv,
    naive_local_weights,
    naive_local_z,
)
from pottslp.graphs import (
    complete,
    complete_bipartite,
    connected_cubic_graphs,
    internal_energy,
    local_view_distribution,
    potts_partition,
)
from pottslp.localstats import (
    ClosedForms,
    bipartite_partition_polynomial,
    closed_forms,
    energy_from_partition,
    gamma,
    histogram,
    local_Z,
    local_quantities,
    mean_center_matches,
    q_partitions,
    rep_colorings,
)
from pottslp.localview import (
    bicolor_boundary_view,
    clique_view,
    enumerate_views,
    uniform_boundary_view,
)
from pottslp.polynomial import LAM, Q, Polynomial, RationalFunction, poly


TABLE = enumerate_views(3)


def test_histogram_examples():
    # positive parts only, non-increasing (no q-padding without a q)
    assert histogram([1, 4, 2, 2, 1, 2]) == (3, 2, 1)
    assert histogram([1, 1, 1]) == (3,)
    assert histogram([1, 2, 3]) == (1, 1, 1)


def test_q_partitions():
    assert q_partitions(3) == ((3,), (2, 1), (1, 1, 1))
    assert q_partitions(3, max_parts=2) == ((3,), (2, 1))
    assert q_partitions(4, max_parts=3) == ((4,), (3, 1), (2, 2), (2, 1, 1))


def test_representative_totals_are_q_to_the_four():
    q4 = Q ** 4
    for view in TABLE:
        total = Polynomial.zero()
        for rep, weight in rep_colorings(view):
            assert rep.ell >= view.q_c
            total = total + weight
        assert total == q4


def test_representative_totals_for_other_degrees():
    view2 = enumerate_views(2)[0]
    total = Polynomial.zero()
    for _, weight in rep_colorings(view2):
        total = total + weight
    assert total == Q ** 3
    view4 = enumerate_views(4, max_colors=2)[0]
    total = Polynomial.zero()
    for _, weight in rep_colorings(view4):
        total = total + weight
    assert total == Q ** 5


@pytest.mark.parametrize("q", [2, 3, 4, 5, 6])
def test_local_partition_matches_naive_enumeration(q):
    # the representative-coloring reduction models boundary colors as
    # distinct available colors, so it agrees with concrete enumeration
    # exactly when q >= q_C (views needing more colors cannot arise)
    rng = random.Random(100 + q)
    lam = Fraction(rng.randint(1, 9), 10)
    for view in TABLE:
        if view.q_c > q:
            continue
        lq = local_quantities(view)
        point = {"q": q, "lam": lam}
        assert lq.z.eval_rational(point) == naive_local_z(view, q, lam)


def test_local_energies_match_naive_enumeration():
    rng = random.Random(55)
    for view in TABLE:
        q = rng.choice([q0 for q0 in (2, 3, 4, 5, 6) if q0 >= view.q_c])
        lam = Fraction(rng.randint(1, 9), 10)
        lq = local_quantities(view)
        assert lq.uv_value(q, lam) == naive_local_uv(view, q, lam)
        assert lq.un_value(q, lam) == naive_local_un(view, q, lam)


def test_local_partition_at_infinite_temperature():
    for view in TABLE:
        z1 = local_Z(view).substitute({"lam": Fraction(1)})
        assert z1.num.divide_exact(z1.den) == Q ** 4


def test_uniform_boundary_view_closed_forms():
    lq = local_quantities(uniform_boundary_view())
    z_display = (LAM ** 3 + Q - 1) ** 3 + (Q - 1) * (LAM ** 2 + LAM + Q - 2) ** 3
    assert lq.z == z_display
    # center energy numerator: direct enumeration fixes the exact form
    uv_display = 3 * (LAM ** 3 * (LAM ** 3 + Q - 1) ** 2
                      + (Q - 1) * LAM * (LAM ** 2 + LAM + Q - 2) ** 2)
    assert lq.uv_num == uv_display
    un_display = 3 * (3 * LAM ** 3 * (LAM ** 3 + Q - 1) ** 2
                      + (Q - 1) * (LAM + 2 * LAM ** 2) * (LAM ** 2 + LAM + Q - 2) ** 2)
    assert lq.un_num == un_display


def test_uniform_boundary_energy_difference_identity():
    # U^N - U^v = -lam(1-lam)(q-1)(lam^2+lam+q-2)^2 / Z
    lq = local_quantities(uniform_boundary_view())
    diff = lq.un() - lq.uv()
    expected = RationalFunction(
        -LAM * (1 - LAM) * (Q - 1) * (LAM ** 2 + LAM + Q - 2) ** 2, lq.z
    )
    assert diff == expected


def test_clique_view_center_equals_neighborhood_energy():
    lq = local_quantities(clique_view(3))
    assert lq.uv() == lq.un()


def test_gamma_normalization_is_exact():
    for view in TABLE:
        lq = local_quantities(view)
        total_v = Polynomial.zero()
        total_n = Polynomial.zero()
        for parts in q_partitions(3):
            num_v, num_n = lq.gamma(parts)
            total_v = total_v + num_v
            total_n = total_n + num_n
        assert total_v == lq.z
        assert total_n == lq.z


def test_gamma_at_infinite_temperature_is_multinomial():
    # with no interactions the neighbor colors are uniform: the one-class
    # histogram has probability 1/q^2
    lq = local_quantities(uniform_boundary_view())
    num_v, _ = lq.gamma((3,))
    for q0 in (2, 3, 5, 7):
        point = {"q": q0, "lam": Fraction(1)}
        z = lq.z.eval_rational(point)
        assert num_v.eval_rational(point) / z == Fraction(1, q0 ** 2)


@pytest.mark.parametrize("q", [3, 4])
def test_gamma_matches_naive_enumeration_on_clique_view(q):
    view = clique_view(3)
    lam = Fraction(2, 5)
    lq = local_quantities(view)
    for parts in q_partitions(3):
        gv, gn = lq.gamma_value(parts, q, lam)
        z = Fraction(0)
        acc_v = Fraction(0)
        acc_n = Fraction(0)
        for assignment, w, _, _ in naive_local_weights(view, q, lam):
            z += w
            if histogram(assignment[1:]) == parts:
                acc_v += w
            # neighborhood of each neighbor inside the clique view
            for i in range(3):
                others = [assignment[0]] + [assignment[j + 1] for j in range(3) if j != i]
                if histogram(others) == parts:
                    acc_n += Fraction(w, 3)
        assert gv == acc_v / z
        assert gn == acc_n / z


def test_gamma_rational_functions_share_the_partition_denominator():
    view = TABLE[5]
    gv, gn = gamma(view, (2, 1))
    lq = local_quantities(view)
    assert gv.den == lq.z and gn.den == lq.z


def test_energy_difference_decomposes_over_histograms():
    # U^v - U^N = sum_S phi(S)/2 (gamma_v - gamma_N) with phi the expected
    # center matches given the neighborhood histogram
    for q, lam in ((3, Fraction(1, 3)), (4, Fraction(2, 5))):
        for view in TABLE:
            lq = local_quantities(view)
            lhs = lq.uv_value(q, lam) - lq.un_value(q, lam)
            rhs = Fraction(0)
            for parts in q_partitions(3, max_parts=q):
                gv, gn = lq.gamma_value(parts, q, lam)
                rhs += mean_center_matches(parts, q, lam) / 2 * (gv - gn)
            assert lhs == rhs


def test_mean_center_matches_rejects_too_many_classes():
    with pytest.raises(ValueError):
        mean_center_matches((1, 1, 1), 2, Fraction(1, 2))


# -- closed forms ---------------------------------------------------------------

def test_bipartite_cubic_partition_polynomial_display():
    z33 = closed_forms().z_bipartite
    display = (Q * (LAM ** 3 + Q - 1) ** 3
               + 3 * Q * (Q - 1) * (LAM ** 2 + LAM + Q - 2) ** 3
               + Q * (Q - 1) * (Q - 2) * (3 * LAM + Q - 3) ** 3)
    assert z33 == display


def test_bipartite_cubic_energy_display():
    forms = closed_forms()
    numerator = 3 * Q * (
        LAM ** 3 * (LAM ** 3 + Q - 1) ** 2
        + LAM * (Q - 1) * (Q - 2) * (3 * LAM + Q - 3) ** 2
        + (Q - 1) * (2 * LAM ** 2 + LAM) * (LAM ** 2 + LAM + Q - 2) ** 2
    )
    assert forms.u_bipartite == RationalFunction(numerator, 2 * forms.z_bipartite)


def test_closed_forms_match_oracle():
    forms = closed_forms()
    for q, lam in ((2, Fraction(1, 2)), (3, Fraction(1, 3)), (4, Fraction(3, 4))):
        point = {"q": q, "lam": lam}
        assert forms.z_bipartite.eval_rational(point) == potts_partition(complete_bipartite(3), q, lam)
        assert forms.u_bipartite.eval_rational(point) == internal_energy(complete_bipartite(3), q, lam)
        assert forms.z_clique.eval_rational(point) == potts_partition(complete(4), q, lam)
        assert forms.u_clique.eval_rational(point) == internal_energy(complete(4), q, lam)


def test_clique_energy_at_infinite_temperature():
    u4 = closed_forms().u_clique
    for q0 in (2, 3, 5):
        assert u4.eval_rational({"q": q0, "lam": Fraction(1)}) == Fraction(3, 2 * q0)


@pytest.mark.parametrize("d,qs", [(4, (2, 3)), (5, (2,))])
def test_general_bipartite_partition_matches_oracle(d, qs):
    z = bipartite_partition_polynomial(d)
    g = complete_bipartite(d)
    for q in qs:
        lam = Fraction(1, 2)
        assert z.eval_rational({"q": q, "lam": lam}) == potts_partition(g, q, lam)
        u = energy_from_partition(z, 2 * d)
        assert u.eval_rational({"q": q, "lam": lam}) == internal_energy(g, q, lam)


def test_bipartite_partition_polynomial_rejects_large_degree():
    with pytest.raises(ValueError):
        bipartite_partition_polynomial(6)


# -- consistency of graph-induced distributions ---------------------------------

def test_graph_energy_is_view_expectation_on_small_corpus():
    for n in (4, 6, 8):
        for g in connected_cubic_graphs(n):
            for q, lam in ((2, Fraction(1, 2)), (3, Fraction(1, 4))):
                dist = local_view_distribution(g, q, lam)
                e_v = sum(p * local_quantities(v).uv_value(q, lam) for v, p in dist.items())
                e_n = sum(p * local_quantities(v).un_value(q, lam) for v, p in dist.items())
                u = internal_energy(g, q, lam)
                assert e_v == u
                assert e_n == u


def test_histogram_balance_on_small_corpus():
    for n in (4, 6):
        for g in connected_cubic_graphs(n):
            for q, lam in ((3, Fraction(1, 2)), (2, Fraction(2, 3))):
                dist = local_view_distribution(g, q, lam)
                for parts in q_partitions(3, max_parts=q):
                    balance = Fraction(0)
                    for v, p in dist.items():
                        gv, gn = local_quantities(v).gamma_value(parts, q, lam)
                        balance += p * (gv - gn)
                    assert balance == 0


def test_view_energies_separate_all_but_one_pair():
    # cross-multiplied comparison of (U^v, U^N) over all pairs: exactly one
    # non-isomorphic pair shares both energy functions.  With no inner
    # edges the weight factorizes per neighbor given the center color, so
    # boundaries {12,12,34} and {12,13,24} both produce 2 A^2 B + 2 A B^2
    # + (q-4) B^3 with A = lam^2+lam+q-2, B = 3lam+q-3.
    quantities = [local_quantities(v) for v in TABLE]
    collisions = []
    for i in range(len(quantities)):
        for j in range(i + 1, len(quantities)):
            a, b = quantities[i], quantities[j]
            same_uv = a.uv_num * b.z == b.uv_num * a.z
            same_un = a.un_num * b.z == b.un_num * a.z
            if same_uv and same_un:
                collisions.append((i, j))
    assert len(collisions) == 1
    i, j = collisions[0]
    pair = {TABLE[i].boundary, TABLE[j].boundary}
    assert pair == {
        ((1, 2), (1, 2), (3, 4)),
        ((1, 2), (1, 3), (2, 4)),
    }
    assert TABLE[i].inner_edges == () and TABLE[j].inner_edges == ()
