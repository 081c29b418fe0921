"""Dual-feasibility certificates for the cubic internal-energy extremes.

Minimization: a single dual multiplier for the energy-balance constraint is
derived so the dual constraint of the all-one-color-boundary view is tight;
the per-view slack, scaled by a fixed positive prefactor and rewritten in
t = 1/lam - 1 and r = q - 3, must be a polynomial with non-negative
coefficients, zero exactly for the two views induced by the complete
bipartite cubic graph.  Maximization: the scaled center-energy deficit
against the 4-clique view, in t and s = q - max(3, q_C), must likewise have
non-negative coefficients, zero exactly for the clique view.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .graphs import Graph, local_view_distribution
from .localstats import closed_forms, local_quantities
from .localview import (
    ViewClassTable,
    bicolor_boundary_view,
    clique_view,
    enumerate_views,
    uniform_boundary_view,
)
from .polynomial import LAM, Polynomial, Q, R, RationalFunction, S, T, poly


class CertificateError(RuntimeError):
    """A certificate-construction identity failed; indicates a bug."""


def _reference_dual_multiplier() -> RationalFunction:
    """Independent closed form of the dual energy multiplier, kept solely as
    a cross-check against the constructive derivation."""
    z33 = closed_forms().z_bipartite
    bracket = (
        2 * (LAM ** 4 + 9 * LAM ** 3 + 22 * LAM ** 2 + 27 * LAM + 13) * (LAM - 1) ** 6
        + 2 * (LAM ** 2 + 2 * LAM - 1) * Q ** 5
        + (LAM ** 5 + 3 * LAM ** 4 + 20 * LAM ** 3 - 41 * LAM + 17) * Q ** 4
        + (8 * LAM ** 4 + 31 * LAM ** 3 + 91 * LAM ** 2 + 47 * LAM - 57) * (LAM - 1) ** 2 * Q ** 3
        + (25 * LAM ** 4 + 82 * LAM ** 3 + 146 * LAM ** 2 + 22 * LAM - 95) * (LAM - 1) ** 3 * Q ** 2
        + (2 * LAM ** 5 + 36 * LAM ** 4 + 87 * LAM ** 3 + 93 * LAM ** 2 - 31 * LAM - 79) * (LAM - 1) ** 4 * Q
    )
    num = -3 * Q * (1 - LAM) ** 2 * bracket
    den = 2 * (LAM ** 2 + LAM + Q - 2) ** 2 * z33
    return RationalFunction(num, den)


@lru_cache(maxsize=None)
def dual_energy_multiplier() -> RationalFunction:
    """The dual variable of the energy-balance row, as a rational function
    of (lam, q).

    Derived constructively: the dual constraint of the uniform-boundary
    view holds with equality when the bound variable is set to the complete
    bipartite graph's energy.  The result is verified against an
    independently transcribed closed form; a mismatch raises.
    """
    forms = closed_forms()
    z33 = forms.z_bipartite
    n33 = LAM * z33.derivative("lam")  # U = n33 / (6 z33)
    lq1 = local_quantities(uniform_boundary_view())
    a1, b1, z1 = lq1.uv_num, lq1.un_num, lq1.z
    # (U^v - U) / (U^v - U^N) with the common factor 2 z1 cancelled by construction
    num = 3 * a1 * z33 - z1 * n33
    den = z33 * (3 * a1 - b1)
    delta = RationalFunction(num, den)
    if delta != _reference_dual_multiplier():
        raise CertificateError(
            "delta-star mismatch with the reference closed form; "
            "certificate construction or transcription bug"
        )
    return delta


def dual_slack(view) -> RationalFunction:
    """U^v_C + delta (U^N_C - U^v_C) - U_bipartite, exactly, in (lam, q)."""
    forms = closed_forms()
    lq = local_quantities(view)
    delta = dual_energy_multiplier()
    uv = lq.uv()
    un_minus_uv = RationalFunction(lq.un_num - 3 * lq.uv_num, 6 * lq.z)
    return uv - forms.u_bipartite + delta * un_minus_uv


_SUB_TR = {"lam": RationalFunction(poly(1), 1 + T), "q": R + 3}


@lru_cache(maxsize=None)
def scaled_slack_min(view) -> Polynomial:
    """The scaled minimization slack as a polynomial in (r, t).

    Scaling: 4 (1+t)^17 (r(1+t)^2 + t^2 + 3t + 3)^2 / ((3+r) t^2) times
    Z_bipartite Z_C times the slack; the division must be exact.
    """
    if view.d != 3:
        raise ValueError("minimization certificate is specific to degree 3")
    forms = closed_forms()
    z33 = forms.z_bipartite
    n33 = LAM * z33.derivative("lam")
    delta = dual_energy_multiplier()
    lq = local_quantities(view)
    # z33 z_C slack = [ (3 a_C z33 - z_C n33) delta_den + delta_num z33 (b_C - 3 a_C) ] / (6 delta_den)
    combined = (3 * lq.uv_num * z33 - lq.z * n33) * delta.den \
        + delta.num * z33 * (lq.un_num - 3 * lq.uv_num)
    w = RationalFunction(combined, 6 * delta.den)
    w_tr = w.substitute(_SUB_TR)
    pref = RationalFunction(
        4 * (1 + T) ** 17 * (R * (1 + T) ** 2 + T ** 2 + 3 * T + 3) ** 2,
        (3 + R) * T ** 2,
    )
    result = pref * w_tr
    return result.num.divide_exact(result.den)


@lru_cache(maxsize=None)
def scaled_diff_max(view) -> Polynomial:
    """The scaled maximization difference as a polynomial in (s, t).

    2 (1+t)^14 Z_clique Z_C t^-2 (U^v_clique - U^v_C) with q = s + max(3, q_C);
    the division must be exact.
    """
    if view.d != 3:
        raise ValueError("maximization certificate is specific to degree 3")
    lq4 = local_quantities(clique_view(3))
    lq = local_quantities(view)
    shift = max(3, view.q_c)
    # Z4 Z_C (Uv4 - UvC) = (a4 z_C - a_C z4) / 2
    num = lq4.uv_num * lq.z - lq.uv_num * lq4.z
    num_tr = num.substitute({"lam": RationalFunction(poly(1), 1 + T), "q": S + shift})
    result = RationalFunction((1 + T) ** 14, T ** 2) * num_tr
    return result.num.divide_exact(result.den)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertEntry:
    """Verdict data for one view's certificate polynomial."""

    ordinal: int
    polynomial: Polynomial
    is_zero: bool
    all_nonneg: bool
    negative_witness: str | None
    positive_probe: Fraction  # value at the unit point; strictness witness


@dataclass(frozen=True)
class CertificateReport:
    kind: str  # "min" or "max"
    entries: tuple[CertEntry, ...]
    q2_entries: tuple[CertEntry, ...]
    expected_zeros: tuple[int, ...]
    multiplier_identity_verified: bool

    @property
    def zero_ordinals(self) -> tuple[int, ...]:
        return tuple(e.ordinal for e in self.entries if e.is_zero)

    def failures(self) -> list[str]:
        problems = []
        if not self.multiplier_identity_verified:
            problems.append("dual multiplier does not match its reference closed form")
        if self.zero_ordinals != self.expected_zeros:
            problems.append(
                f"zero set {self.zero_ordinals} differs from expected {self.expected_zeros}"
            )
        for scope, entries in (("", self.entries), ("q=2 ", self.q2_entries)):
            for e in entries:
                if not e.all_nonneg:
                    problems.append(
                        f"{scope}view {e.ordinal}: negative coefficient {e.negative_witness}"
                    )
                if not e.is_zero and e.positive_probe <= 0:
                    problems.append(f"{scope}view {e.ordinal}: no strictness witness")
        q2_zeros = tuple(e.ordinal for e in self.q2_entries if e.is_zero)
        if q2_zeros != self.expected_zeros and self.q2_entries:
            problems.append(
                f"q=2 zero set {q2_zeros} differs from expected {self.expected_zeros}"
            )
        return problems

    @property
    def passed(self) -> bool:
        return not self.failures()


def _assess(ordinal: int, p: Polynomial, probe_point: dict) -> CertEntry:
    check = p.coeffs_nonneg()
    witness = None
    if check.witness is not None:
        exp, coeff = check.witness
        witness = Polynomial({exp: coeff}).to_text()
    return CertEntry(
        ordinal=ordinal,
        polynomial=p,
        is_zero=check.is_zero,
        all_nonneg=check.all_nonneg,
        negative_witness=witness,
        positive_probe=p.eval_rational(probe_point),
    )


def assess_min_polynomials(
    polys: Sequence[Polynomial],
    table: ViewClassTable,
    multiplier_ok: bool = True,
) -> CertificateReport:
    """Aggregate minimization verdicts from per-view scaled slacks."""
    expected = tuple(sorted((
        table.ordinal(uniform_boundary_view()),
        table.ordinal(bicolor_boundary_view()),
    )))
    entries = tuple(
        _assess(i, p, {"r": Fraction(0), "t": Fraction(1)}) for i, p in enumerate(polys)
    )
    q2 = []
    for i, p in enumerate(polys):
        if table[i].q_c <= 2:
            at_r = p.substitute({"r": Fraction(-1)})
            q2.append(_assess(i, at_r.num.divide_exact(at_r.den), {"t": Fraction(1)}))
    return CertificateReport(
        kind="min",
        entries=entries,
        q2_entries=tuple(q2),
        expected_zeros=expected,
        multiplier_identity_verified=multiplier_ok,
    )


def assess_max_polynomials(
    polys: Sequence[Polynomial],
    table: ViewClassTable,
) -> CertificateReport:
    """Aggregate maximization verdicts from per-view scaled differences."""
    expected = (table.ordinal(clique_view(3)),)
    entries = tuple(
        _assess(i, p, {"s": Fraction(0), "t": Fraction(1)}) for i, p in enumerate(polys)
    )
    q2 = []
    for i, p in enumerate(polys):
        if table[i].q_c <= 2:
            at_s = p.substitute({"s": Fraction(-1)})
            q2.append(_assess(i, at_s.num.divide_exact(at_s.den), {"t": Fraction(1)}))
    return CertificateReport(
        kind="max",
        entries=entries,
        q2_entries=tuple(q2),
        expected_zeros=expected,
        multiplier_identity_verified=True,
    )


def verify_min_certificate(table: ViewClassTable | None = None) -> CertificateReport:
    """Run the full minimization certificate over every degree-3 view."""
    table = table or enumerate_views(3)
    try:
        dual_energy_multiplier()
        multiplier_ok = True
    except CertificateError:
        multiplier_ok = False
    polys = [scaled_slack_min(v) for v in table]
    return assess_min_polynomials(polys, table, multiplier_ok=multiplier_ok)


def verify_max_certificate(table: ViewClassTable | None = None) -> CertificateReport:
    """Run the full maximization certificate over every degree-3 view."""
    table = table or enumerate_views(3)
    polys = [scaled_diff_max(v) for v in table]
    return assess_max_polynomials(polys, table)


def uniqueness_argument_check(g: Graph, q: int, lam: Fraction) -> bool:
    """True iff the graph's local-view support lies inside the two views
    achievable by the complete bipartite cubic graph."""
    dist = local_view_distribution(g, q, lam)
    allowed = {uniform_boundary_view(), bicolor_boundary_view()}
    return set(dist).issubset(allowed)
