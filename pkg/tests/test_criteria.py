"""Series criteria, transfer inequality, type evidence, window bounds."""

from fractions import Fraction

import pytest

from shrinktarget.bestapprox import best_linear
from shrinktarget.construct import build_theta, minimal_heights
from shrinktarget.criteria import (dyadic_condition_iii, series_lemma22,
                                   series_prop32, series_thm5, transfer_check,
                                   type_evidence, window_bound)
from shrinktarget.errors import (DegenerateInputError, DomainError)
from shrinktarget.exact import CertifiedVector, as_vector, dist_nearest_int
from shrinktarget.roots import pow_enclosure

F = Fraction


def pell_theta(bits=140):
    p, q = 0, 1
    pp, qq = 1, 2
    while qq < 2 ** bits:
        p, pp = pp, p + 2 * pp
        q, qq = qq, q + 2 * qq
    return CertifiedVector((F(pp, qq),))


def const33_state(depth=5):
    a = lambda n: 33
    return build_theta(a, minimal_heights(a, 1, depth + 3), depth)


# --- transfer inequality ----------------------------------------------------

def test_transfer_dimension_two_exact_values():
    theta = as_vector(("2/7", "3/7"))
    rep = transfer_check(theta, 6)
    assert rep.constant == F(1, 6)
    # C h^d = 6, C h^(d-1) = 1, so the right side is eps_s(6) = |3 theta|
    assert rep.rhs.value == F(2, 7)
    assert rep.holds


def test_transfer_dimension_one():
    rep = transfer_check(pell_theta(), 4)
    assert rep.dimension == 1 and rep.constant == F(1, 4)
    assert rep.holds


def test_transfer_small_h_rejected():
    with pytest.raises(DomainError):
        transfer_check(as_vector(("2/7", "3/11", "5/13")), 1)


def test_transfer_holds_on_assorted_exact_vectors():
    fixtures = [
        ("3/8", "5/11"), ("1/97", "13/29"), ("7/19", "2/23"),
        ("114/339", "17/120"),
    ]
    for coords in fixtures:
        theta = as_vector(coords)
        for h in (3, 4, 7, 10):
            assert transfer_check(theta, h).holds, (coords, h)


# --- series of Thm 5 style --------------------------------------------------

def test_series_thm5_construction_terms_bracketed():
    """Terms on the constructed vector sit in the proven per-term bracket:
    t^3 in [3/(32 a), 10/a] with a = 33."""
    state = const33_state()
    rep = series_thm5(state.refined_theta(), state.linear_witnesses(), 5)
    assert len(rep.terms) == 5
    for _n, t in rep.terms:
        assert t.lo ** 3 >= F(3, 32 * 33)
        assert t.hi ** 3 <= F(10, 33)


def test_series_thm5_empty_and_errors():
    theta = as_vector(("2/7",))
    assert series_thm5(theta, [(1,), (3,)], 0).terms == ()
    with pytest.raises(DomainError):
        series_thm5(as_vector(("2/7", "3/11")), [(1, 0), (0, 1)], 1)
    with pytest.raises(DegenerateInputError):
        series_thm5(theta, [(7,), (10,)], 1)


def test_series_thm5_sub_sequence_never_increases_terms():
    """Swapping each vector for the best linear approximation of no greater
    height can only shrink every term (checked on exact squares, d = 1)."""
    theta = pell_theta()
    x_seq = [(3,), (7,), (18,), (44,)]
    records = best_linear(theta, 44)
    swapped = []
    for (x,) in x_seq:
        best = max((r for r in records if r.height <= x),
                   key=lambda r: r.height)
        swapped.append(best.witness)
    base = series_thm5(theta, x_seq, 3)
    sub = series_thm5(theta, swapped, 3)
    x = theta.coords[0]
    for i in range(3):
        # t_i^2 = |X_{i+1}| * ||<X_i, theta>|| exactly in dimension one
        t2_base = abs(x_seq[i + 1][0]) * dist_nearest_int(x_seq[i][0] * x)
        t2_sub = abs(swapped[i + 1][0]) * dist_nearest_int(swapped[i][0] * x)
        assert t2_sub <= t2_base
        # and the reported enclosures bracket those exact squares
        assert base.terms[i][1].lo ** 2 <= t2_base <= base.terms[i][1].hi ** 2
        assert sub.terms[i][1].lo ** 2 <= t2_sub <= sub.terms[i][1].hi ** 2


# --- Lemma 2.2 / 2.3 and the dyadic form ------------------------------------

def test_series_lemma22_terms_match_bruteforce_eps():
    theta = pell_theta()
    x = theta.coords[0]
    rep = series_lemma22(theta, 16, F(1))
    assert len(rep.terms) == 16
    for k, t in rep.terms:
        eps = min(dist_nearest_int(j * x) for j in range(1, k + 1))
        # t = k^-1 (k eps)^(1/2)  =>  t^2 = eps / k exactly
        assert t.lo ** 2 <= F(eps, k) <= t.hi ** 2


def test_series_lemma22_single_term_and_bad_delta():
    theta = pell_theta()
    rep = series_lemma22(theta, 1, F(2))
    assert len(rep.terms) == 1
    with pytest.raises(DomainError):
        series_lemma22(theta, 4, F(1, 2))


def test_dyadic_condition_terms_for_two_sevenths():
    rep = dyadic_condition_iii(as_vector(("2/7",)), 2)
    (n0, t0), (n1, t1) = rep.terms
    assert (n0, n1) == (0, 1)
    assert t0.lo ** 2 <= F(2, 7) <= t0.hi ** 2
    assert t1.lo ** 2 <= F(4, 7) <= t1.hi ** 2


def test_dyadic_and_lemma22_sums_bracket_each_other():
    """The two equivalent conditions control each other with the explicit
    constants 2^(d/(d+1)) and 2^-(1+d/(d+1)) on matched ranges (d = 1)."""
    theta = pell_theta()
    n_blocks = 5
    s_iv = series_lemma22(theta, 2 ** n_blocks - 1, F(1)).partial_sums[-1]
    iii = dyadic_condition_iii(theta, n_blocks + 1)
    s_iii = iii.partial_sums[n_blocks - 1]          # terms 0..n_blocks-1
    s_iii_shifted = iii.partial_sums[-1] - iii.terms[0][1]  # terms 1..n_blocks
    r2_lo, r2_hi = pow_enclosure(F(2), F(2), 1, 2)  # sqrt(2) enclosure
    assert s_iv.lo <= r2_hi * s_iii.hi
    assert s_iv.hi >= s_iii_shifted.lo / (2 * r2_hi)


# --- Prop 3.2 style series ---------------------------------------------------

def test_series_prop32_terms_bracketed_by_height_identity():
    """On the constructed vector, t_n^6 = q_n eps^2 with eps within
    [h_n/(2 q_n), 3 h_n/(2 q_n)], so t_n^6 lands in [h_n^2/(4q_n), 9h_n^2/(4q_n)]."""
    state = const33_state()
    rep = series_prop32(state.refined_theta(), state.denominators, 4)
    for n, t in rep.terms:
        q, h = state.denominators[n], state.heights[n]
        assert t.lo ** 6 >= F(h * h, 4 * q)
        assert t.hi ** 6 <= F(9 * h * h, 4 * q)


def test_series_prop32_single_and_errors():
    theta = pell_theta()
    rep = series_prop32(theta, (1, 2), 1)
    assert len(rep.terms) == 1
    with pytest.raises(DomainError):
        series_prop32(theta, (3, 2), 1)


def test_series_report_shape():
    rep = series_lemma22(pell_theta(), 8, F(1))
    assert len(rep.partial_sums) == len(rep.terms)
    for a, b in zip(rep.partial_sums, rep.partial_sums[1:]):
        assert b.hi >= a.lo  # non-decreasing within certification
    assert "no convergence claim" in rep.verdict


# --- diophantine type evidence ----------------------------------------------

def test_type_evidence_pell_liminf_bounded_below():
    """Bounded partial quotients keep q_n |q_n theta| away from zero."""
    _up, down = type_evidence(pell_theta(), F(0), "simultaneous", 6)
    assert down.kind == "liminf"
    assert len(down.samples) == 6
    for _n, v in down.samples:
        assert v.lo >= F(1, 3)
    assert down.positive_inf


def test_type_evidence_empty_depth():
    up, down = type_evidence(pell_theta(), F(0), "simultaneous", 0)
    assert up.samples == () and down.samples == ()


# --- window bounds ------------------------------------------------------------

def test_window_bound_edges_satisfy_defining_power_identity():
    """L_n^(delta+1) = (|X_n| / eps_{n-1})^delta; checked at delta = 2 by
    cubing the certified enclosure."""
    state = const33_state()
    wb = window_bound(state.refined_theta(), state.linear_witnesses(), F(2), 1)
    x1 = max(abs(c) for c in state.linear_witnesses()[1])
    # eps_0 enclosure from the refined vector
    from shrinktarget.exact import certified_form_dist
    eps0 = certified_form_dist(state.linear_witnesses()[0],
                               state.refined_theta())
    target = (F(x1) / eps0.hi) ** 2, (F(x1) / eps0.lo) ** 2
    assert wb.l_lower.lo ** 3 <= target[1]
    assert wb.l_lower.hi ** 3 >= target[0]
    lo, hi = wb.integer_window()
    assert isinstance(lo, int) and isinstance(hi, int) and lo <= hi


def test_window_bound_zero_eps_rejected():
    with pytest.raises(DegenerateInputError):
        window_bound(as_vector(("2/7", "3/7")), [(2, 1), (3, 1), (4, 1)],
                     F(2), 1)
