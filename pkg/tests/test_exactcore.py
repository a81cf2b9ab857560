"""Exact rationals, lattice points, certified scalars."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from shrinktarget.errors import DomainError, PrecisionError
from shrinktarget.exact import (CertifiedScalar, CertifiedVector,
                                LatticePoint3, Verdict, as_vector,
                                certified_dist_nearest_lattice,
                                certified_form_dist, dist_nearest_int,
                                dist_nearest_lattice, is_primitive,
                                nearest_int, projective_distance, rational,
                                wedge)

F = Fraction


def test_rational_parses_fraction_and_decimal_strings():
    assert rational("3/7") == F(3, 7)
    assert rational("0.125") == F(1, 8)
    assert rational("-2.5") == F(-5, 2)
    assert rational(4) == F(4)
    assert rational(F(9, 12)) == F(3, 4)  # canonicalized


def test_rational_rejects_garbage_and_floats():
    with pytest.raises(DomainError):
        rational("abc")
    with pytest.raises(DomainError):
        rational(0.1)  # floats are never accepted silently


# --- nearest-integer distances -------------------------------------------

def test_dist_nearest_int_values():
    assert dist_nearest_int(F(7, 3)) == F(1, 3)
    assert dist_nearest_int(F(1, 2)) == F(1, 2)
    assert dist_nearest_int(F(-5, 4)) == F(1, 4)
    assert dist_nearest_int(F(0)) == 0


def test_nearest_int_tie_reports_smaller_integer():
    # x = 1/2: both 0 and 1 are at distance 1/2; the witness is deterministic
    assert nearest_int(F(1, 2)) == 0
    assert nearest_int(F(3, 2)) == 1


@given(st.fractions(), st.integers(min_value=-50, max_value=50))
def test_dist_nearest_int_periodic_and_even(x, k):
    d = dist_nearest_int(x)
    assert 0 <= d <= F(1, 2)
    assert dist_nearest_int(x + k) == d
    assert dist_nearest_int(-x) == d


def test_dist_nearest_lattice():
    assert dist_nearest_lattice((F(7, 3), F(1, 4))) == F(1, 3)
    assert dist_nearest_lattice((0, 0, 0)) == 0
    assert dist_nearest_lattice((F(1, 2), F(1, 5))) == F(1, 2)
    with pytest.raises(DomainError):
        dist_nearest_lattice(())


# --- lattice points and the wedge ----------------------------------------

def test_wedge_basis_identity():
    e1, e2 = LatticePoint3(1, 0, 0), LatticePoint3(0, 1, 0)
    assert wedge(e1, e2).as_tuple() == (0, 0, 1)


def test_wedge_self_vanishes():
    p = LatticePoint3(1, 1, 33)
    assert wedge(p, p).is_zero


def test_wedge_hand_example():
    # (1,1,33) x (0,0,1) = (1*1-33*0, 33*0-1*1, 1*0-1*0)
    assert wedge(LatticePoint3(1, 1, 33), LatticePoint3(0, 0, 1)).as_tuple() \
        == (1, -1, 0)


coord = st.integers(min_value=-10**6, max_value=10**6)
points = st.builds(LatticePoint3, coord, coord, coord)
nonzero_points = points.filter(lambda p: not p.is_zero)


@given(points, points)
def test_wedge_norm_bound(p, q):
    """Sup-norm of a cross product is at most 2 |P| |Q|."""
    assert wedge(p, q).norm <= 2 * p.norm * q.norm


@given(points, points)
def test_wedge_antisymmetric_and_orthogonal(p, q):
    w = wedge(p, q)
    assert wedge(q, p).as_tuple() == w.scale(-1).as_tuple()
    assert w.dot(p) == 0 and w.dot(q) == 0


def test_is_primitive():
    assert not is_primitive(LatticePoint3(2, 4, 6))
    assert is_primitive(LatticePoint3(1, -1, 0))
    with pytest.raises(DomainError):
        is_primitive(LatticePoint3(0, 0, 0))


# --- projective distance ---------------------------------------------------

def test_projective_distance_examples():
    p = LatticePoint3(1, 1, 33)
    assert projective_distance(p, p) == 0
    assert projective_distance(LatticePoint3(1, 0, 0),
                               LatticePoint3(0, 1, 0)) == 1
    # |(0,0,1) x (1,1,33)| = |(-1,1,0)| = 1, norms 1 and 33
    assert projective_distance(LatticePoint3(0, 0, 1), p) == F(1, 33)
    with pytest.raises(DomainError):
        projective_distance(LatticePoint3(0, 0, 0), p)


@given(nonzero_points, nonzero_points)
def test_projective_distance_symmetric(p, q):
    assert projective_distance(p, q) == projective_distance(q, p)


@given(nonzero_points, nonzero_points, nonzero_points)
def test_projective_quasi_triangle(p, q, r):
    """d(P,R) <= d(P,Q) + 2 d(Q,R)."""
    assert projective_distance(p, r) <= \
        projective_distance(p, q) + 2 * projective_distance(q, r)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20),
       st.integers(-20, 20))
def test_projective_matches_affine_distance_when_z_dominates(x, y, x2, y2):
    """With |z| >= 2 max(|x|,|y|) on both points, the projective metric is
    the sup distance of the affine points (x/z, y/z)."""
    z = 2 * max(abs(x), abs(y)) + 1
    z2 = 2 * max(abs(x2), abs(y2)) + 1
    p, q = LatticePoint3(x, y, z), LatticePoint3(x2, y2, z2)
    affine = max(abs(F(x, z) - F(x2, z2)), abs(F(y, z) - F(y2, z2)))
    assert projective_distance(p, q) == affine


# --- certified layer --------------------------------------------------------

def test_certified_dist_nearest_lattice_exact_input():
    theta = CertifiedVector((F(2, 7),))
    got = certified_dist_nearest_lattice(1, theta)
    assert got.value == F(2, 7) and got.radius == 0 and got.is_exact


def test_certified_dist_nearest_lattice_radius_scales():
    theta = CertifiedVector((F(2, 7),), F(1, 1000))
    got = certified_dist_nearest_lattice(3, theta)
    assert got.value == F(1, 7)
    assert got.radius == F(3, 1000)


def test_certified_dist_nearest_lattice_rejects_zero_multiplier():
    with pytest.raises(DomainError):
        certified_dist_nearest_lattice(0, CertifiedVector((F(2, 7),)))


def test_certified_form_dist():
    theta = CertifiedVector((F(2, 7), F(3, 7)))
    assert certified_form_dist((1, -1), theta).value == F(1, 7)


def test_compare_three_valued():
    a = CertifiedScalar(F(1, 3), F(1, 4))
    b = CertifiedScalar(F(1, 2), F(1, 4))
    assert a.compare(b) is Verdict.INCONCLUSIVE
    assert CertifiedScalar(F(1, 3)).compare(CertifiedScalar(F(2, 3))) is Verdict.LESS
    with pytest.raises(PrecisionError):
        a.require_compare(b)


def test_certified_scalar_interval_arithmetic():
    a = CertifiedScalar(F(1, 2), F(1, 10))
    b = CertifiedScalar(F(3), F(1, 5))
    s = a + b
    assert (s.lo, s.hi) == (F(1, 2) + 3 - F(3, 10), F(1, 2) + 3 + F(3, 10))
    prod = a * b
    candidates = [lo * ro for lo in (a.lo, a.hi) for ro in (b.lo, b.hi)]
    assert prod.lo == min(candidates) and prod.hi == max(candidates)


def test_certified_scalar_constructors_validate():
    with pytest.raises(DomainError):
        CertifiedScalar(F(1), F(-1))
    c = CertifiedScalar.from_bounds(F(1, 3), F(1, 2))
    assert c.lo == F(1, 3) and c.hi == F(1, 2)
    assert CertifiedScalar.exact(F(5, 9)).is_exact


def test_certified_vector_validation():
    with pytest.raises(DomainError):
        CertifiedVector(())
    with pytest.raises(DomainError):
        CertifiedVector((F(1, 2),), -1)
    v = as_vector(("2/7", "3/11"))
    assert v.dim == 2 and v.coords == (F(2, 7), F(3, 11))
    nums, den = v.common_denominator()
    assert [F(n, den) for n in nums] == list(v.coords)
