from math import gcd

import pytest
from hypothesis import given, strategies as st

from triorbit.angles import make_angle_system
from triorbit.hodge import (
    StratumSignature,
    eigenform_dim,
    eigenspace_dim,
    full_rank_by_pi3,
    genus,
    genus_consistency_scan,
    hyperelliptic_excluded,
    riemann_hurwitz_genus,
    stratum,
)


@pytest.mark.parametrize(
    "q,ell,expected",
    [((1, 2, 4), 1, 1), ((1, 2, 4), 3, 0)],
)
def test_eigenform_dim_examples(q, ell, expected):
    assert eigenform_dim(make_angle_system(q), ell) == expected


@pytest.mark.parametrize(
    "q,ell,expected",
    [((1, 2, 4), 1, 1), ((1, 2, 8), 4, 1)],
)
def test_eigenspace_dim_examples(q, ell, expected):
    assert eigenspace_dim(make_angle_system(q), ell) == expected


def test_eigenspace_dims_vanish_at_zero():
    s = make_angle_system((1, 2, 8))
    assert eigenform_dim(s, 0) == 0
    assert eigenspace_dim(s, 0) == 0
    assert eigenspace_dim(s, 11) == 0


@pytest.mark.parametrize("q,expected", [((1, 2, 4), 3), ((1, 2, 8), 5)])
def test_genus_examples(q, expected):
    s = make_angle_system(q)
    assert genus(s) == expected
    assert riemann_hurwitz_genus(s) == expected


@pytest.mark.parametrize(
    "q,orders,marked",
    [
        ((1, 2, 8), (7, 1), 1),
        ((1, 2, 4), (3, 1), 1),
        ((4, 5, 6), (3, 1, 1, 1), 5),
    ],
)
def test_stratum_examples(q, orders, marked):
    sig = stratum(make_angle_system(q))
    assert sig.zero_orders == orders
    assert sig.marked_points == marked
    assert sum(orders) == 2 * genus(make_angle_system(q)) - 2


def test_stratum_signature_str():
    assert str(StratumSignature((7, 1), 1)) == "H(7, 1) + 1 marked"
    assert str(StratumSignature((2, 2), 0)) == "H(2, 2)"


@pytest.mark.parametrize(
    "q,expected",
    [((1, 2, 8), True), ((1, 1, 2), False), ((1, 1, 10), False)],
)
def test_hyperelliptic_excluded(q, expected):
    assert hyperelliptic_excluded(make_angle_system(q)) is expected


def test_hyperelliptic_needs_odd_k():
    # (1,2,5): k = 8 even, three distinct angles but no exclusion
    assert hyperelliptic_excluded(make_angle_system((1, 2, 5))) is False


def test_full_rank_by_pi3():
    assert full_rank_by_pi3(make_angle_system((1, 1, 1))) is True
    assert full_rank_by_pi3(make_angle_system((1, 2, 4))) is False


def test_genus_consistency_small_scan():
    # spot-check the scan against the per-triple functions
    count = genus_consistency_scan(30)
    expected = 0
    for k in range(3, 31):
        for q1 in range(1, k // 3 + 1):
            for q2 in range(q1, (k - q1) // 2 + 1):
                q3 = k - q1 - q2
                if gcd(gcd(q1, q2), q3) != 1:
                    continue
                expected += 1
                s = make_angle_system((q1, q2, q3))
                sig = stratum(s)
                assert sum(sig.zero_orders) == 2 * genus(s) - 2
    assert count == expected


@given(st.integers(min_value=3, max_value=80), st.data())
def test_genus_matches_riemann_hurwitz(k, data):
    q1 = data.draw(st.integers(1, k // 3))
    q2 = data.draw(st.integers(q1, (k - q1) // 2))
    q3 = k - q1 - q2
    s = make_angle_system((q1, q2, q3), reduce=True)
    # genus() raises GenusMismatchError internally if the formulas disagree
    g = genus(s)
    assert g >= 0
