import pytest

from milnortc.bounds import (
    CIRCLE,
    Z2,
    FreeAction,
    admits_free_circle,
    admits_free_involution,
    cat_bounds,
    eqtc_bounds,
    resolve_group,
    tc_bounds,
)
from milnortc.errors import NoFreeActionError
from milnortc.spaces import RealMilnor, RealProj


# -- free-action predicates ---------------------------------------------------


def test_involution_predicate():
    assert admits_free_involution(5, 3) is FreeAction.YES
    assert admits_free_involution(4, 3) is FreeAction.NO
    assert admits_free_involution(6, 3) is FreeAction.OUT_OF_HYPOTHESIS
    assert admits_free_involution(3, 3) is FreeAction.OUT_OF_HYPOTHESIS  # s = r
    assert admits_free_involution(5, 1) is FreeAction.OUT_OF_HYPOTHESIS  # s = 1


def test_circle_predicate():
    assert admits_free_circle(5, 3) is FreeAction.YES
    assert admits_free_circle(4, 3) is FreeAction.NO
    assert admits_free_circle(3, 3) is FreeAction.YES
    with pytest.raises(ValueError):
        admits_free_circle(2, 3)


def test_group_resolution():
    assert resolve_group("z2") is Z2
    assert resolve_group("s1") is CIRCLE
    assert resolve_group(CIRCLE) is CIRCLE
    assert Z2.dim == 0 and CIRCLE.dim == 1
    with pytest.raises(ValueError):
        resolve_group("so3")


# -- category -----------------------------------------------------------------


def test_cat_exact_milnor():
    report = cat_bounds(RealMilnor(4, 3), 2)
    assert (report.lower, report.upper) == (13, 13)
    assert report.verified_lower == 13
    assert not report.inconsistent
    report = cat_bounds("rh:2,1", 1)
    assert (report.lower, report.upper) == (3, 3)


def test_cat_projective_plane():
    report = cat_bounds(RealProj(2), 1)
    assert (report.lower, report.upper) == (3, 3)


def test_cat_n1_upper_is_dim_plus_one():
    for space in ("rh:4,3", "ch:3,2", "rp:5", "cp:2", "prod:rp3,rp2"):
        report = cat_bounds(space, 1)
        from milnortc.spaces import parse_space

        assert report.upper == parse_space(space).dimension + 1


def test_cat_product_space():
    report = cat_bounds("prod:rp3,rp2", 2)
    assert report.verified_lower == 2 * 5 + 1
    assert report.lower == 11
    assert report.upper == 11


def test_cat_trace_statuses():
    report = cat_bounds("rh:4,3", 2)
    statuses = {t.rule: t.status for t in report.trace}
    assert statuses["top-class-witness"] == "machine-verified"
    assert statuses["dimension-upper"] == "claimed"


# -- ordinary TC --------------------------------------------------------------


def test_tc_rh43():
    report = tc_bounds("rh:4,3", 2)
    assert (report.lower, report.upper) == (11, 13)
    assert report.verified_lower == 11
    rules = {t.rule for t in report.trace if t.bound == "lower"}
    assert "certificate-odd-power-blocks" in rules


def test_tc_rp2():
    report = tc_bounds("rp:2", 2)
    assert (report.lower, report.upper) == (4, 5)
    assert report.verified_lower == 4


def test_tc_klein_bottle_oracle_vs_claims():
    report = tc_bounds("rh:2,1", 2, use_oracle=True)
    # the oracle-certified lower is 4; the claimed closed form says 5.
    # both are reported without being merged.
    assert report.verified_lower == 4
    assert report.lower == 5
    assert report.upper == 5
    assert not report.inconsistent
    oracle = [t for t in report.trace if t.rule == "ideal-power-oracle"]
    assert oracle and oracle[0].value == 4 and oracle[0].status == "machine-verified"


def test_tc_product_space():
    report = tc_bounds("prod:rp3,rp2", 2)
    assert report.lower >= 6
    assert report.upper == 11


def test_tc_source_toggles():
    bare = tc_bounds("rh:4,3", 2, use_certs=False, use_monotonicity=False)
    assert bare.verified_lower is None
    assert bare.lower == 1
    no_claims = tc_bounds("rh:4,3", 2, use_monotonicity=False)
    assert no_claims.lower == no_claims.verified_lower == 11


def test_tc_verified_lower_nondecreasing_in_n():
    prev = 0
    for n in (2, 3, 4):
        report = tc_bounds("rh:4,3", n)
        assert report.verified_lower >= prev
        prev = report.verified_lower


def test_tc_free_circle_upper():
    report = tc_bounds("rh:3,3", 2)
    assert report.upper == 2 * 5  # free circle action: n * dim
    assert any(t.rule == "free-circle-upper" for t in report.trace)


def test_tc_requires_n_at_least_two():
    with pytest.raises(ValueError):
        tc_bounds("rp:2", 1)


# -- equivariant TC -----------------------------------------------------------


def test_eqtc_involution_interval():
    for n in (2, 3):
        report = eqtc_bounds(RealMilnor(5, 3), Z2, n)
        assert report.lower == n * 6 - 1
        assert report.upper == n * 7 + 1
        assert report.group == "z2"
        assert not report.inconsistent


def test_eqtc_circle_upper():
    report = eqtc_bounds("rh:5,3", "s1", 2)
    assert report.upper == 2 * 7
    assert report.lower == 11


def test_eqtc_lower_dominates_tc():
    tc = tc_bounds("rh:5,3", 2)
    eq = eqtc_bounds("rh:5,3", Z2, 2)
    assert eq.lower >= tc.lower


def test_eqtc_refusals():
    with pytest.raises(NoFreeActionError, match="circle"):
        eqtc_bounds(RealMilnor(4, 3), CIRCLE, 2)
    with pytest.raises(NoFreeActionError, match="involution"):
        eqtc_bounds(RealMilnor(4, 3), Z2, 2)
    with pytest.raises(NoFreeActionError, match="out-of-hypothesis"):
        eqtc_bounds(RealMilnor(6, 3), Z2, 2)
    with pytest.raises(NoFreeActionError):
        eqtc_bounds(RealProj(3), Z2, 2)
    with pytest.raises(NoFreeActionError):
        eqtc_bounds("ch:5,3", "s1", 2)


def test_eqtc_trace_has_both_statuses():
    report = eqtc_bounds("rh:5,3", Z2, 2)
    statuses = {t.status for t in report.trace}
    assert statuses == {"machine-verified", "claimed"}
