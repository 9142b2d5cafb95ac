import pytest

from milnortc.cuplength import (
    Certificate,
    cup_exact,
    cup_search,
    default_pool,
    is_zero_divisor,
    verify_certificate,
)
from milnortc.errors import ResourceLimitError
from milnortc.exprs import evaluate_text
from milnortc.f2algebra import make_presentation
from milnortc.spaces import cohomology_of, parse_space


def ring(text):
    return cohomology_of(parse_space(text))


def test_zero_divisor_predicate():
    P = ring("rp:2")
    assert is_zero_divisor(evaluate_text("x1+x2", P, 2))
    assert not is_zero_divisor(evaluate_text("x1", P, 2))
    assert is_zero_divisor(evaluate_text("x1^2*x2", P, 2))


# -- certificate container invariants ----------------------------------------


def test_certificate_rejects_bad_claims():
    with pytest.raises(ValueError, match="claimed cup"):
        Certificate("rp:2", 2, (("(x1+x2)", 3),), 3, 5)
    with pytest.raises(ValueError, match="factor count"):
        Certificate("rp:2", 2, (("(x1+x2)", 2),), 3, 4)
    with pytest.raises(ValueError, match="positive"):
        Certificate("rp:2", 2, (("(x1+x2)", 0),), 0, 1)


def test_verify_projective_plane():
    cert = Certificate("rp:2", 2, (("(x1+x2)", 3),), 3, 4)
    report = verify_certificate(cert)
    assert report.verdict == "Verified"
    assert report.verified_cup == 3
    assert report.verified_tc_lower == 4
    assert report.product_nonzero


def test_verify_rejects_non_zero_divisor():
    cert = Certificate("rp:2", 2, (("x1", 1), ("(x1+x2)", 2)), 3, 4)
    report = verify_certificate(cert)
    assert report.verdict == "FactorNotZeroDivisor"
    assert report.verified_cup is None
    flags = {c.expression: c.is_zero_divisor for c in report.per_factor}
    assert flags == {"x1": False, "(x1+x2)": True}


def test_verify_vanishing_product():
    # Klein-bottle ring: (a1+a2)(b1+b2)^3 reduces to zero
    cert = Certificate("rh:2,1", 2, (("(a1+a2)", 1), ("(b1+b2)", 3)), 4, 5)
    report = verify_certificate(cert)
    assert report.verdict == "ProductVanishes"
    assert all(c.is_zero_divisor for c in report.per_factor)


def test_cat_witness_skips_zero_divisor_requirement():
    cert = Certificate(
        "rp:2", 2, (("x1", 2), ("x2", 2)), 4, 5, cat_witness=True
    )
    report = verify_certificate(cert)
    assert not report.zero_divisors_required
    assert report.verdict == "Verified"
    assert report.verified_cup == 4


def test_verdict_never_consults_claims():
    # same factors, inflated-but-consistent claim: verdict is unchanged
    good = Certificate("rp:2", 2, (("(x1+x2)", 3),), 3, 4)
    assert verify_certificate(good).verified_cup == 3


# -- exact oracle -------------------------------------------------------------


def test_oracle_projective_line():
    P = ring("rp:1")
    for n in range(2, 6):
        assert cup_exact(P, n) == n - 1


def test_oracle_projective_plane():
    P = ring("rp:2")
    assert cup_exact(P, 2) == 3
    # witnessed by (x1+x2)^3(x2+x3)^3 = x1^2 x2^2 x3^2 at n = 3
    assert cup_exact(P, 3) == 6


def test_oracle_witness_at_rp2_n3():
    P = ring("rp:2")
    el = evaluate_text("(x1+x2)^3*(x2+x3)^3", P, 3)
    assert not el.is_zero


def test_oracle_klein_bottle():
    P = ring("rh:2,1")
    assert cup_exact(P, 2) == 3
    assert cup_exact(P, 3) == 6


def test_oracle_generator_modes_agree():
    for space, n in (("rp:2", 2), ("rp:2", 3), ("rh:2,1", 2), ("rh:3,2", 2)):
        P = ring(space)
        assert cup_exact(P, n, generators="ideal") == cup_exact(
            P, n, generators="kernel-basis"
        )


def test_oracle_zero_and_trivial_rings():
    assert cup_exact(ring("rp:0"), 3) == 0
    assert cup_exact(make_presentation(kind="milnor", s=0, r=0, gen_degree=1), 2) == 0


def test_oracle_chain_containment():
    P = ring("rp:2")
    value, chain = cup_exact(P, 2, collect_chain=True)
    assert value == 3
    assert len(chain) == value
    import numpy as np

    from milnortc import gf2
    from milnortc.tensorpower import tensor_slice

    for lvl, nxt in zip(chain, chain[1:]):
        for d, rows in nxt.items():
            assert d in lvl
            ncols = len(tensor_slice(P, 2, d))
            stacked = np.vstack([lvl[d], rows])
            assert gf2.rank(stacked, ncols) == gf2.rank(lvl[d], ncols)


def test_oracle_resource_limit():
    with pytest.raises(ResourceLimitError):
        cup_exact(ring("rp:4"), 3, max_slice=4)


def test_oracle_caches():
    P = ring("rp:3")
    assert cup_exact(P, 2) == cup_exact(P, 2)


# -- search -------------------------------------------------------------------


def test_search_finds_projective_plane_value():
    P = ring("rp:2")
    cert = cup_search(P, 2, default_pool(P, 2), space_label="rp:2")
    assert cert.claimed_cup == 3
    assert verify_certificate(cert).verdict == "Verified"


def test_search_exhaustive_matches_greedy_small():
    P = ring("rp:1")
    pool = default_pool(P, 3, exponents=(1,))
    greedy = cup_search(P, 3, pool, space_label="rp:1")
    exhaustive = cup_search(P, 3, pool, strategy="exhaustive", space_label="rp:1")
    assert greedy.claimed_cup == exhaustive.claimed_cup == 2


def test_search_rejects_non_zero_divisors():
    P = ring("rp:2")
    with pytest.raises(ValueError, match="not a zero divisor"):
        cup_search(P, 2, ["x1"], space_label="rp:2")


def test_search_empty_pool():
    P = ring("rp:2")
    cert = cup_search(P, 2, [], space_label="rp:2")
    assert cert.claimed_cup == 0
    assert cert.factors == ()


def test_search_never_beats_oracle():
    for space, n in (("rp:2", 2), ("rh:2,1", 2), ("rh:3,1", 2)):
        P = ring(space)
        cert = cup_search(P, n, default_pool(P, n), space_label=space)
        assert cert.claimed_cup <= cup_exact(P, n)
