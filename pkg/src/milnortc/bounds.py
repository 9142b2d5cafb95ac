"""Bound assembly: free-action predicates and cat / TC / equivariant-TC
interval reports with per-rule provenance.

Every trace entry is tagged ``machine-verified`` (backed by a verified
certificate or the exact oracle) or ``claimed`` (a closed-form bound taken
from the literature).  The two are never merged: a report carries both the
overall lower bound and the best machine-verified one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .certgen import cert_case1, cert_case2, cert_cat_topclass, cert_proj, cert_r2t
from .cuplength import Certificate, SearchFailure, cup_exact, verify_certificate
from .errors import NoFreeActionError, ResourceLimitError
from .spaces import (
    ComplexMilnor,
    ComplexProj,
    ProductSpace,
    RealMilnor,
    RealProj,
    cohomology_of,
    format_space,
    parse_space,
)
from .tensorpower import DEFAULT_MAX_SLICE


class FreeAction(enum.Enum):
    YES = "yes"
    NO = "no"
    OUT_OF_HYPOTHESIS = "out-of-hypothesis"


@dataclass(frozen=True)
class Group:
    name: str
    dim: int


Z2 = Group("z2", 0)
CIRCLE = Group("s1", 1)

_GROUPS = {"z2": Z2, "s1": CIRCLE}


def resolve_group(group) -> Group:
    if isinstance(group, Group):
        return group
    try:
        return _GROUPS[str(group).lower()]
    except KeyError:
        raise ValueError(f"unknown group {group!r}; expected z2 or s1") from None


@dataclass(frozen=True)
class RuleTrace:
    rule: str
    source: str
    bound: str  # "lower" | "upper"
    value: int
    status: str  # "machine-verified" | "claimed"


@dataclass(frozen=True)
class BoundReport:
    space: str
    quantity: str  # "cat" | "tc" | "eqtc"
    n: int
    lower: int
    upper: int
    group: str | None = None
    verified_lower: int | None = None
    trace: tuple = field(default_factory=tuple)
    inconsistent: bool = False


def _as_space(space):
    return parse_space(space) if isinstance(space, str) else space


def _largest_power_of_two_at_most(x: int):
    if x < 1:
        return None
    return x.bit_length() - 1


# --- free-action predicates --------------------------------------------------


def admits_free_involution(r: int, s: int) -> FreeAction:
    """Free involution characterization: within 1 < s < r and
    r != 2 (mod 4), a free involution exists iff r and s are both odd."""
    if not (1 < s < r) or r % 4 == 2:
        return FreeAction.OUT_OF_HYPOTHESIS
    return FreeAction.YES if (r % 2 == 1 and s % 2 == 1) else FreeAction.NO


def admits_free_circle(r: int, s: int) -> FreeAction:
    """Free circle action on the real Milnor manifold iff r and s are odd."""
    if not 1 <= s <= r:
        raise ValueError(f"requires 1 <= s <= r, got r={r}, s={s}")
    return FreeAction.YES if (r % 2 == 1 and s % 2 == 1) else FreeAction.NO


# --- category ----------------------------------------------------------------


def _gen_expr(name: str, pos: int) -> str:
    if "." in name:
        base, factor = name.split(".")
        return f"{base}.{factor}.{pos}"
    return f"{name}{pos}"


def _top_class_certificate(space, n: int) -> Certificate | None:
    """Product of top-monomial generator powers in every slot; witnesses the
    cup-length of the ring of the n-fold power."""
    if isinstance(space, (RealMilnor, ComplexMilnor)):
        return cert_cat_topclass(space, n)
    P = cohomology_of(space)
    if not P.basis:
        return None
    top_ranks = P.degree_slices[P.top_degree]
    top = P.basis[top_ranks[0]]
    factors = []
    for i in range(1, n + 1):
        for name, e in zip(P.gen_names, top):
            if e > 0:
                factors.append((_gen_expr(name, i), e))
    claimed = n * sum(top)
    if claimed == 0:
        return None
    return Certificate(
        format_space(space), n, tuple(factors), claimed, claimed + 1, cat_witness=True
    )


def cat_bounds(space, n: int, *, max_slice: int = DEFAULT_MAX_SLICE) -> BoundReport:
    """Category of the n-fold power: top-class witness below, dimension above."""
    space = _as_space(space)
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = space.dimension
    trace = [
        RuleTrace(
            "dimension-upper",
            "dimension of the n-fold power plus one",
            "upper",
            n * dim + 1,
            "claimed",
        )
    ]
    lower = 1
    verified_lower = None
    cert = _top_class_certificate(space, n)
    if cert is not None:
        report = verify_certificate(cert)
        if report.verdict == "Verified":
            lower = report.verified_cup + 1
            verified_lower = lower
            trace.append(
                RuleTrace(
                    "top-class-witness",
                    "verified nonzero product of generator top powers",
                    "lower",
                    lower,
                    "machine-verified",
                )
            )
    upper = n * dim + 1
    return BoundReport(
        space=format_space(space),
        quantity="cat",
        n=n,
        lower=lower,
        upper=upper,
        verified_lower=verified_lower,
        trace=tuple(trace),
        inconsistent=lower > upper,
    )


# --- higher topological complexity -------------------------------------------


def _applicable_certificates(space, n: int):
    """Generators whose hypotheses the space satisfies, as (rule, builder)."""
    out = []
    if isinstance(space, (RealMilnor, ComplexMilnor)):
        r, s = space.r, space.s
        if s >= 2 and (s - 1) & (s - 2) == 0 and r >= 1 and r & (r - 1) == 0:
            t1 = (s - 1).bit_length() - 1
            t2 = r.bit_length() - 1
            out.append(("certificate-odd-power-blocks", lambda: cert_case1(t1, t2, n)))
        if s >= 1 and s & (s - 1) == 0 and r >= 2 and (r - 1) & (r - 2) == 0:
            p1 = s.bit_length() - 1
            p2 = (r - 1).bit_length() - 1
            out.append(("certificate-searched-bridges", lambda: cert_case2(p1, p2, n)))
        if r >= 1 and r & (r - 1) == 0 and s >= 1:
            t = r.bit_length() - 1
            out.append(("certificate-power-of-two-r", lambda: cert_r2t(s, t, n)))
    elif isinstance(space, RealProj):
        m = space.m
        if m >= 1 and m & (m - 1) == 0:
            t = m.bit_length() - 1
            out.append(("certificate-projective", lambda: cert_proj(t, n)))
    return out


def _monotonicity_rules(space, n: int):
    """Closed-form lower bounds via containment of smaller rings; claimed."""
    rules = []
    if isinstance(space, (RealMilnor, ComplexMilnor)):
        r, s = space.r, space.s
        best = None
        for u, v in ((s, r), (r, s)):
            # u >= 2^t1 + 1 and v >= 2^t2
            t1 = _largest_power_of_two_at_most(u - 1)
            t2 = _largest_power_of_two_at_most(v)
            if t1 is not None and t1 >= 1 and t2 is not None and t2 >= 1:
                val = n * (2**t1 + 2**t2) - 1
                if best is None or val > best:
                    best = val
        if best is not None:
            rules.append(
                (
                    "power-of-two-pair-monotonicity",
                    "zero-divisor length of the largest embedded power-of-two ring",
                    best,
                )
            )
        t = _largest_power_of_two_at_most(r)
        if t is not None and t >= 1:
            rules.append(
                (
                    "power-of-two-r-monotonicity",
                    "zero-divisor length of the embedded ring with r a power of two",
                    n * (2**t + s - 1) - s + 2,
                )
            )
    elif isinstance(space, RealProj):
        t = _largest_power_of_two_at_most(space.m)
        if t is not None:
            rules.append(
                (
                    "projective-monotonicity",
                    "zero-divisor length of the embedded power-of-two projective ring",
                    n * 2**t,
                )
            )
    return rules


def tc_bounds(
    space,
    n: int,
    *,
    use_oracle: bool = False,
    use_certs: bool = True,
    use_monotonicity: bool = True,
    max_slice: int = DEFAULT_MAX_SLICE,
) -> BoundReport:
    """Interval for the n-th topological complexity.

    Lower bound sources (max over the enabled ones): verified generated
    certificates, the exact ideal-power oracle, the verified category of the
    (n-1)-st power, and the claimed closed-form monotonicity rules.  Upper
    bound sources (min): dimension, category of the n-th power, and the free
    circle action improvement.  A failing source never blocks the others.
    """
    space = _as_space(space)
    if n < 2:
        raise ValueError("n must be >= 2")
    P = cohomology_of(space)
    dim = space.dimension
    trace = []
    lowers = [(1, None)]
    verified = []

    if use_certs:
        for rule, builder in _applicable_certificates(space, n):
            try:
                cert = builder()
            except ValueError:
                continue
            if isinstance(cert, SearchFailure):
                continue
            report = verify_certificate(cert)
            if report.verdict == "Verified":
                val = report.verified_cup + 1
                trace.append(
                    RuleTrace(
                        rule,
                        "verified zero-divisor certificate",
                        "lower",
                        val,
                        "machine-verified",
                    )
                )
                lowers.append((val, rule))
                verified.append(val)
        cat_prev = _top_class_certificate(space, n - 1)
        if cat_prev is not None:
            report = verify_certificate(cat_prev)
            if report.verdict == "Verified":
                val = report.verified_cup + 1
                trace.append(
                    RuleTrace(
                        "category-of-lower-power",
                        "verified category of the (n-1)-st power",
                        "lower",
                        val,
                        "machine-verified",
                    )
                )
                lowers.append((val, "cat"))
                verified.append(val)

    if use_oracle:
        try:
            cup = cup_exact(P, n, max_slice=max_slice)
            val = cup + 1
            trace.append(
                RuleTrace(
                    "ideal-power-oracle",
                    "exact mod-2 zero-divisor cup-length plus one",
                    "lower",
                    val,
                    "machine-verified",
                )
            )
            lowers.append((val, "oracle"))
            verified.append(val)
        except ResourceLimitError:
            pass

    if use_monotonicity:
        for rule, source, val in _monotonicity_rules(space, n):
            trace.append(RuleTrace(rule, source, "lower", val, "claimed"))
            lowers.append((val, rule))

    uppers = [
        (
            n * dim + 1,
            RuleTrace(
                "dimension-upper",
                "dimension of the n-fold power plus one",
                "upper",
                n * dim + 1,
                "claimed",
            ),
        ),
        (
            cat_bounds(space, n, max_slice=max_slice).upper,
            RuleTrace(
                "category-of-power-upper",
                "category of the n-th power dominates",
                "upper",
                n * dim + 1,
                "claimed",
            ),
        ),
    ]
    if isinstance(space, RealMilnor) and space.s >= 1:
        if admits_free_circle(space.r, space.s) is FreeAction.YES:
            uppers.append(
                (
                    n * dim,
                    RuleTrace(
                        "free-circle-upper",
                        "free circle action improves the dimension bound",
                        "upper",
                        n * dim,
                        "claimed",
                    ),
                )
            )
    for _, entry in uppers:
        trace.append(entry)

    lower = max(v for v, _ in lowers)
    upper = min(v for v, _ in uppers)
    return BoundReport(
        space=format_space(space),
        quantity="tc",
        n=n,
        lower=lower,
        upper=upper,
        verified_lower=max(verified) if verified else None,
        trace=tuple(trace),
        inconsistent=lower > upper,
    )


# --- equivariant -------------------------------------------------------------


def eqtc_bounds(
    space,
    group,
    n: int,
    *,
    use_oracle: bool = False,
    use_certs: bool = True,
    use_monotonicity: bool = True,
    max_slice: int = DEFAULT_MAX_SLICE,
) -> BoundReport:
    """Interval for the n-th equivariant topological complexity of a free
    action: ordinary TC from below, orbit-space dimension from above."""
    space = _as_space(space)
    group = resolve_group(group)
    if n < 2:
        raise ValueError("n must be >= 2")
    if group is Z2:
        if not isinstance(space, (RealMilnor, ComplexMilnor)):
            raise NoFreeActionError(
                "free involutions are characterized for Milnor manifolds only"
            )
        status = admits_free_involution(space.r, space.s)
        if status is not FreeAction.YES:
            raise NoFreeActionError(
                f"no free involution available for {format_space(space)}: "
                f"predicate returned {status.value} "
                "(requires 1 < s < r, r != 2 mod 4, and r, s both odd)"
            )
    elif group is CIRCLE:
        if not isinstance(space, RealMilnor):
            raise NoFreeActionError(
                "free circle actions are characterized for real Milnor manifolds only"
            )
        if admits_free_circle(space.r, space.s) is not FreeAction.YES:
            raise NoFreeActionError(
                f"no free circle action on {format_space(space)}: "
                "requires r and s both odd"
            )
    else:
        raise ValueError(f"unsupported group {group!r}")

    tc = tc_bounds(
        space,
        n,
        use_oracle=use_oracle,
        use_certs=use_certs,
        use_monotonicity=use_monotonicity,
        max_slice=max_slice,
    )
    dim = space.dimension
    upper = n * dim - group.dim + 1
    trace = list(tc.trace) + [
        RuleTrace(
            "equivariant-dominates-ordinary",
            "ordinary complexity is a lower bound for the equivariant one",
            "lower",
            tc.lower,
            "claimed",
        ),
        RuleTrace(
            "free-action-orbit-dimension",
            "orbit-space dimension bound for a free action",
            "upper",
            upper,
            "claimed",
        ),
    ]
    return BoundReport(
        space=format_space(space),
        quantity="eqtc",
        n=n,
        group=group.name,
        lower=tc.lower,
        upper=upper,
        verified_lower=tc.verified_lower,
        trace=tuple(trace),
        inconsistent=tc.lower > upper,
    )
