"""Programmatic generators for the explicit hand-built certificates.

Each construction emits a :class:`Certificate` whose total factor count
matches the corresponding closed-form cup value; nonzeroness is never
asserted here -- verification is a separate step in :mod:`cuplength`.
Generation is deterministic: identical parameters give identical output.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .cuplength import Certificate, SearchFailure, verify_certificate
from .spaces import ComplexMilnor, RealMilnor, format_space, parse_space


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


def _pair(name: str, i: int, j: int) -> str:
    return f"({name}{i}+{name}{j})"


def cert_case1(t1: int, t2: int, n: int) -> Certificate:
    """Certificate for s = 2^t1 + 1, r = 2^t2 on the real Milnor manifold.

    Even n = 2k: adjacent sums of a to the (2(s-1)-1)-st power and of b to
    the (2r-1)-st power in each even block, plus squared odd-position a sums
    bridging blocks; odd n adds an (a-sum)^s (b-sum)^(r-1) tail.
    """
    if t1 < 0 or t2 < 0:
        raise ValueError("t1 and t2 must be non-negative")
    if n < 2:
        raise ValueError("arity must be >= 2")
    s = 2**t1 + 1
    r = 2**t2
    if s > r:
        raise ValueError(f"hypothesis violated: s = {s} > r = {r}")
    k = n // 2
    factors = []
    for i in range(1, k + 1):
        factors.append((_pair("a", 2 * i - 1, 2 * i), 2 * (s - 1) - 1))
        factors.append((_pair("b", 2 * i - 1, 2 * i), 2 * r - 1))
    for i in range(1, k):
        factors.append((_pair("a", 2 * i - 1, 2 * i + 1), 2))
    if n % 2 == 1:
        factors.append((_pair("a", 2 * k, 2 * k + 1), s))
        if r - 1 > 0:
            factors.append((_pair("b", 2 * k, 2 * k + 1), r - 1))
    claimed = n * (s + r - 1) - 2
    return Certificate(format_space(RealMilnor(r, s)), n, tuple(factors), claimed, claimed + 1)


def cert_case2(p1: int, p2: int, n: int):
    """Certificate for s = 2^p1, r = 2^p2 + 1; the k-1 squared bridging
    classes are not written down in closed form, so they are searched for
    over adjacent even-position sums (widened to all position pairs on
    failure).  Returns a verified Certificate or a SearchFailure."""
    if p1 < 0 or p2 < 0:
        raise ValueError("p1 and p2 must be non-negative")
    if n < 2:
        raise ValueError("arity must be >= 2")
    s = 2**p1
    r = 2**p2 + 1
    if s > r:
        raise ValueError(f"hypothesis violated: s = {s} > r = {r}")
    k = n // 2
    base = []
    for i in range(1, k + 1):
        base.append((_pair("a", 2 * i - 1, 2 * i), 2 * s - 1))
        base.append((_pair("b", 2 * i - 1, 2 * i), 2 * (r - 1) - 1))
    if n % 2 == 1:
        base.append((_pair("a", 2 * k, 2 * k + 1), s))
        if r - 1 > 0:
            base.append((_pair("b", 2 * k, 2 * k + 1), r - 1))
    space = format_space(RealMilnor(r, s))
    claimed = n * (s + r - 1) - 2

    narrow = [
        _pair(g, 2 * i, 2 * i + 2) for i in range(1, k) for g in ("a", "b")
    ]
    wide = [
        _pair(g, i, j) for g in ("a", "b") for i in range(1, n + 1) for j in range(i + 1, n + 1)
    ]
    log = []
    for pool in (narrow, wide):
        if k - 1 == 0:
            choices = [()]
        else:
            choices = combinations_with_replacement(sorted(set(pool)), k - 1)
        for combo in choices:
            factors = list(base)
            for expr in combo:
                factors.append((expr, 2))
            cert = Certificate(space, n, tuple(factors), claimed, claimed + 1)
            report = verify_certificate(cert)
            log.append((combo, report.verdict))
            if report.verdict == "Verified":
                return cert
        if k - 1 == 0:
            break
    return SearchFailure("no bridging classes gave a nonzero product", tuple(log))


def cert_r2t(s: int, t: int, n: int) -> Certificate:
    """Certificate for r = 2^t and any 0 <= s <= r: per even block an a-sum
    to the s-th and a b-sum to the (2r-1)-st power, with (s-1)-st powers of
    even-position a sums bridging blocks."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if n < 2:
        raise ValueError("arity must be >= 2")
    r = 2**t
    if not _is_power_of_two(r):
        raise ValueError("r must be a power of two")
    # s = 0 makes the claimed count exceed the top degree, so the
    # construction is only meaningful for s >= 1
    if not 1 <= s <= r:
        raise ValueError(f"requires 1 <= s <= r = {r}, got s = {s}")
    k = n // 2
    factors = []
    for i in range(1, k + 1):
        if s > 0:
            factors.append((_pair("a", 2 * i - 1, 2 * i), s))
        factors.append((_pair("b", 2 * i - 1, 2 * i), 2 * r - 1))
    for i in range(1, k):
        if s - 1 > 0:
            factors.append((_pair("a", 2 * i, 2 * i + 2), s - 1))
    if n % 2 == 1:
        if s > 0:
            factors.append((_pair("a", 2 * k, 2 * k + 1), s))
        if r - 1 > 0:
            factors.append((_pair("b", 2 * k, 2 * k + 1), r - 1))
    claimed = n * (r + s - 1) - s + 1
    return Certificate(format_space(RealMilnor(r, s)), n, tuple(factors), claimed, claimed + 1)


def cert_proj(t: int, n: int) -> Certificate:
    """Certificate on real projective space of dimension 2^t: adjacent sums
    of the generator to the (2^(t+1)-1)-st power per even block, linear
    even-position bridges, and a 2^t-th power tail for odd n."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if n < 2:
        raise ValueError("arity must be >= 2")
    m = 2**t
    k = n // 2
    factors = []
    for i in range(1, k + 1):
        factors.append((_pair("x", 2 * i - 1, 2 * i), 2 ** (t + 1) - 1))
    for j in range(1, k):
        factors.append((_pair("x", 2 * j, 2 * j + 2), 1))
    if n % 2 == 1:
        factors.append((_pair("x", 2 * k, 2 * k + 1), 2**t))
    claimed = n * 2**t - 1
    return Certificate(f"rp:{m}", n, tuple(factors), claimed, claimed + 1)


def cert_cat_topclass(space, n: int) -> Certificate:
    """Top-class witness for the category of the n-fold power: the product
    of every generator of every slot raised to its top exponent.  The
    factors are not zero divisors; the certificate is flagged accordingly
    and witnesses the ring cup-length, giving cat >= count + 1."""
    if isinstance(space, str):
        space = parse_space(space)
    if not isinstance(space, (RealMilnor, ComplexMilnor)):
        raise ValueError("top-class certificate is defined for Milnor spaces only")
    if n < 1:
        raise ValueError("arity must be >= 1")
    r, s = space.r, space.s
    factors = []
    for i in range(1, n + 1):
        if s > 0:
            factors.append((f"a{i}", s))
        if r - 1 > 0:
            factors.append((f"b{i}", r - 1))
    claimed = n * (s + r - 1)
    return Certificate(
        format_space(space),
        n,
        tuple(factors),
        claimed,
        claimed + 1,
        cat_witness=True,
    )
