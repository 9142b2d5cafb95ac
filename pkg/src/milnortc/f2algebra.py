"""Exact arithmetic in finite-dimensional graded mod-2 algebras.

Three presentation kinds are supported:

* ``milnor`` -- two generators a, b with ``a^(s+1) = 0`` and
  ``b^r = sum_{k=1..s} a^k b^(r-k)``; monomial basis
  ``{a^i b^j : i <= s, j <= r-1}``.
* ``truncated`` -- one generator x with ``x^(m+1) = 0``.
* ``product`` -- tensor product of the above, generators concatenated.

Elements are mod-2 sums of basic monomials; addition is symmetric
difference of supports.  All values are immutable after construction and
every operation is pure, so presentations and elements can be shared
freely across workers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product as iproduct

logger = logging.getLogger(__name__)

_PRESENTATION_CACHE: dict = {}


class Presentation:
    """A validated algebra presentation with an enumerated monomial basis.

    Construct via :func:`make_presentation`, which interns instances so
    equal specs share one object (identity comparison is safe).
    """

    def __init__(self, kind, *, s=None, r=None, m=None, gen_degree=1, factors=None):
        self.kind = kind
        self.s = s
        self.r = r
        self.m = m
        self.gen_degree = gen_degree
        self.factors = tuple(factors) if factors else None

        if kind == "milnor":
            self.gen_names = ("a", "b")
            self.gen_degrees = (gen_degree, gen_degree)
            basis = [(i, j) for i in range(s + 1) for j in range(r)]
        elif kind == "truncated":
            self.gen_names = ("x",)
            self.gen_degrees = (gen_degree,)
            basis = [(e,) for e in range(m + 1)]
        else:  # product
            names = []
            degrees = []
            for idx, f in enumerate(self.factors, start=1):
                names.extend(f"{g}.{idx}" for g in f.gen_names)
                degrees.extend(f.gen_degrees)
            self.gen_names = tuple(names)
            self.gen_degrees = tuple(degrees)
            basis = [
                tuple(e for mono in combo for e in mono)
                for combo in iproduct(*(f.basis for f in self.factors))
            ]

        self.ngens = len(self.gen_names)
        basis.sort(key=lambda mono: (self.monomial_degree(mono), mono))
        self.basis = tuple(basis)
        self.rank_of = {mono: i for i, mono in enumerate(self.basis)}
        slices: dict[int, list[int]] = {}
        for i, mono in enumerate(self.basis):
            slices.setdefault(self.monomial_degree(mono), []).append(i)
        self.degree_slices = {d: tuple(v) for d, v in slices.items()}
        self.top_degree = max(self.degree_slices) if self.basis else 0
        self._nf_cache: dict = {}
        self._mul_cache: dict = {}
        self._tensor_slices: dict = {}

    @property
    def cache_key(self):
        if self.kind == "milnor":
            return ("milnor", self.s, self.r, self.gen_degree)
        if self.kind == "truncated":
            return ("truncated", self.m, self.gen_degree)
        return ("product",) + tuple(f.cache_key for f in self.factors)

    def monomial_degree(self, exps) -> int:
        return sum(e * d for e, d in zip(exps, self.gen_degrees))

    def is_basic(self, exps) -> bool:
        return tuple(exps) in self.rank_of

    # -- normal form ----------------------------------------------------

    def reduce(self, exps) -> frozenset:
        """Normal form of a raw monomial as a set of basic monomials."""
        exps = tuple(exps)
        if len(exps) != self.ngens:
            raise ValueError(
                f"expected {self.ngens} exponents, got {len(exps)}"
            )
        cached = self._nf_cache.get(exps)
        if cached is None:
            cached = self._reduce(exps)
            self._nf_cache[exps] = cached
        return cached

    def _reduce(self, exps) -> frozenset:
        if self.kind == "truncated":
            return frozenset() if exps[0] > self.m else frozenset((exps,))
        if self.kind == "milnor":
            return self._reduce_milnor(exps[0], exps[1])
        # product: reduce factor-wise, then expand the tensor of supports
        parts = []
        pos = 0
        for f in self.factors:
            seg = exps[pos : pos + f.ngens]
            pos += f.ngens
            sup = f.reduce(seg)
            if not sup:
                return frozenset()
            parts.append(sup)
        return frozenset(
            tuple(e for mono in combo for e in mono) for combo in iproduct(*parts)
        )

    def _reduce_milnor(self, i, j) -> frozenset:
        s, r = self.s, self.r
        if r == 0:
            return frozenset()
        if i > s:
            return frozenset()
        if j < r:
            return frozenset(((i, j),))
        # rewrite b^j -> sum_{k=1..s} a^k b^(j-k); process largest j first
        pending = {(i, j): 1}
        out: set = set()
        while pending:
            jmax = max(key[1] for key in pending)
            batch = [key for key in pending if key[1] == jmax]
            for i0, j0 in batch:
                if pending.pop((i0, j0)) % 2 == 0:
                    continue
                if i0 > s:
                    continue
                if j0 < r:
                    out ^= {(i0, j0)}
                else:
                    for k in range(1, s + 1):
                        key = (i0 + k, j0 - k)
                        pending[key] = pending.get(key, 0) + 1
        return frozenset(out)

    def mono_mul(self, m1, m2) -> frozenset:
        """Product of two basic monomials as a set of basic monomials."""
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        cached = self._mul_cache.get(key)
        if cached is None:
            cached = self.reduce(tuple(x + y for x, y in zip(m1, m2)))
            self._mul_cache[key] = cached
        return cached

    def __repr__(self):
        return f"Presentation{self.cache_key}"


def make_presentation(spec=None, **kwargs) -> Presentation:
    """Validate and intern a presentation.

    Accepts either a spec dict (``{"kind": "milnor", "s": 1, "r": 2, ...}``)
    or the same fields as keyword arguments.
    """
    if spec is not None:
        kwargs = {**spec, **kwargs}
    kind = kwargs.get("kind")
    gen_degree = kwargs.get("gen_degree", kwargs.get("genDegree", 1))
    if gen_degree not in (1, 2):
        raise ValueError(f"gen_degree must be 1 or 2, got {gen_degree}")

    if kind == "milnor":
        s, r = kwargs.get("s"), kwargs.get("r")
        if not isinstance(s, int) or not isinstance(r, int) or s < 0 or r < 0:
            raise ValueError("milnor presentation needs integers s, r >= 0")
        if s > r:
            raise ValueError(f"milnor presentation requires s <= r, got s={s}, r={r}")
        key = ("milnor", s, r, gen_degree)
        if key not in _PRESENTATION_CACHE:
            _PRESENTATION_CACHE[key] = Presentation(
                "milnor", s=s, r=r, gen_degree=gen_degree
            )
        return _PRESENTATION_CACHE[key]
    if kind == "truncated":
        m = kwargs.get("m")
        if not isinstance(m, int) or m < 0:
            raise ValueError("truncated presentation needs an integer m >= 0")
        key = ("truncated", m, gen_degree)
        if key not in _PRESENTATION_CACHE:
            _PRESENTATION_CACHE[key] = Presentation(
                "truncated", m=m, gen_degree=gen_degree
            )
        return _PRESENTATION_CACHE[key]
    if kind == "product":
        factors = kwargs.get("factors")
        if not factors:
            raise ValueError("product presentation needs a non-empty factor list")
        factors = tuple(
            f if isinstance(f, Presentation) else make_presentation(f) for f in factors
        )
        key = ("product",) + tuple(f.cache_key for f in factors)
        if key not in _PRESENTATION_CACHE:
            _PRESENTATION_CACHE[key] = Presentation("product", factors=factors)
        return _PRESENTATION_CACHE[key]
    raise ValueError(f"unknown presentation kind: {kind!r}")


@dataclass(frozen=True)
class Element:
    """Mod-2 sum of basic monomials of one presentation."""

    presentation: Presentation
    support: frozenset

    def __post_init__(self):
        for mono in self.support:
            if mono not in self.presentation.rank_of:
                raise ValueError(f"non-basic monomial in support: {mono}")

    @property
    def is_zero(self) -> bool:
        return not self.support

    @property
    def degree(self):
        """Common degree of the support, or None if zero/inhomogeneous."""
        degs = {self.presentation.monomial_degree(m) for m in self.support}
        return degs.pop() if len(degs) == 1 else None

    def __add__(self, other: "Element") -> "Element":
        _check_same(self, other)
        return Element(self.presentation, self.support ^ other.support)

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __pow__(self, e: int) -> "Element":
        return power(self, e)

    def __repr__(self):
        if not self.support:
            return "Element(0)"
        names = self.presentation.gen_names
        terms = []
        for mono in sorted(self.support):
            factors = [
                f"{g}^{e}" if e > 1 else g for g, e in zip(names, mono) if e
            ]
            terms.append("*".join(factors) or "1")
        return "Element(" + " + ".join(terms) + ")"


def _check_same(x: Element, y: Element):
    if x.presentation is not y.presentation:
        raise ValueError("elements belong to different presentations")


def zero(P: Presentation) -> Element:
    return Element(P, frozenset())


def unit(P: Presentation) -> Element:
    """The multiplicative unit (zero in the zero ring)."""
    one = (0,) * P.ngens
    return Element(P, frozenset((one,)) if one in P.rank_of else frozenset())


def generator(P: Presentation, name: str) -> Element:
    if name not in P.gen_names:
        raise ValueError(f"unknown generator {name!r}; have {P.gen_names}")
    idx = P.gen_names.index(name)
    exps = tuple(1 if k == idx else 0 for k in range(P.ngens))
    return Element(P, P.reduce(exps))


def normal_form(P: Presentation, raw_exps) -> Element:
    """Unique mod-2 sum of basic monomials equal to the raw monomial."""
    return Element(P, P.reduce(raw_exps))


def multiply(x: Element, y: Element) -> Element:
    _check_same(x, y)
    P = x.presentation
    out: set = set()
    for mx in x.support:
        for my in y.support:
            out ^= P.mono_mul(mx, my)
    return Element(P, frozenset(out))


def power(x: Element, e: int) -> Element:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = unit(x.presentation)
    base = x
    while e:
        if e & 1:
            result = multiply(result, base)
        base = multiply(base, base) if e > 1 else base
        e >>= 1
    return result


def poincare_series(P: Presentation) -> list:
    """Per-degree basis counts, degree 0 through the top degree."""
    if not P.basis:
        return []
    return [len(P.degree_slices.get(d, ())) for d in range(P.top_degree + 1)]


def binom_mod2(n: int, k: int, *, debug: bool = False) -> int:
    """Parity of C(n, k) via bitwise containment (Lucas)."""
    if n < 0 or k < 0:
        raise ValueError("binom_mod2 requires non-negative arguments")
    if k > n:
        if debug:
            logger.warning("binom_mod2 called with k=%d > n=%d; returning 0", k, n)
        return 0
    return 1 if (n & k) == k else 0
