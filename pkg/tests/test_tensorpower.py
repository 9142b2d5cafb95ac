import random

import pytest

from milnortc.errors import ResourceLimitError
from milnortc.f2algebra import Element, generator, make_presentation, multiply, zero
from milnortc.tensorpower import (
    diagonal_eval,
    inject,
    kernel_basis,
    slice_dimension,
    t_multiply,
    t_power,
    t_unit,
    tensor_slice,
)


@pytest.fixture
def P():
    return make_presentation(kind="milnor", s=2, r=3, gen_degree=1)


def rand_element(P, rng, max_terms=3):
    picks = rng.sample(P.basis, rng.randint(0, max_terms))
    el = zero(P)
    for exps in picks:
        el = el + Element(P, frozenset({exps}))
    return el


def rand_tensor(P, n, rng):
    u = t_unit(P, n)
    for i in range(1, n + 1):
        u = t_multiply(u, inject(P, n, i, rand_element(P, rng)))
    return u


def test_diagonal_of_inject_is_identity(P):
    rng = random.Random(11)
    for n in (2, 3):
        for i in range(1, n + 1):
            for _ in range(20):
                x = rand_element(P, rng)
                assert diagonal_eval(inject(P, n, i, x)) == x


def test_diagonal_eval_multiplicative(P):
    rng = random.Random(13)
    for n in (2, 3):
        for _ in range(30):
            u, v = rand_tensor(P, n, rng), rand_tensor(P, n, rng)
            assert diagonal_eval(t_multiply(u, v)) == multiply(
                diagonal_eval(u), diagonal_eval(v)
            )


def test_slice_dimensions_sum_to_total(P):
    for n in (1, 2, 3):
        total = sum(
            slice_dimension(P, n, d) for d in range(n * P.top_degree + 1)
        )
        assert total == len(P.basis) ** n
        for d in range(n * P.top_degree + 1):
            assert slice_dimension(P, n, d) == len(tensor_slice(P, n, d))


def test_tensor_slice_sorted_and_graded(P):
    for d in range(2 * P.top_degree + 1):
        slc = tensor_slice(P, 2, d)
        # deterministic rank order, no duplicates
        key = lambda tup: tuple(P.rank_of[exps] for exps in tup)
        assert list(slc) == sorted(slc, key=key)
        assert len(set(slc)) == len(slc)
        for tup in slc:
            assert sum(P.monomial_degree(exps) for exps in tup) == d


def test_multiplication_commutes_and_distributes(P):
    rng = random.Random(17)
    for _ in range(25):
        u, v, w = (rand_tensor(P, 2, rng) for _ in range(3))
        assert t_multiply(u, v) == t_multiply(v, u)
        assert t_multiply(u, v + w) == t_multiply(u, v) + t_multiply(u, w)
    u = rand_tensor(P, 2, rng)
    assert t_power(u, 3) == t_multiply(u, t_multiply(u, u))


def test_kernel_basis_rank_nullity(P):
    for n in (2, 3):
        for d in range(1, n * P.top_degree + 1):
            kb = kernel_basis(P, n, d)
            assert len(kb) == kb.slice_dim - kb.image_rank
            for el in kb.elements:
                assert diagonal_eval(el).is_zero
                assert el.degree == d


def test_kernel_trivial_in_degree_zero(P):
    kb = kernel_basis(P, 2, 0)
    assert len(kb) == 0


def test_degree_zero_slice_is_unit(P):
    assert tensor_slice(P, 2, 0) == [tuple(P.basis[0] for _ in range(2))] or (
        slice_dimension(P, 2, 0) == 1
    )


def test_resource_limit_fires(P):
    with pytest.raises(ResourceLimitError):
        kernel_basis(P, 3, P.top_degree, max_slice=2)


def test_kernel_of_projective_line():
    # RP^1: kernel in degree 1 is spanned by x1 + x2
    T = make_presentation(kind="truncated", m=1, gen_degree=1)
    kb = kernel_basis(T, 2, 1)
    assert len(kb) == 1
    el = kb.elements[0]
    x = generator(T, "x")
    assert el == inject(T, 2, 1, x) + inject(T, 2, 2, x)
