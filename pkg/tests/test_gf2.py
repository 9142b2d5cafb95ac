import numpy as np
import pytest

from milnortc import gf2


@pytest.fixture
def rng():
    return np.random.default_rng(1729)


def test_pack_unpack_round_trip(rng):
    for ncols in (1, 7, 63, 64, 65, 130):
        dense = rng.integers(0, 2, size=(5, ncols), dtype=np.uint8)
        packed = gf2.pack_rows(dense)
        assert packed.shape == (5, gf2.n_words(ncols))
        assert np.array_equal(gf2.unpack_rows(packed, ncols), dense)


def test_bit_accessors():
    row = gf2.zeros(1, 130)[0]
    for col in (0, 63, 64, 129):
        assert gf2.get_bit(row, col) == 0
        gf2.set_bit(row, col)
        assert gf2.get_bit(row, col) == 1


def test_rref_identity_and_rank(rng):
    eye = gf2.pack_rows(np.eye(10, dtype=np.uint8))
    red, piv = gf2.rref(eye, 10)
    assert piv == list(range(10))
    assert np.array_equal(red, eye)
    assert gf2.rank(eye, 10) == 10
    assert gf2.rank(gf2.zeros(4, 10), 10) == 0


def test_rank_matches_dense_gauss(rng):
    def dense_rank(mat):
        mat = mat.copy()
        r = 0
        for c in range(mat.shape[1]):
            piv = next((i for i in range(r, mat.shape[0]) if mat[i, c]), None)
            if piv is None:
                continue
            mat[[r, piv]] = mat[[piv, r]]
            for i in range(mat.shape[0]):
                if i != r and mat[i, c]:
                    mat[i] ^= mat[r]
            r += 1
        return r

    for _ in range(25):
        rows, cols = rng.integers(1, 30, size=2)
        dense = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        assert gf2.rank(gf2.pack_rows(dense), cols) == dense_rank(dense)


def test_nullspace_annihilates_and_rank_nullity(rng):
    for _ in range(20):
        rows, cols = rng.integers(1, 25, size=2)
        dense = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        packed = gf2.pack_rows(dense)
        null = gf2.nullspace(packed, cols)
        assert null.shape[0] == cols - gf2.rank(packed, cols)
        if null.shape[0]:
            vecs = gf2.unpack_rows(null, cols)
            assert not ((dense @ vecs.T) % 2).any()
            assert gf2.rank(null, cols) == null.shape[0]


def test_matmul_matches_dense(rng):
    for _ in range(20):
        m, k, p = rng.integers(1, 40, size=3)
        a = rng.integers(0, 2, size=(m, k), dtype=np.uint8)
        b = rng.integers(0, 2, size=(k, p), dtype=np.uint8)
        got = gf2.unpack_rows(gf2.matmul(gf2.pack_rows(a), k, gf2.pack_rows(b)), p)
        assert np.array_equal(got, (a.astype(np.int64) @ b) % 2)


@pytest.mark.skipif(gf2._eliminate_njit is None, reason="numba unavailable")
def test_backends_agree(rng):
    for _ in range(10):
        rows, cols = rng.integers(1, 50, size=2)
        dense = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        packed = gf2.pack_rows(dense)
        w1, w2 = packed.copy(), packed.copy()
        p1 = np.full(rows, -1, dtype=np.int64)
        p2 = np.full(rows, -1, dtype=np.int64)
        r1 = gf2._eliminate_numpy(w1, int(cols), p1)
        r2 = gf2._eliminate_njit(w2, int(cols), p2)
        assert r1 == r2
        assert np.array_equal(w1, w2)
        b = gf2.pack_rows(rng.integers(0, 2, size=(cols, 17), dtype=np.uint8))
        assert np.array_equal(
            gf2._matmul_numpy(packed, int(cols), b),
            gf2._matmul_njit(packed, int(cols), b),
        )


def test_row_space_is_canonical(rng):
    dense = rng.integers(0, 2, size=(8, 12), dtype=np.uint8)
    packed = gf2.pack_rows(dense)
    basis = gf2.row_space(packed, 12)
    again = gf2.row_space(basis, 12)
    assert np.array_equal(basis, again)
    # shuffling the rows gives the same canonical basis
    perm = rng.permutation(8)
    assert np.array_equal(gf2.row_space(packed[perm], 12), basis)
