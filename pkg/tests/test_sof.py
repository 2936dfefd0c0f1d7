import math

import numpy as np
import pytest

from conftest import monic_t, padded, random_heads
from semiortho import (
    ComplexPoly,
    LaurentPoly,
    SchurSequence,
    bernstein_szego_measure,
    gram_block,
    schur_matrix,
    vector_inner,
    vsof,
    vsof_sequence,
    xy_decompose,
)
from semiortho._mat2 import C, I2, IMINUS, IPLUS
from semiortho.matrix_op import real_recurrence_coeffs
from semiortho.sof import semi_orthogonal_pair, vsof_recurrence_coeffs

TWO_PI = 2 * math.pi
X = LaurentPoly(-1, [0.5, 0, 0.5])
Y = LaurentPoly(-1, [0.5j, 0, -0.5j])


def test_pair_zero_head():
    f1, f2 = semi_orthogonal_pair(ComplexPoly.z(), 1)
    assert f1.allclose(X)
    assert f2.allclose(Y)


def test_pair_one_parameter():
    f1, f2 = semi_orthogonal_pair(ComplexPoly([0.5, 1.0]), 1)
    assert f1.allclose(X + 0.5)
    assert f2.allclose(Y)


def test_pair_rejects_bad_input():
    with pytest.raises(ValueError):
        semi_orthogonal_pair(ComplexPoly.one(), 0)
    with pytest.raises(ValueError):
        semi_orthogonal_pair(ComplexPoly([0, 0, 1]), 1)


def test_index_zero_convention():
    v = vsof(SchurSequence((0.3,)), 0)
    assert v.f1.allclose(LaurentPoly(0, [1.0]))
    assert v.f2.is_zero


def test_vsof_zero_head_closed_form():
    for n in range(1, 6):
        v = vsof(SchurSequence(), n)
        zn = LaurentPoly.monomial(n)
        zmn = LaurentPoly.monomial(-n)
        assert v.f1.allclose((zn + zmn) * 2.0 ** -n)
        assert v.f2.allclose((zn - zmn) * (-1j * 2.0 ** -n))


def test_xy_decompose_basic():
    p1, p2 = xy_decompose(X)
    assert np.allclose(padded(p1, 2), [0, 1]) and np.allclose(p2, 0)
    p1, p2 = xy_decompose(Y)
    assert np.allclose(p1, 0) and np.allclose(padded(p2, 1), [1])
    f1, _ = semi_orthogonal_pair(ComplexPoly([0.5, 1.0]), 1)
    p1, p2 = xy_decompose(f1)
    assert np.allclose(padded(p1, 2), [0.5, 1]) and np.allclose(p2, 0)


def test_xy_decompose_reconstructs_on_circle():
    schur = SchurSequence((0.3 + 0.4j, -0.2 + 0.5j, 0.1j))
    t = np.linspace(0.1, 6.0, 17)
    z = np.exp(1j * t)
    x, y = np.cos(t), np.sin(t)
    for v in vsof_sequence(schur, 5)[1:]:
        for f in v:
            p1, p2 = xy_decompose(f)
            assert np.allclose(np.polyval(p1[::-1], x) + y * np.polyval(p2[::-1], x), f(z))


def test_xy_decompose_chebyshev_first_kind():
    # (z^n + z^-n)/2 = T_n(x)
    for n in range(1, 8):
        f = (LaurentPoly.monomial(n) + LaurentPoly.monomial(-n)) * 0.5
        p1, p2 = xy_decompose(f)
        assert np.allclose(p1, monic_t(n) * 2.0 ** (n - 1))
        assert np.allclose(p2, 0)


def test_xy_decompose_rejects_asymmetric():
    with pytest.raises(ValueError):
        xy_decompose(LaurentPoly.monomial(1))


def test_schur_matrix():
    assert np.allclose(schur_matrix(0), 0)
    assert np.allclose(schur_matrix(1), 2 * C - I2)
    assert np.allclose(schur_matrix(0.5j), [[0, 0.5], [0.5, 0]])


def test_gram_block_closed_forms():
    assert np.allclose(gram_block(SchurSequence(), 1), math.pi * I2)
    schur = SchurSequence((0.0, 0.5))
    assert np.allclose(gram_block(schur, 1), math.pi * np.diag([0.5, 1.5]))
    assert np.allclose(gram_block(schur, 0), np.diag([TWO_PI, 0]))


def test_gram_blocks_by_quadrature():
    for schur in random_heads(5, seed=21):
        m = bernstein_szego_measure(schur)
        fs = vsof_sequence(schur, 4)
        norms = [np.max(np.abs(gram_block(schur, n))) for n in range(5)]
        for n in range(5):
            for k in range(5):
                want = gram_block(schur, n) if n == k else np.zeros((2, 2))
                err = np.max(np.abs(vector_inner(fs[n].pair, fs[k].pair, m) - want))
                assert err <= 1e-10 * math.sqrt(norms[n] * norms[k])


def test_first_pair_orthogonal_to_constant():
    for schur in random_heads(5, seed=5):
        m = bernstein_szego_measure(schur)
        fs = vsof_sequence(schur, 1)
        assert np.max(np.abs(vector_inner(fs[1].pair, fs[0].pair, m))) < 1e-12


def test_recurrence_coeffs_zero_head():
    L, M = vsof_recurrence_coeffs(SchurSequence(), 3)
    assert np.allclose(L, 0)
    assert np.allclose(M, 0.25 * IMINUS)
    L, M = vsof_recurrence_coeffs(SchurSequence(), 1)
    assert np.allclose(M, 0.5 * IMINUS @ C)


def _apply(A, pair):
    return [pair[0] * A[i, 0] + pair[1] * A[i, 1] for i in range(2)]


def test_vsof_recurrence_residual():
    z = LaurentPoly.monomial(1)
    for schur in random_heads(6, seed=13):
        fs = vsof_sequence(schur, 13)
        for n in range(1, 13):
            L, M = vsof_recurrence_coeffs(schur, n)
            a = _apply(IPLUS, fs[n + 1].pair)
            b = _apply(L, fs[n].pair)
            c = _apply(M, fs[n - 1].pair)
            for i in range(2):
                resid = z * fs[n].pair[i] - a[i] - b[i] - c[i]
                assert resid.allclose(LaurentPoly(0, [0.0]), atol=1e-13)


def test_real_part_consistency():
    for schur in random_heads(6, seed=17):
        for n in range(1, 6):
            L, M = vsof_recurrence_coeffs(schur, n)
            rc = real_recurrence_coeffs(schur, n)
            assert np.allclose(rc.L, L.real) and np.allclose(rc.M, M.real)
            assert np.allclose(rc.L_tilde, L.imag) and np.allclose(rc.M_tilde, M.imag)


def test_chebyshev_recurrence_reduction():
    # x T^_n = T^_{n+1} + T^_{n-1}/4 for n >= 2
    rc = real_recurrence_coeffs(SchurSequence(), 3)
    assert np.allclose(rc.L, 0) and np.allclose(rc.M, 0.25 * I2)
    for n in range(2, 8):
        lhs = np.concatenate([[0], monic_t(n)])
        rhs = padded(monic_t(n + 1), n + 2) + 0.25 * padded(monic_t(n - 1), n + 2)
        assert np.allclose(lhs, rhs)


def test_orthogonal_to_lower_laurent_span():
    rng = np.random.default_rng(23)
    for schur in random_heads(4, seed=29):
        m = bernstein_szego_measure(schur)
        fs = vsof_sequence(schur, 6)
        for n in range(2, 7):
            f = tuple(
                LaurentPoly(-n + 1, rng.normal(size=2 * n - 1) + 1j * rng.normal(size=2 * n - 1))
                for _ in range(2)
            )
            assert np.max(np.abs(vector_inner(fs[n].pair, f, m))) < 1e-11


def _trim(c):
    return np.trim_zeros(np.where(np.abs(c) < 1e-13, 0, c), "b")


def test_xy_split_degrees():
    for schur in random_heads(6, seed=37):
        for n, v in enumerate(vsof_sequence(schur, 7)):
            if n == 0:
                continue
            (p11, p12), (p21, p22) = xy_decompose(v.f1), xy_decompose(v.f2)
            assert len(_trim(p11)) == n + 1 and _trim(p11)[-1] == pytest.approx(1)
            assert len(_trim(p22)) == n and _trim(p22)[-1] == pytest.approx(1)
            assert len(_trim(p21)) <= n
            assert len(_trim(p12)) <= n - 1
