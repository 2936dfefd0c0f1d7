"""
Semi-orthogonal functions and their vector form.

For ``n >= 1``::

    f1_n(z) = (z phi_{2n-1}(z) + phi_{2n-1}^*(z)) / (2^n z^n)
    f2_n(z) = (z phi_{2n-1}(z) - phi_{2n-1}^*(z)) / (i 2^n z^n)

and ``(f1_0, f2_0) = (1, 0)``. Each component is real on the circle and splits
uniquely as ``p1(x) + y p2(x)`` with ``x = (z + 1/z)/2``, ``y = (z - 1/z)/2i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev

from ._mat2 import I2, IMINUS, IPLUS
from .laurent import ComplexPoly, LaurentPoly, reversed_poly
from .opuc import SchurSequence, derived_sequences, szego_sequence


@dataclass(frozen=True)
class Vsof:
    f1: LaurentPoly
    f2: LaurentPoly
    n: int

    @property
    def pair(self):
        return (self.f1, self.f2)

    def __call__(self, z):
        return np.stack([self.f1(z), self.f2(z)])

    def __iter__(self):
        return iter(self.pair)


def semi_orthogonal_pair(phi: ComplexPoly, n: int):
    """Semi-orthogonal pair of index ``n >= 1`` from the monic ``phi_{2n-1}``."""
    if n < 1:
        raise ValueError("index must be at least 1; index 0 is the pair (1, 0)")
    if phi.degree != 2 * n - 1:
        raise ValueError(f"expected phi of degree {2 * n - 1}, got {phi.degree}")
    zphi = phi.shift(1)
    star = reversed_poly(phi, 2 * n - 1)
    scale = 2.0 ** -n
    f1 = LaurentPoly.from_poly((zphi + star) * scale, -n)
    f2 = LaurentPoly.from_poly((zphi - star) * (-1j * scale), -n)
    return f1, f2


def _cheb_u_power(k_max: int):
    """Power-basis coefficients of U_0 .. U_{k_max} (Chebyshev, second kind)."""
    out = [np.array([1.0]), np.array([0.0, 2.0])]
    for k in range(2, k_max + 1):
        nxt = np.zeros(k + 1)
        nxt[1:] = 2.0 * out[k - 1]
        nxt[: k - 1] -= out[k - 2]
        out.append(nxt)
    return out[: k_max + 1]


def xy_decompose(f: LaurentPoly, tol: float = 1e-12):
    """
    Split ``f(z) = p1(x) + y p2(x)``.

    Requires ``conj(f)(1/z) == f``. Pairs ``c_k z^k + conj(c_k) z^-k`` are
    rewritten as ``2 Re(c_k) T_k(x) - 2 Im(c_k) y U_{k-1}(x)`` so the split
    is exact at ``x = +-1`` too.

    Returns
    -------
    p1, p2 : ndarray
        Real power-basis coefficients, lowest degree first.

    Raises
    ------
    ValueError
        If ``f`` is not fixed by conjugate reflection within ``tol``
        (relative to its largest coefficient).
    """
    scale = max(float(np.max(np.abs(f.coeffs))), 1.0)
    defect = f.reflection_defect()
    if defect > tol * scale:
        raise ValueError(f"not reflection-symmetric (defect {defect:.3g}); no x-y split")
    K = max(f.max_power, -f.min_power, 0)
    c = f.dense(0, K)
    c_neg = f.dense(-K, 0)[::-1]
    # average the two mirrored coefficients so round-off stays symmetric
    sym = 0.5 * (c + c_neg.conj())
    t_series = np.concatenate([[sym[0].real], 2.0 * sym[1:].real])
    p1 = chebyshev.cheb2poly(t_series) if K else np.array([sym[0].real])
    p2 = np.zeros(max(K, 1))
    if K:
        for k, u in enumerate(_cheb_u_power(K - 1), start=1):
            p2[: len(u)] -= 2.0 * sym[k].imag * u
    return np.asarray(p1, dtype=float), p2


def vsof(schur: SchurSequence, n: int, phis=None) -> Vsof:
    """Vector semi-orthogonal function of index ``n``."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return Vsof(LaurentPoly(0, [1.0]), LaurentPoly(0, [0.0]), 0)
    if phis is None or len(phis) < 2 * n:
        phis = szego_sequence(schur, 2 * n - 1)
    f1, f2 = semi_orthogonal_pair(phis[2 * n - 1], n)
    return Vsof(f1, f2, n)


def vsof_sequence(schur: SchurSequence, N: int) -> list:
    """``f_0, ..., f_N`` sharing one run of the Szego recurrence."""
    phis = szego_sequence(schur, max(2 * N - 1, 0))
    return [vsof(schur, n, phis) for n in range(N + 1)]


def schur_matrix(a: complex) -> np.ndarray:
    """Real symmetric traceless ``[[Re a, Im a], [Im a, -Re a]]``."""
    a = complex(a)
    return np.array([[a.real, a.imag], [a.imag, -a.real]])


def gram_block(schur: SchurSequence, n: int) -> np.ndarray:
    """
    Diagonal Gram block ``<<f_n, f_n>>``.

    ``eps0 * diag(1, 0)`` for ``n = 0``, else
    ``eps_{2n-1} / 2^(2n-1) * (I - H_{2n})``.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return np.diag([schur.eps0, 0.0])
    eps = derived_sequences(schur, 2 * n - 1).eps[-1]
    return eps / 2.0 ** (2 * n - 1) * (I2 - schur_matrix(schur[2 * n]))


def vsof_recurrence_coeffs(schur: SchurSequence, n: int):
    """
    Complex coefficients ``(L_n, M_n)`` of
    ``z f_n = (I + iJ) f_{n+1} + L_n f_n + M_n f_{n-1}``.
    """
    if n < 1:
        raise ValueError("recurrence starts at n = 1")
    H = schur_matrix
    h_prev, h_mid, h_next = H(schur[2 * n - 1]), H(schur[2 * n]), H(schur[2 * n + 1])
    L = 0.5 * ((I2 - h_mid) @ h_prev @ IPLUS - IPLUS @ h_next @ (I2 + h_mid))
    det = 1.0 - abs(schur[2 * n - 1]) ** 2
    M = 0.25 * det * (I2 - h_mid) @ IMINUS @ (I2 + H(schur[2 * n - 2]))
    return L, M
