"""
2x2 matrix polynomials on [-1, 1] built from semi-orthogonal functions.

``F_n`` (quasi-orthogonal) comes from two independent routes: the x-y split of
the vector SOF, and the real three-term recurrence started from
``F_0 = C``, ``F_1 = (xI - I + H_1) C + I``. From ``F_n`` we get the left
orthogonal ``P_n``, the orthonormal ``W_n P_n`` and the standard orthonormal
``Q_n`` whose leading coefficient is symmetric positive definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._mat2 import C, I2, J, adj
from .measures import MatrixMeasure, matrix_inner
from .opuc import SchurSequence, derived_sequences
from .sof import Vsof, gram_block, schur_matrix, vsof_sequence, xy_decompose


class MatPoly2:
    """
    2x2 matrix with real polynomial entries.

    Stored as ``coeffs[k]``, the 2x2 coefficient matrix of ``x**k``. Trailing
    all-zero coefficient matrices are trimmed.
    """

    __array_ufunc__ = None  # let ndarray @ MatPoly2 reach __rmatmul__

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=float).reshape(-1, 2, 2)
        nz = [k for k in range(arr.shape[0]) if np.any(arr[k])]
        arr = arr[: nz[-1] + 1] if nz else np.zeros((1, 2, 2))
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def from_entries(cls, entries):
        """From a 2x2 nested list of power-basis coefficient vectors."""
        deg = max(len(np.atleast_1d(e)) for row in entries for e in row)
        out = np.zeros((deg, 2, 2))
        for i in range(2):
            for j in range(2):
                e = np.atleast_1d(np.asarray(entries[i][j], dtype=float))
                out[: len(e), i, j] = e
        return cls(out)

    @classmethod
    def constant(cls, a):
        return cls(np.asarray(a, dtype=float)[None])

    @classmethod
    def monomial(cls, k: int, a=I2):
        out = np.zeros((k + 1, 2, 2))
        out[k] = a
        return cls(out)

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def leading(self) -> np.ndarray:
        return self.coeffs[-1]

    def coefficient(self, k: int) -> np.ndarray:
        if 0 <= k <= self.degree:
            return self.coeffs[k]
        return np.zeros((2, 2))

    def entry(self, i: int, j: int) -> np.ndarray:
        """Power-basis coefficients of entry ``(i, j)``, trailing zeros trimmed."""
        e = self.coeffs[:, i, j]
        nz = np.flatnonzero(e)
        return e[: nz[-1] + 1].copy() if nz.size else np.zeros(1)

    def __call__(self, x):
        x = np.asarray(x)
        out = np.zeros(x.shape + (2, 2), dtype=np.result_type(x, float))
        for c in self.coeffs[::-1]:
            out = out * x[..., None, None] + c
        return out

    def _padded(self, n):
        out = np.zeros((n, 2, 2))
        out[: self.coeffs.shape[0]] = self.coeffs
        return out

    def __add__(self, other):
        if not isinstance(other, MatPoly2):
            other = MatPoly2.constant(other)
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        return MatPoly2(self._padded(n) + other._padded(n))

    __radd__ = __add__

    def __neg__(self):
        return MatPoly2(-self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, MatPoly2) else -np.asarray(other))

    def __mul__(self, c):
        return MatPoly2(self.coeffs * float(c))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, MatPoly2):
            n = self.degree + other.degree + 1
            out = np.zeros((n, 2, 2))
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a @ b
            return MatPoly2(out)
        return MatPoly2(self.coeffs @ np.asarray(other, dtype=float))

    def __rmatmul__(self, other):
        return MatPoly2(np.asarray(other, dtype=float) @ self.coeffs)

    def mulx(self) -> MatPoly2:
        """Multiply by the scalar ``x``."""
        return MatPoly2(np.concatenate([np.zeros((1, 2, 2)), self.coeffs]))

    @property
    def T(self) -> MatPoly2:
        return MatPoly2(np.transpose(self.coeffs, (0, 2, 1)))

    def max_abs_diff(self, other: MatPoly2, relative=True) -> float:
        """Largest coefficient difference, optionally over the largest coefficient."""
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        diff = float(np.max(np.abs(self._padded(n) - other._padded(n))))
        if not relative:
            return diff
        scale = max(float(np.max(np.abs(self.coeffs))), float(np.max(np.abs(other.coeffs))))
        return diff / scale if scale > 0 else diff

    def tolist(self):
        return self.coeffs.tolist()

    def __repr__(self):
        return f"MatPoly2(degree={self.degree})"


Y_POLY = MatPoly2([[[0.0, 1.0], [1.0, 0.0]], np.zeros((2, 2)), [[0.0, 0.0], [-1.0, 0.0]]])


def matrix_poly_from_sof(v: Vsof) -> MatPoly2:
    """``F_n`` with rows given by the x-y split of the two SOF components."""
    if v.n == 0:
        return MatPoly2.constant(C)
    rows = [xy_decompose(f) for f in (v.f1, v.f2)]
    return MatPoly2.from_entries([[rows[0][0], rows[0][1]], [rows[1][0], rows[1][1]]])


class RealRecurrence(NamedTuple):
    L: np.ndarray
    M: np.ndarray
    L_tilde: np.ndarray
    M_tilde: np.ndarray


def real_recurrence_coeffs(schur: SchurSequence, n: int) -> RealRecurrence:
    """
    Coefficients of the pair of real recurrences

    ``x F_n = F_{n+1} + L_n F_n + M_n F_{n-1}`` and
    ``F_n Y = J F_{n+1} + L~_n F_n + M~_n F_{n-1}``, ``Y = [[0, 1], [1 - x^2, 0]]``.
    """
    if n < 1:
        raise ValueError("recurrence starts at n = 1")
    h_prev = schur_matrix(schur[2 * n - 1])
    h_mid = schur_matrix(schur[2 * n])
    h_next = schur_matrix(schur[2 * n + 1])
    h_back = schur_matrix(schur[2 * n - 2])
    det = 1.0 - abs(schur[2 * n - 1]) ** 2
    L = 0.5 * ((I2 - h_mid) @ h_prev - h_next @ (I2 + h_mid))
    M = 0.25 * det * (I2 - h_mid) @ (I2 + h_back)
    Lt = 0.5 * ((I2 - h_mid) @ h_prev @ J - J @ h_next @ (I2 + h_mid))
    Mt = -0.25 * det * (I2 - h_mid) @ J @ (I2 + h_back)
    return RealRecurrence(L, M, Lt, Mt)


def matrix_poly_recurrence(schur: SchurSequence, N: int) -> list:
    """``F_0, ..., F_N`` from the first real recurrence."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    F = [MatPoly2.constant(C)]
    if N == 0:
        return F
    h1 = schur_matrix(schur[1])
    F.append((MatPoly2.monomial(1) + (h1 - I2)) @ C + I2)
    for n in range(1, N):
        L, M, _, _ = real_recurrence_coeffs(schur, n)
        F.append(F[n].mulx() - L @ F[n] - M @ F[n - 1])
    return F


def matrix_poly_from_sof_sequence(schur: SchurSequence, N: int) -> list:
    """``F_0, ..., F_N`` by splitting the vector SOF (the second route)."""
    return [matrix_poly_from_sof(v) for v in vsof_sequence(schur, N)]


@dataclass(frozen=True)
class LeadingData:
    eta: float
    gamma: float
    Gamma: np.ndarray


def leading_data(schur: SchurSequence, n: int) -> LeadingData:
    """
    Subleading data of ``F_{n+1} = C x^{n+1} + [[eta_n, 0], [gamma_n, 1]] x^n + ...``.

    ``eta_n + i gamma_n = (a_{2n+1} + b_{2n+1}) / 2``; ``Gamma_n`` is the
    leading coefficient of ``P_n``.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    b = derived_sequences(schur, 2 * n + 1).b[-1]
    w = 0.5 * (schur[2 * n + 1] + b)
    return LeadingData(w.real, w.imag, np.array([[1.0, 0.0], [w.imag, 1.0]]))


@dataclass(frozen=True)
class QuasiOrthoRow:
    n: int
    lower: float  # max |int F_n dOmega x^k|, k <= n-2
    penultimate: float  # |int F_n dOmega x^{n-1} - C_n (I - C)/2|
    norm: float  # |int F_n dOmega F_n^T - C_n/2|
    scale: float


def quasi_orthogonality_report(F: list, omega: MatrixMeasure, schur: SchurSequence) -> list:
    """
    Residuals of the quasi-orthogonality relations for each ``F_n``.

    All residuals are max-abs entry differences divided by ``scale``, the
    largest entry of ``C_n/2``.
    """
    rows = []
    for n, Fn in enumerate(F):
        Cn = gram_block(schur, n)
        scale = max(float(np.max(np.abs(Cn))) / 2, 1e-300)
        lower = 0.0
        for k in range(0, n - 1):
            lower = max(lower, float(np.max(np.abs(matrix_inner(Fn, MatPoly2.monomial(k), omega)))))
        pen = 0.0
        if n >= 1:
            got = matrix_inner(Fn, MatPoly2.monomial(n - 1), omega)
            pen = float(np.max(np.abs(got - 0.5 * Cn @ (I2 - C))))
        nrm = float(np.max(np.abs(matrix_inner(Fn, Fn, omega) - 0.5 * Cn)))
        rows.append(QuasiOrthoRow(n, lower / scale, pen / scale, nrm / scale, scale))
    return rows


def r_coefficient(schur: SchurSequence, n: int) -> float:
    a = schur[2 * n]
    return a.imag / (1.0 + a.real)


def lomp_mixing(schur: SchurSequence, n: int):
    """``(alpha_n, beta_n, alpha~_n, beta~_n)`` linking ``P`` and ``F``."""
    r = r_coefficient(schur, n)
    return (
        I2 - C,
        np.array([[1.0, r], [0.0, 0.0]]),
        C.copy(),
        np.array([[0.0, -r], [0.0, 1.0]]),
    )


def lomp(schur: SchurSequence, n: int, F_n: MatPoly2, F_next: MatPoly2) -> MatPoly2:
    """Left orthogonal ``P_n = (I - C) F_{n+1} + [[1, r_n], [0, 0]] F_n``."""
    alpha, beta, _, _ = lomp_mixing(schur, n)
    return alpha @ F_next + beta @ F_n


def lomp_sequence(schur: SchurSequence, N: int, F=None) -> list:
    """``P_0, ..., P_N``; uses (and extends) ``F`` if given."""
    if F is None or len(F) < N + 2:
        F = matrix_poly_recurrence(schur, N + 1)
    return [lomp(schur, n, F[n], F[n + 1]) for n in range(N + 1)]


def lomp_normalizers(schur: SchurSequence, n: int):
    """
    ``(W_n, norm_n)`` where ``norm_n = int P_n dOmega P_n^T`` (diagonal) and
    ``W_n = norm_n^(-1/2)`` makes ``W_n P_n`` left orthonormal.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    seq = derived_sequences(schur, 2 * n + 1)
    eps_even, eps_odd = seq.eps[2 * n], seq.eps[2 * n + 1]
    re_even, re_next = schur[2 * n].real, schur[2 * n + 2].real
    scale = 4.0 ** -n
    norm = scale * np.diag([eps_even / (1 + re_even), 0.25 * eps_odd * (1 + re_next)])
    W = 2.0 ** n * np.diag(
        [seq.kappa[2 * n] * math.sqrt(1 + re_even), 2 * seq.kappa[2 * n + 1] / math.sqrt(1 + re_next)]
    )
    return W, norm


@dataclass(frozen=True)
class LonpFrame:
    K: np.ndarray  # leading coefficient of W_n P_n
    Theta: np.ndarray
    Xi: np.ndarray  # orthogonal


def lonp_frame(schur: SchurSequence, n: int) -> LonpFrame:
    """Orthogonal ``Xi_n`` turning ``W_n P_n`` into the standard orthonormal ``Q_n``."""
    W, _ = lomp_normalizers(schur, n)
    K = W @ leading_data(schur, n).Gamma
    Theta = K + adj(K).T
    det = float(np.linalg.det(Theta))
    if not det > 0.0:
        raise ValueError(f"det Theta_{n} = {det:.3g} <= 0; Schur data is corrupted")
    return LonpFrame(K, Theta, Theta / math.sqrt(det))


def standard_lonp(P_n: MatPoly2, schur: SchurSequence, n: int) -> MatPoly2:
    """``Q_n = Xi_n^T W_n P_n``."""
    W, _ = lomp_normalizers(schur, n)
    return lonp_frame(schur, n).Xi.T @ (W @ P_n)


def standard_lonp_sequence(schur: SchurSequence, N: int, P=None) -> list:
    if P is None:
        P = lomp_sequence(schur, N)
    return [standard_lonp(P[n], schur, n) for n in range(N + 1)]
