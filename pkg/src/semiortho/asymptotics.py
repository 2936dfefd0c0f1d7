"""
Szego functions and strong asymptotics.

Scalar side: ``D(dmu; z)`` from the Herglotz integral of ``log mu'``.
Matrix side: for an associated matrix measure the matrix Szego function is
explicit::

    D(dOmega; z) = (9 + 4 g^2)^(-1/2) diag(1, -sqrt(x^2 - 1))
                   exp(I R(z) + J I(z)) [[3, -2 g], [2 g z, 3 z]]

with ``x = (z + 1/z)/2``, ``|z| < 1`` and ``sqrt(x^2 - 1) := z - x``.
The standard orthonormal ``Q_n`` satisfy
``z^n Q_n(x) -> D(dOmega; z)^{-1} / sqrt(2 pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .laurent import reversed_poly
from .measures import DEFAULT_NODES, CircleMeasure, MatrixMeasure
from .matrix_op import lomp_sequence, matrix_poly_recurrence, standard_lonp
from .opuc import AdmissibilityError, SchurSequence, derived_sequences, szego_sequence
from .sof import vsof_sequence

SZEGO_FLOOR = 1e-14
UNIT_CIRCLE_TOL = 1e-12


class DomainError(ValueError):
    """Argument lies where the requested function is not defined."""


def resolving_nodes(schur: SchurSequence, floor: int = DEFAULT_NODES, target: float = 1e-17) -> int:
    """
    Node count that resolves the Bernstein-Szego weight of ``schur``.

    The weight has poles at the zeros of ``phi_K``; the midpoint-rule error
    decays like ``r**N`` with ``r`` the largest zero modulus. Returns the
    smallest power of two ``>= floor`` with ``r**N <= target`` after a margin
    for Laurent integrands of moderate degree, capped at ``2**20``.
    """
    K = len(schur)
    phi = szego_sequence(schur, K)[K]
    if K == 0 or not np.any(phi.coeffs[:-1]):
        return floor
    r = float(np.max(np.abs(np.roots(phi.coeffs[::-1]))))
    if r == 0.0:
        return floor
    need = math.log(target) / math.log(r) + 64
    nodes = floor
    while nodes < need and nodes < 2**20:
        nodes *= 2
    return nodes


def bernstein_szego_measure(schur: SchurSequence, nodes: int | None = None) -> CircleMeasure:
    """
    The measure whose Schur parameters are ``schur`` (zero tail).

    ``w(theta) = eps_K / (2 pi |phi_K(e^{i theta})|^2)`` with ``K`` the head
    length. With ``nodes=None`` the grid is sized by :func:`resolving_nodes`.
    """
    K = len(schur)
    seq = derived_sequences(schur, K)
    phi = seq.phis[K]
    c = seq.eps[K] / (2 * math.pi)
    if nodes is None:
        nodes = resolving_nodes(schur)
    return CircleMeasure(lambda t: c / np.abs(phi(np.exp(1j * t))) ** 2, (), nodes)


def _szego_values(m: CircleMeasure) -> np.ndarray:
    if m.atoms:
        raise AdmissibilityError("Szego-class routines do not accept measures with atoms")
    w = m.values
    bad = np.flatnonzero(~(w > SZEGO_FLOOR))
    if bad.size:
        j = int(bad[0])
        raise AdmissibilityError(
            f"weight {w[j]:.3g} at theta={m.theta[j]:.6g} violates the Szego condition "
            f"(needs > {SZEGO_FLOOR:g} on the grid)"
        )
    return np.log(w)


def szego_function(m: CircleMeasure, z):
    """
    ``D(dmu; z) = exp(1/(4 pi) int log mu'(t) (e^{it} + z)/(e^{it} - z) dt)``, ``|z| != 1``.

    Vectorized over ``z``.
    """
    logw = _szego_values(m)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) <= UNIT_CIRCLE_TOL):
        raise DomainError("D(dmu; z) is not defined on the unit circle")
    e = m.points
    kernel = (e + z[..., None]) / (e - z[..., None])
    out = np.exp(m.step / (4 * math.pi) * np.sum(logw * kernel, axis=-1))
    return out if out.ndim else complex(out)


def joukowski_inverse(x):
    """Root of ``z^2 - 2 x z + 1 = 0`` inside the open unit disk, ``x`` off [-1, 1]."""
    x = np.asarray(x, dtype=complex)
    if np.any((np.abs(x.imag) <= UNIT_CIRCLE_TOL) & (np.abs(x.real) <= 1.0 + UNIT_CIRCLE_TOL)):
        raise DomainError("x must lie off the interval [-1, 1]")
    r = np.sqrt(x * x - 1.0)
    z1, z2 = x + r, x - r
    # roots multiply to 1; inverting the large one avoids cancellation
    z = 1.0 / np.where(np.abs(z1) < np.abs(z2), z2, z1)
    return z if z.ndim else complex(z)


@dataclass(frozen=True)
class SzegoData:
    """
    ``R`` and ``I`` are the Poisson-type exponents of the matrix Szego
    function, ``gamma`` the asymptotic mixing constant and ``D0 = D(dmu; 0)``.
    """

    R: Callable
    I: Callable
    gamma: float
    D0: float


def matrix_szego_data(omega: MatrixMeasure) -> SzegoData:
    """
    Interval-side integrals, all on the ``x = cos t`` grid of ``omega``::

        R(z) = (1 - z^2)/(4 pi) int log det Omega'(x) / sqrt(1 - x^2) dx / (1 - 2xz + z^2)
        I(z) = -z/(2 pi) int log((rho' + sigma')/(rho' - sigma')) dx / (1 - 2xz + z^2)
        gamma = -1/(4 pi) int log((rho' + sigma')/(rho' - sigma')) dx
    """
    if omega.atoms:
        raise AdmissibilityError("Szego-class routines do not accept measures with atoms")
    x, _, r, sg = omega.grid
    plus, minus = r + sg, r - sg
    bad = np.flatnonzero(~((plus > SZEGO_FLOOR) & (minus > SZEGO_FLOOR)))
    if bad.size:
        j = int(bad[0])
        raise AdmissibilityError(
            f"rho' +- sigma' not positive at x={x[j]:.6g}; matrix Szego condition fails"
        )
    h = math.pi / x.size
    # det Omega'(cos t) = (rho_t^2 - sigma_t^2)/4 with rho_t = rho'(cos t) sin t
    log_det = np.log(0.25 * plus * minus)
    log_ratio = np.log(plus / minus)
    sin_t = np.sqrt(1.0 - x * x)
    odd = h * log_ratio * sin_t

    def R(z):
        z = np.asarray(z, dtype=complex)
        den = 1.0 - 2.0 * x * z[..., None] + z[..., None] ** 2
        out = (1.0 - z * z) / (4 * math.pi) * np.sum(h * log_det / den, axis=-1)
        return out if out.ndim else complex(out)

    def I(z):  # noqa: E743
        z = np.asarray(z, dtype=complex)
        den = 1.0 - 2.0 * x * z[..., None] + z[..., None] ** 2
        out = -z / (2 * math.pi) * np.sum(odd / den, axis=-1)
        return out if out.ndim else complex(out)

    gamma = float(-np.sum(odd) / (4 * math.pi))
    return SzegoData(R, I, gamma, math.exp(R(0.0).real))


def gamma_limit(schur: SchurSequence) -> float:
    """``Im(sum_k a_k conj(a_{k-1})) / 2``; a finite sum for a zero tail."""
    a = schur.values(len(schur))
    return float(0.5 * np.sum(a[1:] * np.conj(a[:-1])).imag)


def matrix_szego(omega: MatrixMeasure, x, data: SzegoData | None = None) -> np.ndarray:
    """``D(dOmega; z)`` at ``x = (z + 1/z)/2`` off [-1, 1], as a complex 2x2 matrix."""
    if data is None:
        data = matrix_szego_data(omega)
    z = joukowski_inverse(x)
    x = complex(x)
    g = data.gamma
    R, Iz = data.R(z), data.I(z)
    rot = np.exp(R) * np.array([[np.cos(Iz), np.sin(Iz)], [-np.sin(Iz), np.cos(Iz)]])
    left = np.diag([1.0, -(z - x)])
    right = np.array([[3.0, -2.0 * g], [2.0 * g * z, 3.0 * z]])
    return left @ rot @ right / math.sqrt(9.0 + 4.0 * g * g)


def lonp_limit(omega: MatrixMeasure, x, data: SzegoData | None = None) -> np.ndarray:
    """``D(dOmega; z)^{-1} / sqrt(2 pi)``."""
    return np.linalg.inv(matrix_szego(omega, x, data)) / math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    err: float
    rate: float


@dataclass(frozen=True)
class ConvergenceReport:
    z: complex
    limit: np.ndarray
    rows: list

    def errors(self):
        return np.array([r.err for r in self.rows])


def _rows(ns, errs):
    rows = []
    for i, (n, e) in enumerate(zip(ns, errs)):
        rate = errs[i] / errs[i - 1] if i and errs[i - 1] > 0 else float("nan")
        rows.append(ConvergenceRow(int(n), float(e), float(rate)))
    return rows


def lonp_convergence_report(
    omega: MatrixMeasure,
    schur: SchurSequence,
    x: float,
    n_list: Sequence[int],
    data: SzegoData | None = None,
) -> ConvergenceReport:
    """Max-abs error of ``z^n Q_n(x)`` against its limit, per ``n``."""
    ns = sorted(int(n) for n in n_list)
    z = joukowski_inverse(x)
    limit = lonp_limit(omega, x, data)
    F = matrix_poly_recurrence(schur, ns[-1] + 1)
    P = lomp_sequence(schur, ns[-1], F)
    errs = []
    for n in ns:
        Qn = standard_lonp(P[n], schur, n)
        errs.append(float(np.max(np.abs(z ** n * Qn(complex(x)) - limit))))
    return ConvergenceReport(z, limit, _rows(ns, errs))


def vsof_asymptotics_check(
    m: CircleMeasure, schur: SchurSequence, z: complex, n_list: Sequence[int]
) -> ConvergenceReport:
    """
    Errors of the vector SOF limits::

        2^n z^n f_n(z)    -> (1,  i) D(0) / D(z),   0 < |z| < 1
        2^n z^(-n) f_n(z) -> (1, -i) D(0) D(z),     |z| > 1
    """
    z = complex(z)
    if abs(z) == 0.0 or abs(abs(z) - 1.0) <= UNIT_CIRCLE_TOL:
        raise DomainError("need 0 < |z| < 1 or |z| > 1")
    ns = sorted(int(n) for n in n_list)
    d0 = szego_function(m, 0.0)
    dz = szego_function(m, z)
    if abs(z) < 1:
        limit, power = np.array([1.0, 1j]) * d0 / dz, 1
    else:
        limit, power = np.array([1.0, -1j]) * d0 * dz, -1
    fs = vsof_sequence(schur, ns[-1])
    errs = [
        float(np.max(np.abs(2.0 ** n * z ** (power * n) * fs[n](z) - limit))) for n in ns
    ]
    return ConvergenceReport(z, limit, _rows(ns, errs))


def monic_limit_errors(m: CircleMeasure, schur: SchurSequence, z: complex, n_list):
    """``|phi_n^*(z) - D(0)/D(z)|`` for ``|z| < 1``."""
    target = szego_function(m, 0.0) / szego_function(m, z)
    ns = sorted(int(n) for n in n_list)
    phis = szego_sequence(schur, ns[-1])
    return [abs(reversed_poly(phis[n], n)(z) - target) for n in ns]
