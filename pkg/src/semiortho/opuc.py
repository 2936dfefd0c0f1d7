"""
Monic orthogonal polynomials on the unit circle driven by Schur parameters.

The recurrence is ``phi_n = z phi_{n-1} + a_n phi_{n-1}^*`` with ``phi_0 = 1``
and ``a_0 = 1``. Schur sequences here have a finite head followed by zeros,
which is exactly the Bernstein-Szego class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .laurent import ComplexPoly, reversed_poly
from .measures import CircleMeasure, circle_inner


class AdmissibilityError(ValueError):
    """A measure or parameter set falls outside the class the algorithms need."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class SchurSequence:
    """
    Schur parameters ``a_1, ..., a_K`` (``a_0 = 1`` implicit, ``a_n = 0`` for n > K).

    Parameters
    ----------
    head : sequence of complex
        ``a_1`` first. Each entry must satisfy ``|a| < 1``.
    eps0 : float
        Total mass ``<1, 1>`` of the underlying measure.
    """

    head: tuple = ()
    eps0: float = 2 * math.pi

    def __post_init__(self):
        head = tuple(complex(a) for a in self.head)
        for n, a in enumerate(head, start=1):
            if not abs(a) < 1.0:
                raise AdmissibilityError(f"|a_{n}| = {abs(a):.17g} is not < 1", n)
        if not self.eps0 > 0.0:
            raise ValueError("eps0 must be positive")
        object.__setattr__(self, "head", head)

    def __getitem__(self, n: int) -> complex:
        if n < 0:
            raise IndexError("Schur parameters are indexed from 0")
        if n == 0:
            return 1.0 + 0j
        if n <= len(self.head):
            return self.head[n - 1]
        return 0j

    def __len__(self):
        return len(self.head)

    def values(self, n_max: int) -> np.ndarray:
        """``a_0, ..., a_{n_max}`` as an array."""
        return np.array([self[n] for n in range(n_max + 1)], dtype=complex)

    @property
    def is_real(self) -> bool:
        return all(a.imag == 0.0 for a in self.head)

    @classmethod
    def random(cls, rng: np.random.Generator, max_len=8, max_abs=0.8, eps0=2 * math.pi):
        """Random head of length 1..max_len with ``|a_n| <= max_abs``."""
        k = int(rng.integers(1, max_len + 1))
        r = max_abs * rng.random(k)
        phase = 2 * math.pi * rng.random(k)
        return cls(tuple(r * np.exp(1j * phase)), eps0)


@dataclass(frozen=True)
class OpucSequences:
    phis: list
    b: np.ndarray
    eps: np.ndarray
    kappa: np.ndarray


def reversed(p: ComplexPoly, n: int) -> ComplexPoly:  # noqa: A001
    """Reversed polynomial ``z**n * conj(p)(1/z)`` of degree bound ``n``."""
    return reversed_poly(p, n)


def szego_sequence(schur: SchurSequence, N: int) -> list:
    """Monic ``phi_0, ..., phi_N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    phis = [ComplexPoly.one()]
    for n in range(1, N + 1):
        prev = phis[-1]
        phis.append(prev.shift(1) + schur[n] * reversed_poly(prev, n - 1))
    return phis


def derived_sequences(schur: SchurSequence, N: int) -> OpucSequences:
    """
    The polynomials together with ``b_n`` (coefficient of ``z**(n-1)`` in
    ``phi_n``), ``eps_n = <phi_n, phi_n>`` and ``kappa_n = eps_n**-0.5``.
    """
    phis = szego_sequence(schur, N)
    a = schur.values(N)
    b = np.zeros(N + 1, dtype=complex)
    eps = np.empty(N + 1)
    eps[0] = schur.eps0
    for n in range(1, N + 1):
        b[n] = b[n - 1] + a[n] * np.conj(a[n - 1])
        eps[n] = eps[n - 1] * (1.0 - abs(a[n]) ** 2)
    return OpucSequences(phis, b, eps, eps ** -0.5)


def eps_limit(schur: SchurSequence) -> float:
    """``lim eps_n``; exact for a finite head."""
    return float(schur.eps0 * np.prod([1.0 - abs(a) ** 2 for a in schur.head]))


def schur_from_measure(measure: CircleMeasure, N: int, tol: float = 1e-10) -> SchurSequence:
    """
    Recover ``a_1, ..., a_N`` from a measure by quadrature.

    Builds ``phi_n`` with the Szego recurrence and reads off
    ``a_{n+1} = -<z phi_n, phi_n^*> / eps_n``. The norms ``eps_n`` are
    recomputed by quadrature at every step rather than propagated, so the
    output does not inherit recurrence drift.

    Raises
    ------
    AdmissibilityError
        When some ``|a_n| >= 1 - tol``: the measure has finite support or the
        quadrature cannot resolve it.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    eps0 = circle_inner(1.0, 1.0, measure).real
    if not eps0 > 0.0:
        raise AdmissibilityError("measure has nonpositive total mass", 0)
    phi = ComplexPoly.one()
    eps = eps0
    head = []
    for n in range(N):
        star = reversed_poly(phi, n)
        a = -circle_inner(phi.shift(1), star, measure) / eps
        if abs(a) >= 1.0 - tol:
            raise AdmissibilityError(
                f"computed |a_{n + 1}| = {abs(a):.6g} reaches the unit circle; "
                "measure is not admissible at this resolution",
                n + 1,
            )
        head.append(a)
        phi = phi.shift(1) + a * star
        eps = circle_inner(phi, phi, measure).real
    return SchurSequence(tuple(head), eps0)
