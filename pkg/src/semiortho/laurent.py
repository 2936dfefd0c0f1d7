"""
Dense complex polynomials and Laurent polynomials.

Both types keep an immutable ``numpy`` coefficient vector, lowest power first.
Only exact zeros are trimmed; nothing here rounds.
"""

from __future__ import annotations

import numbers

import numpy as np


def _frozen(coeffs):
    arr = np.array(coeffs, dtype=complex).ravel()
    arr.setflags(write=False)
    return arr


class ComplexPoly:
    """
    Polynomial with complex coefficients, ``coeffs[k]`` multiplying ``z**k``.

    Parameters
    ----------
    coeffs : array_like
        Coefficients in increasing powers. Trailing exact zeros are dropped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=complex).ravel()
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        self.coeffs = _frozen(arr)

    @classmethod
    def one(cls):
        return cls([1.0])

    @classmethod
    def z(cls):
        return cls([0.0, 1.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def coefficient(self, k: int) -> complex:
        if 0 <= k < len(self.coeffs):
            return complex(self.coeffs[k])
        return 0j

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def __add__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return ComplexPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce_poly(other))

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return ComplexPoly(self.coeffs * other)
        other = _coerce_poly(other)
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> ComplexPoly:
        """Multiply by ``z**k`` for ``k >= 0``."""
        if k < 0:
            raise ValueError("use LaurentPoly for negative shifts")
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=complex), self.coeffs]))

    def conj(self) -> ComplexPoly:
        return ComplexPoly(self.coeffs.conj())

    def allclose(self, other, atol=1e-12) -> bool:
        return _max_diff(self.coeffs, _coerce_poly(other).coeffs) <= atol

    def __repr__(self):
        return f"ComplexPoly({np.array2string(self.coeffs, precision=6)})"


def _coerce_poly(p):
    if isinstance(p, ComplexPoly):
        return p
    if isinstance(p, numbers.Number):
        return ComplexPoly([p])
    raise TypeError(f"cannot use {type(p).__name__} as a ComplexPoly")


def _max_diff(a, b):
    n = max(len(a), len(b))
    pa = np.zeros(n, dtype=complex)
    pb = np.zeros(n, dtype=complex)
    pa[: len(a)] = a
    pb[: len(b)] = b
    return float(np.max(np.abs(pa - pb)))


def reversed_poly(p: ComplexPoly, n: int) -> ComplexPoly:
    """
    Reversed polynomial ``z**n * conj(p)(1/z)``.

    Raises
    ------
    ValueError
        If ``deg p > n``.
    """
    if n < 0 or p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds reversal bound {n}")
    padded = np.zeros(n + 1, dtype=complex)
    padded[: len(p.coeffs)] = p.coeffs
    return ComplexPoly(padded[::-1].conj())


class LaurentPoly:
    """
    Laurent polynomial ``sum_k coeffs[k] * z**(min_power + k)``.

    Exact zeros at both ends are trimmed and ``min_power`` adjusted, so two
    equal Laurent polynomials have identical representations. The zero
    polynomial is stored as ``min_power=0, coeffs=[0]``.
    """

    __slots__ = ("min_power", "coeffs")

    def __init__(self, min_power: int, coeffs):
        arr = np.array(coeffs, dtype=complex).ravel()
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            self.min_power = 0
            self.coeffs = _frozen(np.zeros(1, dtype=complex))
        else:
            self.min_power = int(min_power) + int(nz[0])
            self.coeffs = _frozen(arr[nz[0] : nz[-1] + 1])

    @classmethod
    def from_poly(cls, p: ComplexPoly, shift: int = 0) -> LaurentPoly:
        """``z**shift * p(z)``."""
        return cls(shift, p.coeffs)

    @classmethod
    def monomial(cls, k: int, c=1.0) -> LaurentPoly:
        return cls(k, [c])

    @property
    def max_power(self) -> int:
        return self.min_power + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def coefficient(self, k: int) -> complex:
        i = k - self.min_power
        if 0 <= i < len(self.coeffs):
            return complex(self.coeffs[i])
        return 0j

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of ``z**lo ... z**hi`` as a dense vector."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        for k in range(max(lo, self.min_power), min(hi, self.max_power) + 1):
            out[k - lo] = self.coeffs[k - self.min_power]
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polyval(self.coeffs[::-1], z) * z ** self.min_power

    def _binary(self, other, sign):
        other = _coerce_laurent(other)
        lo = min(self.min_power, other.min_power)
        hi = max(self.max_power, other.max_power)
        return LaurentPoly(lo, self.dense(lo, hi) + sign * other.dense(lo, hi))

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __rsub__(self, other):
        return _coerce_laurent(other) - self

    def __neg__(self):
        return LaurentPoly(self.min_power, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return LaurentPoly(self.min_power, self.coeffs * other)
        other = _coerce_laurent(other)
        return LaurentPoly(
            self.min_power + other.min_power, np.convolve(self.coeffs, other.coeffs)
        )

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, numbers.Number):
            return NotImplemented
        return LaurentPoly(self.min_power, self.coeffs / c)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``z**k``."""
        return LaurentPoly(self.min_power + k, self.coeffs)

    def conj_reflect(self) -> LaurentPoly:
        """``conj(f)(1/z)``: conjugate every coefficient and send ``k -> -k``."""
        return LaurentPoly(-self.max_power, self.coeffs[::-1].conj())

    def reflection_defect(self) -> float:
        """Max coefficient deviation from ``conj(f)(1/z) == f``."""
        return float(np.max(np.abs((self - self.conj_reflect()).coeffs)))

    def allclose(self, other, atol=1e-12) -> bool:
        return float(np.max(np.abs((self - _coerce_laurent(other)).coeffs))) <= atol

    def __repr__(self):
        return (
            f"LaurentPoly(min_power={self.min_power}, "
            f"coeffs={np.array2string(self.coeffs, precision=6)})"
        )


def _coerce_laurent(p):
    if isinstance(p, LaurentPoly):
        return p
    if isinstance(p, ComplexPoly):
        return LaurentPoly.from_poly(p)
    if isinstance(p, numbers.Number):
        return LaurentPoly(0, [p])
    raise TypeError(f"cannot use {type(p).__name__} as a LaurentPoly")


def as_laurent(p) -> LaurentPoly:
    return _coerce_laurent(p)
