"""
Measures on the unit circle and on [-1, 1], and their quadrature rules.

Circle integrals use the uniform midpoint rule ``theta_j = 2*pi*(j + 1/2)/N``,
which is the periodic trapezoid rule on a shifted grid: it integrates
``exp(i*k*theta)`` exactly for ``0 < |k| < N``. Shifting keeps every node away
from ``theta = 0, pi``, i.e. away from ``x = +-1`` on the interval side.

Interval integrals are never done in ``x``. With ``x = cos(theta)`` the
projected densities pick up a ``sin(theta)`` factor that cancels the
``1/sqrt(1 - x**2)`` endpoint blow-up, so a :class:`MatrixMeasure` stores its
densities with respect to ``d theta`` on ``(0, pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .laurent import as_laurent

TWO_PI = 2.0 * math.pi
DEFAULT_NODES = 4096

Weight = Callable[[np.ndarray], np.ndarray]


def _vectorize(weight: Weight) -> Weight:
    def wrapped(theta):
        theta = np.asarray(theta, dtype=float)
        return np.broadcast_to(np.asarray(weight(theta), dtype=float), theta.shape)

    return wrapped


@dataclass(frozen=True)
class CircleMeasure:
    """
    Measure ``w(theta) d theta + sum_j m_j delta(theta - theta_j)`` on [0, 2*pi).

    Parameters
    ----------
    weight : callable
        Vectorized density with respect to ``d theta``.
    atoms : sequence of (theta, mass)
        Point masses; angles distinct and in [0, 2*pi).
    nodes : int
        Number of quadrature nodes on the circle.
    signed : bool
        Accept a weight that goes negative. Only the positivity predicate and
        the matrix-measure construction make sense for such measures.
    """

    weight: Weight
    atoms: tuple = ()
    nodes: int = DEFAULT_NODES
    signed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weight", _vectorize(self.weight))
        atoms = tuple((float(t), float(m)) for t, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if self.nodes < 8:
            raise ValueError("need at least 8 quadrature nodes")
        angles = [t for t, _ in atoms]
        if any(not 0.0 <= t < TWO_PI for t in angles):
            raise ValueError("atom angles must lie in [0, 2*pi)")
        if len(set(angles)) != len(angles):
            raise ValueError("atom angles must be distinct")
        if any(not m > 0.0 for _, m in atoms) and not self.signed:
            raise ValueError("atom masses must be positive")
        w = self.values
        if not np.all(np.isfinite(w)):
            raise ValueError("weight is not finite on the quadrature grid")
        if not self.signed and np.any(w < 0.0):
            j = int(np.argmin(w))
            raise ValueError(
                f"weight is negative at theta={self.theta[j]:.6g} (w={w[j]:.3g})"
            )

    @cached_property
    def theta(self) -> np.ndarray:
        return TWO_PI * (np.arange(self.nodes) + 0.5) / self.nodes

    @cached_property
    def values(self) -> np.ndarray:
        return self.weight(self.theta)

    @property
    def step(self) -> float:
        return TWO_PI / self.nodes

    @cached_property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.theta)

    def integrate(self, fn: Callable[[np.ndarray], np.ndarray]):
        """Integral of ``fn(theta)`` against the measure (quadrature plus atoms)."""
        total = self.step * np.sum(fn(self.theta) * self.values)
        for t, m in self.atoms:
            total = total + m * fn(np.array(t))
        return total

    def with_nodes(self, nodes: int) -> CircleMeasure:
        return CircleMeasure(self.weight, self.atoms, nodes, self.signed)


def lebesgue(nodes: int = DEFAULT_NODES) -> CircleMeasure:
    return CircleMeasure(lambda t: np.ones_like(t), (), nodes)


def trig_poly_weight(
    cos_coeffs: Sequence[float],
    sin_coeffs: Sequence[float] = (),
    atoms=(),
    nodes: int = DEFAULT_NODES,
    signed: bool = False,
) -> CircleMeasure:
    """Weight ``c0 + sum_k c_k cos(k t) + s_k sin(k t)``; ``sin_coeffs[0]`` is ``s_1``."""
    c = np.asarray(cos_coeffs, dtype=float)
    s = np.asarray(sin_coeffs, dtype=float)

    def weight(t):
        out = np.full_like(t, c[0] if c.size else 0.0)
        for k in range(1, c.size):
            out = out + c[k] * np.cos(k * t)
        for k in range(s.size):
            out = out + s[k] * np.sin((k + 1) * t)
        return out

    return CircleMeasure(weight, atoms, nodes, signed)


def table_weight(samples, atoms=(), nodes=DEFAULT_NODES, signed=False) -> CircleMeasure:
    """
    Weight sampled at ``theta_k = 2*pi*k/M``, linearly interpolated and periodic.
    """
    ys = np.asarray(samples, dtype=float)
    if ys.ndim != 1 or ys.size < 2:
        raise ValueError("a weight table needs at least two samples")
    xs = TWO_PI * np.arange(ys.size) / ys.size

    def weight(t):
        return np.interp(np.mod(t, TWO_PI), xs, ys, period=TWO_PI)

    return CircleMeasure(weight, atoms, nodes, signed)


def circle_inner(f, g, m: CircleMeasure) -> complex:
    """``<f, g> = int f(e^{it}) conj(g(e^{it})) dmu(t)``."""
    f = as_laurent(f)
    g = as_laurent(g)
    z = m.points
    total = m.step * np.sum(f(z) * np.conj(g(z)) * m.values)
    for t, mass in m.atoms:
        zt = np.exp(1j * t)
        total += mass * f(zt) * np.conj(g(zt))
    return complex(total)


def vector_inner(f, g, m: CircleMeasure) -> np.ndarray:
    """2x2 Gram matrix ``int f g^* dmu`` of two pairs of Laurent polynomials."""
    return np.array([[circle_inner(fi, gj, m) for gj in g] for fi in f])


def symmetric_measure(m: CircleMeasure) -> CircleMeasure:
    """Reflection ``theta -> 2*pi - theta`` of the measure."""
    w = m.weight
    atoms = tuple((math.fmod(TWO_PI - t, TWO_PI), mass) for t, mass in m.atoms)
    return CircleMeasure(lambda t: w(TWO_PI - t), atoms, m.nodes, m.signed)


@dataclass(frozen=True)
class ProjectedMeasure:
    """
    Measure on [-1, 1] obtained by projecting half of the circle with x = cos(theta).

    ``theta_density(t)`` for ``t`` in (0, pi) is the density in ``d theta``;
    the density in ``dx`` is ``theta_density(arccos x) / sqrt(1 - x**2)``.
    """

    theta_density: Weight
    atoms: tuple = ()

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        return self.theta_density(np.arccos(x)) / np.sqrt(1.0 - x * x)


@dataclass(frozen=True)
class ProjectedPair:
    nu1: ProjectedMeasure
    nu2: ProjectedMeasure


def _split_atoms(atoms):
    """Upper-half atoms for nu1, lower-half atoms (reflected) for nu2.

    Atoms at theta = 0 or pi sit on both closed halves; each projection gets
    half the mass so that rho = nu1 + nu2 carries the full mass.
    """
    upper, lower = [], []
    for t, mass in atoms:
        x = math.cos(t)
        if t == 0.0 or t == math.pi:
            upper.append((x, mass / 2))
            lower.append((x, mass / 2))
        elif t < math.pi:
            upper.append((x, mass))
        else:
            lower.append((x, mass))
    return tuple(upper), tuple(lower)


def project_measures(m: CircleMeasure) -> ProjectedPair:
    w = m.weight
    upper, lower = _split_atoms(m.atoms)
    return ProjectedPair(
        ProjectedMeasure(lambda t: w(t), upper),
        ProjectedMeasure(lambda t: w(TWO_PI - np.asarray(t)), lower),
    )


@dataclass(frozen=True)
class MatrixMeasure:
    """
    Structured 2x2 measure on [-1, 1]::

        dOmega = 1/2 [[drho,               sqrt(1-x^2) dsigma],
                      [sqrt(1-x^2) dsigma, (1-x^2) drho      ]]

    ``rho_theta`` and ``sigma_theta`` are the densities of ``drho`` and
    ``dsigma`` with respect to ``d theta`` on (0, pi), i.e.
    ``rho'(cos t) * sin t``. Atoms are ``(x, 2x2 mass matrix)`` pairs.
    """

    rho_theta: Weight
    sigma_theta: Weight
    atoms: tuple = ()
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        object.__setattr__(self, "rho_theta", _vectorize(self.rho_theta))
        object.__setattr__(self, "sigma_theta", _vectorize(self.sigma_theta))
        atoms = tuple((float(x), np.array(a, dtype=float)) for x, a in self.atoms)
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_weights(cls, rho: Weight, sigma: Weight, atoms=(), nodes=DEFAULT_NODES):
        """Build from the ``dx`` densities ``rho'(x)`` and ``sigma'(x)``."""
        return cls(
            lambda t: rho(np.cos(t)) * np.sin(t),
            lambda t: sigma(np.cos(t)) * np.sin(t),
            atoms,
            nodes,
        )

    def rho_weight(self, x):
        x = np.asarray(x, dtype=float)
        return self.rho_theta(np.arccos(x)) / np.sqrt(1.0 - x * x)

    def sigma_weight(self, x):
        x = np.asarray(x, dtype=float)
        return self.sigma_theta(np.arccos(x)) / np.sqrt(1.0 - x * x)

    def density(self, x) -> np.ndarray:
        """``Omega'(x)`` for ``-1 < x < 1``, shape ``x.shape + (2, 2)``."""
        x = np.asarray(x, dtype=float)
        s = np.sqrt(1.0 - x * x)
        r = self.rho_weight(x)
        sg = self.sigma_weight(x)
        return 0.5 * np.stack(
            [np.stack([r, s * sg], -1), np.stack([s * sg, s * s * r], -1)], -2
        )

    @cached_property
    def grid(self):
        """Midpoint nodes on (0, pi) with densities ``dOmega/d theta``.

        Returns ``(x, weights)`` where ``weights[j]`` is the 2x2 matrix
        ``h * dOmega/d theta`` at node ``j``.
        """
        half = max(self.nodes // 2, 4)
        t = math.pi * (np.arange(half) + 0.5) / half
        s = np.sin(t)
        r = self.rho_theta(t)
        sg = self.sigma_theta(t)
        h = math.pi / half
        wts = 0.5 * h * np.stack(
            [np.stack([r, s * sg], -1), np.stack([s * sg, s * s * r], -1)], -2
        )
        return np.cos(t), wts, r, sg

    def integrate(self, fn) -> np.ndarray:
        """``int fn(x) dOmega(x)`` for a scalar-valued ``fn``."""
        x, wts, _, _ = self.grid
        total = np.einsum("j,jab->ab", fn(x), wts)
        for xa, mass in self.atoms:
            total = total + fn(np.array(xa)) * mass
        return total


def associated_matrix_measure(m: CircleMeasure) -> MatrixMeasure:
    """
    Matrix measure built from the two projections of ``m``:
    ``rho = nu1 + nu2`` and ``sigma = nu1 - nu2``.

    A circle atom of mass ``m`` at ``theta`` becomes the matrix atom
    ``m/2 * v v^T`` at ``x = cos(theta)``, ``v = (1, sin(theta))``.
    """
    w = m.weight

    def rho(t):
        return w(t) + w(TWO_PI - t)

    def sigma(t):
        return w(t) - w(TWO_PI - t)

    atoms = []
    for t, mass in m.atoms:
        v = np.array([1.0, math.sin(t)])
        atoms.append((math.cos(t), 0.5 * mass * np.outer(v, v)))
    return MatrixMeasure(rho, sigma, tuple(atoms), m.nodes)


def matrix_inner(F, G, omega: MatrixMeasure) -> np.ndarray:
    """``int F(x) dOmega(x) G(x)^T`` for 2x2 matrix polynomials ``F``, ``G``."""
    x, wts, _, _ = omega.grid
    fx = F(x)
    gx = G(x)
    total = np.einsum("jab,jbc,jdc->ad", fx, wts, gx)
    for xa, mass in omega.atoms:
        total = total + F(xa) @ mass @ G(xa).T
    return np.real_if_close(total)


@dataclass
class PositivityReport:
    ok: bool
    violations: list = field(default_factory=list)
    atom_violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "positive"
        lines = [f"{len(self.violations)} grid violation(s) of |sigma'| <= rho'"]
        for x, r, s in self.violations[:5]:
            lines.append(f"  x={x:.6g}: rho'={r:.6g}, sigma'={s:.6g}")
        for x, ev in self.atom_violations:
            lines.append(f"  atom at x={x:.6g} has eigenvalue {ev:.3g}")
        return "\n".join(lines)


def positivity_check(omega: MatrixMeasure, tol: float = 0.0) -> PositivityReport:
    """
    Check ``|sigma'| <= rho'`` on the quadrature grid and that every atom
    matrix is nonnegative definite.
    """
    x, _, r, sg = omega.grid
    bad = np.flatnonzero(np.abs(sg) > r + tol * np.maximum(np.abs(r), 1.0))
    s = np.sqrt(1.0 - x * x)
    violations = [(float(x[j]), float(r[j] / s[j]), float(sg[j] / s[j])) for j in bad]
    atom_bad = []
    for xa, mass in omega.atoms:
        ev = float(np.min(np.linalg.eigvalsh(mass)))
        # rank-one atoms have a zero eigenvalue that round-off can push below 0
        slack = tol + 8 * np.finfo(float).eps * float(np.max(np.abs(mass)))
        if ev < -slack:
            atom_bad.append((xa, ev))
    return PositivityReport(not violations and not atom_bad, violations, atom_bad)
