"""Small 2x2 matrix helpers shared across modules."""

import numpy as np

I2 = np.eye(2)
J = np.array([[0.0, 1.0], [-1.0, 0.0]])
# projector onto the first coordinate; leading coefficient of F_n
C = np.array([[1.0, 0.0], [0.0, 0.0]])
IPLUS = I2 + 1j * J
IMINUS = I2 - 1j * J


def adj(a):
    """Adjugate of a 2x2 matrix."""
    a = np.asarray(a)
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])


def max_abs(a):
    return float(np.max(np.abs(a))) if np.size(a) else 0.0
