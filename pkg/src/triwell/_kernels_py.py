"""Pure NumPy implementations of the grid kernels.

These are the reference implementations; `triwell._kernels` is a compiled
Cython twin with identical signatures. `triwell.backend` picks one at import.
"""

import numpy as np

BACKEND = "numpy"


def secular_det_grid(ks, gamma, b, big_gamma):
    """Secular determinant on a grid of real k values.

    Evaluates the closed-form determinant of the boundary-condition matrix
    for every k in `ks`. All arithmetic is real, which also guarantees an
    exactly real result on the real axis.
    """
    ks = np.asarray(ks, dtype=np.float64)
    g2 = gamma * gamma
    e = np.exp(-2.0 * ks * b)
    c2 = (big_gamma + 2.0 * ks) * (1.0 + g2)
    c1 = -2.0 * big_gamma * (g2 + 1.0 - 2.0 * ks)
    c0 = (big_gamma - 2.0 * ks) * (g2 + (2.0 * ks - 1.0) ** 2)
    return (c2 * e + c1) * e + c0


def wavefunction_grid(x, k, r, rho1, rho2, a_coef, b_coef, half_spacing):
    """Piecewise bound-state wavefunction sampled on `x`.

    Region layout: decaying exponentials outside the outer wells at
    +-half_spacing, cosh/sinh combinations between them. Boundary points
    are assigned to the inner branches; continuity makes the choice
    irrelevant for the value.
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.empty(x.shape, dtype=np.complex128)
    left = x < -half_spacing
    inner_l = (~left) & (x < 0.0)
    right = x > half_spacing
    inner_r = (~right) & (x >= 0.0)
    out[left] = a_coef * np.exp(k * x[left])
    out[inner_l] = 2.0 * (r * np.cosh(k * x[inner_l]) + rho1 * np.sinh(k * x[inner_l]))
    out[inner_r] = 2.0 * (r * np.cosh(k * x[inner_r]) + rho2 * np.sinh(k * x[inner_r]))
    out[right] = b_coef * np.exp(-k * x[right])
    return out


def intensity_grid(t, ksq, amps, psi_x):
    """|Psi(t, x)|^2 for a modal superposition.

    Parameters
    ----------
    t : (nt,) float array of times
    ksq : (m,) complex array of squared eigenvalues k_i^2
    amps : (m,) complex amplitudes c_i / <Psi~_i|Psi_i>
    psi_x : (m, nx) complex mode samples on the x grid

    Returns
    -------
    (nt, nx) float array of intensities.
    """
    t = np.asarray(t, dtype=np.float64)
    ksq = np.asarray(ksq, dtype=np.complex128)
    amps = np.asarray(amps, dtype=np.complex128)
    psi_x = np.asarray(psi_x, dtype=np.complex128)
    phases = np.exp(1j * np.outer(t, ksq))  # (nt, m)
    field = phases @ (amps[:, None] * psi_x)  # (nt, nx)
    return np.abs(field) ** 2
