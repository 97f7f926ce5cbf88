"""Closed-form machinery of the PT-symmetric triple delta-well model.

Three attractive delta wells sit at x = -b, 0, +b. The outer wells have
complex strengths 1 + i*gamma (gain) and 1 - i*gamma (loss); the middle
well has real strength big_gamma. Bound states decay like exp(-k|x|) with
energy E = -k^2 and Re(k) > 0. Matching the piecewise ansatz at the three
wells gives a 3x3 linear system whose determinant is available in closed
form; everything else (mode coefficients, wavefunctions, c-norms) follows
analytically from a root k of that determinant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import DegenerateCoefficients

#: below this gain/loss strength the closed-form coefficients of the second
#: mode lose ~6 digits and the analytic limit branch must be used instead
GAMMA_DEGENERATE = 1e-6

#: scaled-residual tolerance for "k is a root" preconditions
ROOT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless model parameters.

    gamma : gain/loss strength of the outer wells (>= 0; the mirror system
        with gamma < 0 is excluded to keep one sign convention)
    b : half-spacing of the outer wells (> 0)
    big_gamma : strength of the middle well (> 0)
    """

    gamma: float
    b: float
    big_gamma: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"b must be positive, got {self.b}")
        if not self.big_gamma > 0:
            raise ValueError(f"big_gamma must be positive, got {self.big_gamma}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")


@dataclass(frozen=True)
class Mode:
    """One bound state: eigenvalue k plus its coefficient vector.

    The coefficients follow the r = 1 normalization (except for the
    small-gamma second mode, which carries the rescaled limit vector with
    r = 0), so Psi(0) = 2r is real and non-negative. The c-norm
    <Psi~|Psi> = integral of Psi^2 is stored but never divided out here;
    the time-evolution formula applies it explicitly.
    """

    k: complex
    r: complex
    rho1: complex
    rho2: complex
    a_coef: complex
    b_coef: complex
    c_norm: complex


def _require_valid_k(k: complex):
    if not (k.real if isinstance(k, complex) else k) > 0:
        raise ValueError(f"Re(k) must be positive, got {k}")


def build_matrix(k: complex, p: SystemParams) -> np.ndarray:
    """Boundary-condition matrix M(k) acting on (r, rho1, rho2).

    Rows encode the derivative-jump conditions at x = -b, +b and 0, in
    that order, with kappa0 = 1 + i*gamma. det M = 0 is the eigenvalue
    condition.
    """
    _require_valid_k(k)
    kap = 1.0 + 1j * p.gamma
    kapc = 1.0 - 1j * p.gamma
    e = cmath.exp(-2.0 * k * p.b)
    m = np.array([
        [kap * e + kap - 2 * k, kap * e - kap + 2 * k, 0.0],
        [kapc * e + kapc - 2 * k, 0.0, -kapc * e + kapc - 2 * k],
        [-p.big_gamma, k, -k],
    ], dtype=complex)
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError(f"non-finite matrix entry at k={k}")
    return m


# ---------------------------------------------------------------------------
# secular determinant and its derivatives
#
# The determinant has the form f = c2*E^2 + c1*E + c0 with E = exp(-2kb) and
# coefficients polynomial (degree <= 3 overall, <= 1 for c2 and c1) in k:
#
#   c2 = (big_gamma + 2k)(1 + gamma^2)
#   c1 = -2 big_gamma (gamma^2 + 1 - 2k)
#   c0 = (big_gamma - 2k)(gamma^2 + (2k - 1)^2)
#
# Since dE/dk = -2bE, every k-derivative of f is again of the form
# E^2*() + E*() + (), built from the c's and their k-derivatives. The same
# evaluator applied to the gamma- or big_gamma-differentiated coefficient
# set yields the mixed parameter derivatives (those operators commute with
# d/dk and E carries no gamma or big_gamma dependence).
# ---------------------------------------------------------------------------


def _coeff_sets(k, p: SystemParams):
    """Coefficient sets (value, d/dk, ...) of f and of df/dgamma, df/dGamma.

    Each set is (c2, c2k, c1, c1k, c0, c0k, c0kk, c0kkk); higher
    k-derivatives of c2 and c1 vanish.
    """
    g, G = p.gamma, p.big_gamma
    g2 = g * g
    P = 1.0 + g2
    Q = g2 + 1.0 - 2.0 * k
    R = g2 + (2.0 * k - 1.0) ** 2
    base = (
        (G + 2.0 * k) * P, 2.0 * P,
        -2.0 * G * Q, 4.0 * G,
        (G - 2.0 * k) * R, -2.0 * R + 4.0 * (2.0 * k - 1.0) * (G - 2.0 * k),
        -16.0 * (2.0 * k - 1.0) + 8.0 * (G - 2.0 * k), -48.0,
    )
    dgamma = (
        2.0 * g * (G + 2.0 * k), 4.0 * g,
        -4.0 * G * g, 0.0,
        2.0 * g * (G - 2.0 * k), -4.0 * g,
        0.0, 0.0,
    )
    dG = (
        P, 0.0,
        -2.0 * Q, 4.0,
        R, 4.0 * (2.0 * k - 1.0),
        8.0, 0.0,
    )
    return base, dgamma, dG


def _eval_set(cs, e, b):
    """(f, f_k, f_kk, f_kkk) for one coefficient set at E = e."""
    c2, c2k, c1, c1k, c0, c0k, c0kk, c0kkk = cs
    e2 = e * e
    f = c2 * e2 + c1 * e + c0
    fk = e2 * (c2k - 4.0 * b * c2) + e * (c1k - 2.0 * b * c1) + c0k
    fkk = e2 * (16.0 * b * b * c2 - 8.0 * b * c2k) + e * (4.0 * b * b * c1 - 4.0 * b * c1k) + c0kk
    fkkk = (e2 * (-64.0 * b ** 3 * c2 + 48.0 * b * b * c2k)
            + e * (-8.0 * b ** 3 * c1 + 12.0 * b * b * c1k) + c0kkk)
    return f, fk, fkk, fkkk


@dataclass(frozen=True)
class DetPartials:
    """Secular determinant with every partial the coalescence solver needs.

    k-derivatives up to third order, first derivatives in gamma, b and
    big_gamma of (f, f_k, f_kk), and term-magnitude scales for forming
    relative residuals.
    """

    f: complex
    fk: complex
    fkk: complex
    fkkk: complex
    fg: complex
    fkg: complex
    fkkg: complex
    fb: complex
    fkb: complex
    fkkb: complex
    fG: complex
    fkG: complex
    fkkG: complex
    scale_f: float
    scale_fk: float
    scale_fkk: float


def secular_det_partials(k, p: SystemParams) -> DetPartials:
    """Evaluate the determinant and its partial derivatives at k.

    Accepts real or complex k with Re(k) > 0.
    """
    _require_valid_k(complex(k))
    b = p.b
    e = cmath.exp(-2.0 * complex(k) * b) if isinstance(k, complex) else math.exp(-2.0 * k * b)
    base, dgamma, dG = _coeff_sets(k, p)
    f, fk, fkk, fkkk = _eval_set(base, e, b)
    fg, fkg, fkkg, _ = _eval_set(dgamma, e, b)
    fG, fkG, fkkG, _ = _eval_set(dG, e, b)

    # explicit b-derivatives (E depends on b: dE/db = -2kE)
    c2, c2k, c1, c1k, c0, c0k, c0kk, _ = base
    e2 = e * e
    u = c2k - 4.0 * b * c2
    v = c1k - 2.0 * b * c1
    w = 16.0 * b * b * c2 - 8.0 * b * c2k
    z = 4.0 * b * b * c1 - 4.0 * b * c1k
    fb = -2.0 * k * e * (2.0 * c2 * e + c1)
    fkb = -e2 * (4.0 * k * u + 4.0 * c2) - e * (2.0 * k * v + 2.0 * c1)
    fkkb = (-4.0 * k * e2 * w + e2 * (32.0 * b * c2 - 8.0 * c2k)
            - 2.0 * k * e * z + e * (8.0 * b * c1 - 4.0 * c1k))

    ae, ae2 = abs(e), abs(e) ** 2
    scale_f = abs(c2) * ae2 + abs(c1) * ae + abs(c0)
    scale_fk = ae2 * abs(u) + ae * abs(v) + abs(c0k)
    scale_fkk = ae2 * abs(w) + ae * abs(z) + abs(c0kk)
    return DetPartials(f, fk, fkk, fkkk, fg, fkg, fkkg, fb, fkb, fkkb,
                       fG, fkG, fkkG, scale_f, scale_fk, scale_fkk)


def secular_det(k, p: SystemParams) -> complex:
    """Closed-form secular determinant whose roots are the eigenvalues.

    Real for real k (all coefficients are real), so non-real roots occur
    in conjugate pairs.
    """
    _require_valid_k(complex(k))
    if isinstance(k, complex) and k.imag != 0.0:
        e = cmath.exp(-2.0 * k * p.b)
    else:
        k = k.real if isinstance(k, complex) else k
        e = math.exp(-2.0 * k * p.b)
    g2 = p.gamma * p.gamma
    G = p.big_gamma
    c2 = (G + 2.0 * k) * (1.0 + g2)
    c1 = -2.0 * G * (g2 + 1.0 - 2.0 * k)
    c0 = (G - 2.0 * k) * (g2 + (2.0 * k - 1.0) ** 2)
    return complex((c2 * e + c1) * e + c0)


def secular_det_scale(k, p: SystemParams) -> float:
    """Sum of term magnitudes of the determinant; reference for residuals."""
    e = abs(cmath.exp(-2.0 * complex(k) * p.b))
    g2 = p.gamma * p.gamma
    G = p.big_gamma
    c2 = (G + 2.0 * complex(k)) * (1.0 + g2)
    c1 = -2.0 * G * (g2 + 1.0 - 2.0 * complex(k))
    c0 = (G - 2.0 * complex(k)) * (g2 + (2.0 * complex(k) - 1.0) ** 2)
    return abs(c2) * e * e + abs(c1) * e + abs(c0)


def secular_det_derivs(k, p: SystemParams, order: int) -> complex:
    """First or second k-derivative of the secular determinant."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    parts = secular_det_partials(k, p)
    return complex(parts.fk if order == 1 else parts.fkk)


def gamma0_factors(k, p: SystemParams) -> tuple[complex, complex]:
    """The two factors of the hermitian-limit determinant.

    At gamma = 0 the determinant factorizes as factor1 * factor2 with
    factor1 = e^(-2kb) + 2k - 1 (whose root is the second, middle
    eigenvalue, independent of big_gamma) and
    factor2 = big_gamma * factor1 + 2k (e^(-2kb) - 2k + 1).
    """
    e = cmath.exp(-2.0 * complex(k) * p.b)
    f1 = e + 2.0 * k - 1.0
    f2 = p.big_gamma * f1 + 2.0 * k * (e - 2.0 * k + 1.0)
    return complex(f1), complex(f2)


# ---------------------------------------------------------------------------
# mode coefficients
# ---------------------------------------------------------------------------


def _fill_outer(k, r, rho1, rho2, b):
    e2kb = cmath.exp(2.0 * complex(k) * b)
    a_coef = r * (1.0 + e2kb) + rho1 * (1.0 - e2kb)
    b_coef = r * (1.0 + e2kb) + rho2 * (e2kb - 1.0)
    return a_coef, b_coef


def _c_norm_parts(k, r, rho1, rho2, a_coef, b_coef, b) -> complex:
    """Closed-form integral of Psi^2 (no conjugation) over the real line."""
    k = complex(k)
    e = cmath.exp(-2.0 * k * b)
    total = (a_coef * a_coef + b_coef * b_coef) * e / (2.0 * k)

    def antideriv(x, rho):
        return ((r * r + rho * rho) * cmath.sinh(2.0 * k * x) / (4.0 * k)
                + r * rho * cmath.cosh(2.0 * k * x) / (2.0 * k)
                + (r * r - rho * rho) * x / 2.0)

    total += 4.0 * (antideriv(0.0, rho1) - antideriv(-b, rho1))
    total += 4.0 * (antideriv(b, rho2) - antideriv(0.0, rho2))
    return total


def mode_coefficients(k, p: SystemParams) -> Mode:
    """Coefficient vector (r=1, rho1, rho2) of the mode at eigenvalue k.

    k must be a root of the secular determinant (scaled residual below
    1e-10). Raises DegenerateCoefficients when gamma is below the
    degeneracy threshold at the second eigenvalue, where both closed-form
    denominators vanish; use mode_coefficients_gamma0 there.
    """
    k = complex(k)
    _require_valid_k(k)
    res = abs(secular_det(k, p)) / secular_det_scale(k, p)
    if res > ROOT_RESIDUAL_TOL:
        raise ValueError(f"k={k} is not a root (scaled residual {res:.2e})")

    kap = 1.0 + 1j * p.gamma
    kapc = 1.0 - 1j * p.gamma
    e = cmath.exp(-2.0 * k * p.b)
    den1 = kap * e - kap + 2.0 * k
    den2 = kapc * e - kapc + 2.0 * k
    if p.gamma < GAMMA_DEGENERATE:
        factor1 = abs(e + 2.0 * k - 1.0)
        if factor1 < 1e-6 * (abs(e) + 1.0 + 2.0 * abs(k)):
            raise DegenerateCoefficients(
                f"second-eigenvalue coefficients are singular for gamma={p.gamma}; "
                "use mode_coefficients_gamma0")
    rho1 = -(kap * e + kap - 2.0 * k) / den1
    rho2 = (kapc * e + kapc - 2.0 * k) / den2
    r = 1.0 + 0.0j
    a_coef, b_coef = _fill_outer(k, r, rho1, rho2, p.b)
    cn = _c_norm_parts(k, r, rho1, rho2, a_coef, b_coef, p.b)
    return Mode(k=k, r=r, rho1=rho1, rho2=rho2, a_coef=a_coef, b_coef=b_coef, c_norm=cn)


def mode_coefficients_gamma0(k2, p: SystemParams) -> Mode:
    """Rescaled limit eigenvector of the second mode as gamma -> 0.

    The raw coefficients blow up like 1/gamma; multiplying by gamma gives
    the finite limit -i (1 - 2 k2)/k2 * (0, 1, 1), which is the vector
    stored here. The -i factor makes the real part of Psi even and the
    imaginary part odd, as PT symmetry requires. k2 must satisfy the
    second-factor equation e^(-2 k2 b) + 2 k2 - 1 = 0.
    """
    k2 = complex(k2)
    _require_valid_k(k2)
    e = cmath.exp(-2.0 * k2 * p.b)
    factor1 = e + 2.0 * k2 - 1.0
    if abs(factor1) > 1e-8 * (abs(e) + 1.0 + 2.0 * abs(k2)):
        raise ValueError(
            f"k2={k2} does not satisfy the second-factor equation "
            f"(residual {abs(factor1):.2e})")
    rho = -1j * (1.0 - 2.0 * k2) / k2
    r = 0.0 + 0.0j
    a_coef, b_coef = _fill_outer(k2, r, rho, rho, p.b)
    cn = _c_norm_parts(k2, r, rho, rho, a_coef, b_coef, p.b)
    return Mode(k=k2, r=r, rho1=rho, rho2=rho, a_coef=a_coef, b_coef=b_coef, c_norm=cn)


# ---------------------------------------------------------------------------
# wavefunctions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseWavefunction:
    """The four-region analytic form of Psi(x), evaluable anywhere.

    Regions: A e^(kx) for x < -b, 2(r cosh kx + rho1 sinh kx) on (-b, 0),
    2(r cosh kx + rho2 sinh kx) on (0, b), B e^(-kx) for x > b. Continuity
    at the boundaries holds by construction of the coefficients.
    """

    mode: Mode
    params: SystemParams

    def __call__(self, x):
        m = self.mode
        if np.isscalar(x):
            return complex(kernels.wavefunction_grid(
                np.array([float(x)]), complex(m.k), complex(m.r), complex(m.rho1),
                complex(m.rho2), complex(m.a_coef), complex(m.b_coef), self.params.b)[0])
        return kernels.wavefunction_grid(
            np.asarray(x, dtype=float), complex(m.k), complex(m.r), complex(m.rho1),
            complex(m.rho2), complex(m.a_coef), complex(m.b_coef), self.params.b)

    def _branch_derivative(self, x: float, region: int) -> complex:
        m, k = self.mode, complex(self.mode.k)
        if region == 0:
            return m.a_coef * k * cmath.exp(k * x)
        if region == 1:
            return 2.0 * k * (m.r * cmath.sinh(k * x) + m.rho1 * cmath.cosh(k * x))
        if region == 2:
            return 2.0 * k * (m.r * cmath.sinh(k * x) + m.rho2 * cmath.cosh(k * x))
        return -m.b_coef * k * cmath.exp(-k * x)

    def _region(self, x: float) -> int:
        b = self.params.b
        if x < -b:
            return 0
        if x < 0.0:
            return 1
        if x <= b:
            return 2
        return 3

    def derivative(self, x):
        """dPsi/dx; at a well position the inner-branch value is returned."""
        if np.isscalar(x):
            return self._branch_derivative(float(x), self._region(float(x)))
        return np.array([self._branch_derivative(float(xi), self._region(float(xi)))
                         for xi in np.asarray(x, dtype=float)])

    def derivative_jump(self, x0: float) -> complex:
        """Psi'(x0+) - Psi'(x0-) across a region boundary (one of -b, 0, b)."""
        b = self.params.b
        boundaries = {-b: (0, 1), 0.0: (1, 2), b: (2, 3)}
        if x0 not in boundaries:
            raise ValueError(f"x0 must be one of -b, 0, b; got {x0}")
        left, right = boundaries[x0]
        return self._branch_derivative(x0, right) - self._branch_derivative(x0, left)


def eval_wavefunction(m: Mode, p: SystemParams, x):
    """Psi(x) for the mode; scalar in, scalar out (arrays likewise)."""
    return PiecewiseWavefunction(m, p)(x)


def c_norm(m: Mode, p: SystemParams) -> complex:
    """The bilinear self-product <Psi~|Psi> = integral of Psi(x)^2 dx.

    Closed-form piecewise antiderivatives; exact cancellation behavior
    matters near an exceptional point where the value tends to zero.
    Requires Re(k) > 0 for convergence.
    """
    _require_valid_k(complex(m.k))
    return _c_norm_parts(m.k, m.r, m.rho1, m.rho2, m.a_coef, m.b_coef, p.b)
