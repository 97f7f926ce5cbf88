# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels; signature-compatible with triwell._kernels_py."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()

BACKEND = "cython"


cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double cabs(double complex) nogil
    double complex ccosh(double complex) nogil
    double complex csinh(double complex) nogil


def secular_det_grid(ks, double gamma, double b, double big_gamma):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] karr = np.ascontiguousarray(ks, dtype=np.float64)
    cdef Py_ssize_t n = karr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double g2 = gamma * gamma
    cdef double k, e, c2, c1, c0
    cdef Py_ssize_t i
    for i in range(n):
        k = karr[i]
        e = exp(-2.0 * k * b)
        c2 = (big_gamma + 2.0 * k) * (1.0 + g2)
        c1 = -2.0 * big_gamma * (g2 + 1.0 - 2.0 * k)
        c0 = (big_gamma - 2.0 * k) * (g2 + (2.0 * k - 1.0) * (2.0 * k - 1.0))
        out[i] = (c2 * e + c1) * e + c0
    return out


def wavefunction_grid(x, double complex k, double complex r,
                      double complex rho1, double complex rho2,
                      double complex a_coef, double complex b_coef,
                      double half_spacing):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xarr = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xarr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double xi
    cdef Py_ssize_t i
    for i in range(n):
        xi = xarr[i]
        if xi < -half_spacing:
            out[i] = a_coef * cexp(k * xi)
        elif xi < 0.0:
            out[i] = 2.0 * (r * ccosh(k * xi) + rho1 * csinh(k * xi))
        elif xi <= half_spacing:
            out[i] = 2.0 * (r * ccosh(k * xi) + rho2 * csinh(k * xi))
        else:
            out[i] = b_coef * cexp(-k * xi)
    return out


def intensity_grid(t, ksq, amps, psi_x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tarr = np.ascontiguousarray(t, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] karr = np.ascontiguousarray(ksq, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] aarr = np.ascontiguousarray(amps, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] parr = np.ascontiguousarray(psi_x, dtype=np.complex128)
    cdef Py_ssize_t nt = tarr.shape[0]
    cdef Py_ssize_t m = karr.shape[0]
    cdef Py_ssize_t nx = parr.shape[1]
    if aarr.shape[0] != m or parr.shape[0] != m:
        raise ValueError("ksq, amps and psi_x must agree on the mode count")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nt, nx), dtype=np.float64)
    cdef double complex ph0, ph1, ph2, acc
    cdef double complex[3] ph
    cdef Py_ssize_t it, ix, im
    cdef double ti
    if m == 3:
        # dominant case: three bound modes
        for it in range(nt):
            ti = tarr[it]
            ph0 = aarr[0] * cexp(1j * karr[0] * ti)
            ph1 = aarr[1] * cexp(1j * karr[1] * ti)
            ph2 = aarr[2] * cexp(1j * karr[2] * ti)
            for ix in range(nx):
                acc = ph0 * parr[0, ix] + ph1 * parr[1, ix] + ph2 * parr[2, ix]
                out[it, ix] = acc.real * acc.real + acc.imag * acc.imag
    else:
        phases = np.empty(m, dtype=np.complex128)
        for it in range(nt):
            ti = tarr[it]
            for im in range(m):
                phases[im] = aarr[im] * cexp(1j * karr[im] * ti)
            for ix in range(nx):
                acc = 0
                for im in range(m):
                    acc = acc + (<double complex> phases[im]) * parr[im, ix]
                out[it, ix] = acc.real * acc.real + acc.imag * acc.imag
    return out
