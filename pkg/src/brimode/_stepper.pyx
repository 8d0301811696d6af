# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Dormand-Prince 4(5) stepper for dense linear systems.

Hot kernel behind :mod:`brimode.dynamics`; the pure-python twin
``_stepper_py`` implements the identical algorithm and return contract.
"""

from libc.math cimport fabs, sqrt, pow
from libc.stdlib cimport free, malloc

import numpy as np

STATUS_T_MAX = 0
STATUS_RESIDUAL = 1
STATUS_UNDERFLOW = 2

cdef double[7][6] A_TAB
A_TAB[1][0] = 1.0 / 5.0
A_TAB[2][0] = 3.0 / 40.0
A_TAB[2][1] = 9.0 / 40.0
A_TAB[3][0] = 44.0 / 45.0
A_TAB[3][1] = -56.0 / 15.0
A_TAB[3][2] = 32.0 / 9.0
A_TAB[4][0] = 19372.0 / 6561.0
A_TAB[4][1] = -25360.0 / 2187.0
A_TAB[4][2] = 64448.0 / 6561.0
A_TAB[4][3] = -212.0 / 729.0
A_TAB[5][0] = 9017.0 / 3168.0
A_TAB[5][1] = -355.0 / 33.0
A_TAB[5][2] = 46732.0 / 5247.0
A_TAB[5][3] = 49.0 / 176.0
A_TAB[5][4] = -5103.0 / 18656.0
A_TAB[6][0] = 35.0 / 384.0
A_TAB[6][1] = 0.0
A_TAB[6][2] = 500.0 / 1113.0
A_TAB[6][3] = 125.0 / 192.0
A_TAB[6][4] = -2187.0 / 6784.0
A_TAB[6][5] = 11.0 / 84.0

cdef double[7] B5
B5[0] = 35.0 / 384.0
B5[1] = 0.0
B5[2] = 500.0 / 1113.0
B5[3] = 125.0 / 192.0
B5[4] = -2187.0 / 6784.0
B5[5] = 11.0 / 84.0
B5[6] = 0.0

cdef double[7] ERR_W
ERR_W[0] = 35.0 / 384.0 - 5179.0 / 57600.0
ERR_W[1] = 0.0
ERR_W[2] = 500.0 / 1113.0 - 7571.0 / 16695.0
ERR_W[3] = 125.0 / 192.0 - 393.0 / 640.0
ERR_W[4] = -2187.0 / 6784.0 + 92097.0 / 339200.0
ERR_W[5] = 11.0 / 84.0 - 187.0 / 2100.0
ERR_W[6] = -1.0 / 40.0


cdef inline void _rhs(const double* A, const double* e, const double* y,
                      double* out, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = e[i]
        for j in range(n):
            acc += A[i * n + j] * y[j]
        out[i] = acc


def advance(double[:, ::1] A, double[::1] e, double[::1] y0, double t0,
            double t_max, double rtol, double atol, double h0,
            double resid_tol, bint record):
    """Integrate y' = A y + e; see ``_stepper_py.advance`` for the contract."""
    cdef Py_ssize_t n = A.shape[0]
    # layout: y | y_new | yi | k (7 stages)
    cdef double* buf = <double*> malloc(10 * n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef double* y = buf
    cdef double* y_new = buf + n
    cdef double* yi = buf + 2 * n
    cdef double* k = buf + 3 * n          # 7 stages, contiguous
    cdef double t = t0
    cdef double h = h0
    cdef double h_step, err, scale, d, acc, factor, r2
    cdef Py_ssize_t i, j, s
    cdef int status
    cdef long n_accept = 0, n_reject = 0

    for i in range(n):
        y[i] = y0[i]
    _rhs(&A[0, 0], &e[0], y, k, n)

    times = [t] if record else None
    states = [np.asarray(y0).copy()] if record else None

    while True:
        if resid_tol > 0.0:
            r2 = 0.0
            for i in range(n):
                r2 += k[i] * k[i]
            if sqrt(r2) < resid_tol:
                status = STATUS_RESIDUAL
                break
        if t >= t_max:
            status = STATUS_T_MAX
            break
        if h < 1e-14 * (fabs(t) if fabs(t) > 1.0 else 1.0):
            status = STATUS_UNDERFLOW
            break
        h_step = h if h < t_max - t else t_max - t

        for s in range(1, 7):
            for i in range(n):
                acc = 0.0
                for j in range(s):
                    acc += A_TAB[s][j] * k[j * n + i]
                yi[i] = y[i] + h_step * acc
            _rhs(&A[0, 0], &e[0], yi, k + s * n, n)

        err = 0.0
        for i in range(n):
            acc = 0.0
            d = 0.0
            for s in range(7):
                acc += B5[s] * k[s * n + i]
                d += ERR_W[s] * k[s * n + i]
            y_new[i] = y[i] + h_step * acc
            scale = atol + rtol * (fabs(y[i]) if fabs(y[i]) > fabs(y_new[i]) else fabs(y_new[i]))
            d = h_step * d / scale
            err += d * d
        err = sqrt(err / n)

        if err <= 1.0:
            t += h_step
            for i in range(n):
                y[i] = y_new[i]
                k[i] = k[6 * n + i]  # FSAL
            n_accept += 1
            if record:
                times.append(t)
                arr = np.empty(n)
                for i in range(n):
                    arr[i] = y[i]
                states.append(arr)
            factor = 5.0 if err == 0.0 else 0.9 * pow(err, -0.2)
            if factor > 5.0:
                factor = 5.0
            elif factor < 0.2:
                factor = 0.2
        else:
            n_reject += 1
            factor = 0.9 * pow(err, -0.2)
            if factor > 1.0:
                factor = 1.0
            elif factor < 0.2:
                factor = 0.2
        h = h_step * factor

    y_out = np.empty(n)
    for i in range(n):
        y_out[i] = y[i]
    free(buf)
    if record:
        times = np.array(times)
        states = np.array(states)
    return status, t, y_out, times, states, n_accept, n_reject
