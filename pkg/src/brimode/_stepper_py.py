"""Pure-python Dormand-Prince 4(5) stepper for dense linear systems.

Fallback twin of the compiled extension ``_stepper``; same algorithm,
same tableau, same step controller, same return contract.  The compiled
module is preferred at import time when available.
"""

import numpy as np

# Dormand-Prince 4(5) tableau (FSAL: last stage is the next first stage).
_A = (
    np.array([], dtype=float),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_ERR = _B5 - np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                       -92097 / 339200, 187 / 2100, 1 / 40])

STATUS_T_MAX = 0
STATUS_RESIDUAL = 1
STATUS_UNDERFLOW = 2


def advance(A, e, y0, t0, t_max, rtol, atol, h0, resid_tol, record):
    """Integrate y' = A y + e from (t0, y0).

    Stops at t_max, or earlier once ||A y + e||_2 < resid_tol (if
    resid_tol > 0).  Returns (status, t, y, times, states, n_accept,
    n_reject); times/states are arrays of every accepted point when
    ``record`` is true, else None.
    """
    A = np.ascontiguousarray(A, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    y = np.array(y0, dtype=float)
    t = float(t0)
    h = float(h0)
    k = np.empty((7, y.size))
    k[0] = A @ y + e
    n_accept = n_reject = 0
    times = [t] if record else None
    states = [y.copy()] if record else None

    # an overflowing error estimate is a legitimate rejection, not a fault
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        while True:
            if resid_tol > 0.0 and np.sqrt(k[0] @ k[0]) < resid_tol:
                status = STATUS_RESIDUAL
                break
            if t >= t_max:
                status = STATUS_T_MAX
                break
            if h < 1e-14 * max(abs(t), 1.0):
                status = STATUS_UNDERFLOW
                break
            h_step = min(h, t_max - t)
            for i in range(1, 7):
                yi = y + h_step * (_A[i] @ k[:i])
                k[i] = A @ yi + e
            y_new = y + h_step * (_B5 @ k)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            err = np.sqrt(np.mean((h_step * (_ERR @ k) / scale) ** 2))
            if err <= 1.0:
                t += h_step
                y = y_new
                k[0] = k[6]  # FSAL
                n_accept += 1
                if record:
                    times.append(t)
                    states.append(y.copy())
                factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
            else:
                n_reject += 1
                factor = min(1.0, max(0.2, 0.9 * err ** -0.2))
            h = h_step * factor

    if record:
        times = np.array(times)
        states = np.array(states)
    return status, t, y, times, states, n_accept, n_reject
