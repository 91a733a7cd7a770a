"""Compiled Dormand-Prince 5(4) integrator for the augmented amplitude system.

The state is ``(c1, c2, cc, F)``; ``F`` is the accumulated fluorescence with
``dF/dt = gamma * |c2|**2``. Error control uses the max norm over components,
so a component that stays identically zero never influences the step sequence.
"""
import numpy as np
from numba import njit

# parameter vector layout
OMEGA0, TAU_P, WIDTH_P = 0, 1, 2
GAMMA_I0, TAU_I, WIDTH_I = 3, 4, 5
GAMMA_C0, TAU_C, WIDTH_C = 6, 7, 8
DELTA, SMALL_DELTA, GAMMA, Q = 9, 10, 11, 12
STARK_1, STARK_2, STARK_C = 13, 14, 15
THREE = 16
N_PARAMS = 17

OK = 0
STEP_UNDERFLOW = -1
TOO_MANY_STEPS = -2
NOT_FINITE = -3

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
A = np.array([
    [0, 0, 0, 0, 0, 0],
    [1 / 5, 0, 0, 0, 0, 0],
    [3 / 40, 9 / 40, 0, 0, 0, 0],
    [44 / 45, -56 / 15, 32 / 9, 0, 0, 0],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0, 0],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0],
    [35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
])
B = A[6].copy()
# difference between the 5th- and embedded 4th-order weights, over all 7 stages
E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40])
# quartic dense-output polynomial coefficients (theta, theta^2, theta^3, theta^4)
P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])


@njit(cache=True, nogil=True)
def rhs(t, y, p, out):
    x = (t - p[TAU_P]) / p[WIDTH_P]
    omega = p[OMEGA0] * np.exp(-x * x)
    x = (t - p[TAU_I]) / p[WIDTH_I]
    gi = p[GAMMA_I0] * np.exp(-x * x)
    h11 = p[STARK_1] + 0j
    h12 = 0.5 * omega + 0j
    h22 = p[DELTA] + p[STARK_2] - 0.5j * (gi + p[GAMMA])
    c1 = y[0]
    c2 = y[1]
    if p[THREE] > 0.5:
        x = (t - p[TAU_C]) / p[WIDTH_C]
        gc = p[GAMMA_C0] * np.exp(-x * x)
        h23 = -0.5 * (p[Q] + 1j) * np.sqrt(gi * gc)
        h33 = p[SMALL_DELTA] + p[STARK_C] - 0.5j * gc
        c3 = y[2]
        out[0] = -1j * (h11 * c1 + h12 * c2)
        out[1] = -1j * (h12 * c1 + h22 * c2 + h23 * c3)
        out[2] = -1j * (h23 * c2 + h33 * c3)
    else:
        out[0] = -1j * (h11 * c1 + h12 * c2)
        out[1] = -1j * (h12 * c1 + h22 * c2)
        out[2] = 0j
    out[3] = p[GAMMA] * (c2.real * c2.real + c2.imag * c2.imag) + 0j


@njit(cache=True, nogil=True)
def integrate(p, t0, t1, y0, sample_times, rtol, atol, hmax, max_steps):
    """Propagate ``y0`` from ``t0`` to ``t1``.

    ``sample_times`` must be increasing within ``[t0, t1]``. Returns
    ``(status, samples, y_end, n_accepted, n_rejected)``.
    """
    n = y0.shape[0]
    ns = sample_times.shape[0]
    samples = np.zeros((ns, n), dtype=np.complex128)
    k = np.empty((7, n), dtype=np.complex128)
    y = y0.copy()
    ytmp = np.empty(n, dtype=np.complex128)
    ynew = np.empty(n, dtype=np.complex128)
    span = t1 - t0
    hmin = 1e-12 * span

    isamp = 0
    while isamp < ns and sample_times[isamp] <= t0:
        samples[isamp, :] = y
        isamp += 1

    t = t0
    rhs(t, y, p, k[0])
    d0 = 0.0
    d1 = 0.0
    for i in range(n):
        sc = max(atol + rtol * abs(y[i]), 1e-300)
        d0 = max(d0, abs(y[i]) / sc)
        d1 = max(d1, abs(k[0, i]) / sc)
    if d0 < 1e-5 or d1 < 1e-5:
        h = 1e-6 * span
    else:
        h = 0.01 * d0 / d1
    h = min(h, hmax, span)

    status = OK
    accepted = 0
    rejected = 0
    while t < t1:
        if accepted + rejected >= max_steps:
            status = TOO_MANY_STEPS
            break
        if h < hmin:
            status = STEP_UNDERFLOW
            break
        last = False
        if t + h >= t1:
            h = t1 - t
            last = True
        for s in range(1, 7):
            for i in range(n):
                acc = 0j
                for j in range(s):
                    acc += A[s, j] * k[j, i]
                ytmp[i] = y[i] + h * acc
            if s < 6:
                rhs(t + C[s] * h, ytmp, p, k[s])
        for i in range(n):
            ynew[i] = ytmp[i]
        tnew = t1 if last else t + h
        rhs(tnew, ynew, p, k[6])

        err = 0.0
        for i in range(n):
            e = 0j
            for j in range(7):
                e += E[j] * k[j, i]
            sc = max(atol + rtol * max(abs(y[i]), abs(ynew[i])), 1e-300)
            err = max(err, abs(h * e) / sc)
        if not np.isfinite(err):
            status = NOT_FINITE
            break

        if err <= 1.0:
            while isamp < ns and sample_times[isamp] <= tnew:
                ts = sample_times[isamp]
                if last and ts >= t1:
                    samples[isamp, :] = ynew
                else:
                    th = (ts - t) / h
                    for i in range(n):
                        acc = 0j
                        for j in range(7):
                            q = th * (P[j, 0] + th * (P[j, 1] + th * (P[j, 2] + th * P[j, 3])))
                            acc += q * k[j, i]
                        samples[isamp, i] = y[i] + h * acc
                isamp += 1
            t = tnew
            for i in range(n):
                y[i] = ynew[i]
                k[0, i] = k[6, i]
            accepted += 1
            if err == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * err ** -0.2))
            h = min(h * fac, hmax)
        else:
            rejected += 1
            h = h * max(0.2, 0.9 * err ** -0.2)

    return status, samples, y, accepted, rejected
