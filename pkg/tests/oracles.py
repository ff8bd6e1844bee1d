"""Independent oracles for the test suite.

Everything here deliberately avoids the package's jet/series machinery:
probabilities come from explicit 2x2 matrix products (numpy or mpmath) and
Taylor coefficients from Richardson-extrapolated central finite differences
evaluated in high-precision arithmetic, so round-off cannot mask a
disagreement with the series path.
"""

from __future__ import annotations

import itertools
import math
from math import comb, factorial

import mpmath as mp
import numpy as np

PRECISION_DPS = 50


def product_probability(phases_rad, alpha, eps):
    """Transition probability of a pi-pulse train by direct matrix product."""
    u = np.eye(2, dtype=complex)
    for phi in phases_rad:
        half = 0.5 * math.pi * (1.0 + alpha)
        ph = phi * (1.0 + eps)
        m = np.array(
            [
                [math.cos(half), -1j * math.sin(half) * np.exp(1j * ph)],
                [-1j * math.sin(half) * np.exp(-1j * ph), math.cos(half)],
            ]
        )
        u = m @ u
    return abs(u[1, 0]) ** 2


def _mp_pulse_matrix(area, phi, detuning=None, duration=None):
    """One pulse propagator in mpmath; rectangular when a detuning is given."""
    if detuning is None:
        half = area / 2
        a = mp.cos(half)
        b = -1j * mp.sin(half) * mp.exp(1j * phi)
    else:
        rabi = area / duration
        w = mp.sqrt(rabi**2 + detuning**2)
        half = w * duration / 2
        if w == 0:
            a = mp.mpf(1)
            b = mp.mpc(0)
        else:
            a = mp.cos(half) - 1j * (detuning / w) * mp.sin(half)
            b = -1j * (rabi / w) * mp.sin(half) * mp.exp(1j * phi)
    return ((a, b), (-mp.conj(b), mp.conj(a)))


def _mp_matmul(m2, m1):
    return tuple(
        tuple(sum(m2[i][k] * m1[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def mp_u11(phases_rad, errors, kind="double"):
    """U11 of a nominal-pi-pulse train at the given error point (mpmath)."""
    u = ((mp.mpf(1), mp.mpf(0)), (mp.mpf(0), mp.mpf(1)))
    pi = mp.pi
    if kind == "double":
        alpha, eps = errors
        for phi in phases_rad:
            m = _mp_pulse_matrix(pi * (1 + alpha), mp.mpf(phi) * (1 + eps))
            u = _mp_matmul(m, u)
    else:
        alpha, delta, eps = errors
        for phi in phases_rad:
            m = _mp_pulse_matrix(
                pi * (1 + alpha),
                mp.mpf(phi) * (1 + eps),
                detuning=pi * delta,
                duration=mp.mpf(1),
            )
            u = _mp_matmul(m, u)
    return u[0][0]


def fd_coefficient(f, index, base_step="0.01", levels=5):
    """Taylor coefficient by Richardson-extrapolated central differences.

    `f` maps a tuple of mpmath reals to an mpmath complex.  The stencil for
    each variable is the standard central difference of its order; steps are
    `base_step` halved `levels` times and combined assuming an error series
    in h^2.  Run inside mp.workdps(PRECISION_DPS) so the extrapolation is
    truncation-limited, not round-off-limited.
    """
    index = tuple(index)
    h0 = mp.mpf(base_step)
    cache: dict = {}

    def feval(point):
        if point not in cache:
            cache[point] = f(point)
        return cache[point]

    def stencil(h):
        total = mp.mpc(0)
        ranges = [range(j + 1) for j in index]
        for offsets in itertools.product(*ranges):
            weight = 1
            point = []
            for j, i in zip(index, offsets):
                weight *= (-1) ** i * comb(j, i)
                point.append((mp.mpf(j) / 2 - i) * h)
            total += weight * feval(tuple(point))
        return total / h ** sum(index)

    estimates = [stencil(h0 / 2**i) for i in range(levels)]
    for m in range(1, levels):
        factor = mp.mpf(4) ** m
        estimates = [
            (factor * estimates[i + 1] - estimates[i]) / (factor - 1)
            for i in range(len(estimates) - 1)
        ]
    scale = math.prod(factorial(j) for j in index)
    return complex(estimates[0]) / scale


def float_fd_coefficient(f, index, steps=(1e-2, 5e-3)):
    """Two-step Richardson central differences in plain floats.

    Good to ~1e-6 relative for low orders; the mpmath variant above is the
    authoritative oracle for high mixed orders.
    """

    def stencil(h):
        total = 0.0
        ranges = [range(j + 1) for j in index]
        for offsets in itertools.product(*ranges):
            weight = 1
            point = []
            for j, i in zip(index, offsets):
                weight *= (-1) ** i * comb(j, i)
                point.append((j / 2 - i) * h)
            total += weight * f(tuple(point))
        return total / h ** sum(index)

    d1, d2 = stencil(steps[0]), stencil(steps[1])
    scale = math.prod(factorial(j) for j in index)
    return (4 * d2 - d1) / 3 / scale
