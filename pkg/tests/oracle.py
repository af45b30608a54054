"""Independent reference integrators for cross-checking the exact propagators.

Deliberately dumb and slow: fixed-step RK4 on i dU/dt = H(t) U, no reuse of any
code path from the package under test.
"""

import numpy as np


def rk4_propagator(hfunc, t0, t1, steps, dim=2):
    """Fixed-step RK4 propagator for a time-dependent Hamiltonian hfunc(t)."""
    u = np.eye(dim, dtype=complex)
    h = (t1 - t0) / steps
    t = t0

    def rhs(t, u):
        return -1j * (hfunc(t) @ u)

    for _ in range(steps):
        k1 = rhs(t, u)
        k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2)
        k4 = rhs(t + h, u + h * k3)
        u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
    return u


def two_level_hamiltonian(omega, detuning=0.0, phase=0.0):
    """Constant two-level generator in the frame used throughout the package."""
    coupling = 0.5 * omega * np.exp(1j * phase)
    return lambda t: np.array([[0.0, coupling],
                               [np.conj(coupling), detuning]], dtype=complex)
