"""Driven two-state dynamics: pulse envelopes and exact propagators.

Conventions (hbar = 1, all frequencies angular):

* A pulse with peak Rabi frequency ``omega_peak``, envelope ``f`` (peak 1),
  constant detuning ``Delta`` and constant drive phase ``phi`` has

      H(t) = 0.5 * [[0,                       omega_peak*f(t)*e^{i phi}],
                    [omega_peak*f(t)*e^{-i phi},              2*Delta  ]].

* On resonance the propagator of a pulse of area A depends only on A and phi:
  a = cos(A/2), b = -i*e^{i phi}*sin(A/2) in the Cayley-Klein form
  [[a, b], [-conj(b), conj(a)]].

* A constant phase shift of the drive multiplies u[0,1] by e^{i phi} and
  u[1,0] by e^{-i phi} and leaves the diagonal untouched.  This is exact for
  any envelope and any detuning (the phase is a diagonal conjugation of the
  generator), so propagators are computed at phase 0 and the phase imprinted
  afterwards.

* Detuned propagators are kept in this frame (2*Delta on the second diagonal
  entry), NOT renormalized to unit determinant: the multilevel reduction in
  :mod:`comphr.npod` consumes the literal element u[0,0] of this frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import expm_hermitian, expm_hermitian_stack, unitarity_defect

RECTANGULAR = "rectangular"
GAUSSIAN = "gaussian"
TABULATED = "tabulated"

#: Unitarity tolerance for anything claiming to be a propagator.
PROPAGATOR_TOL = 1e-12

#: Default number of piecewise-constant slices for shaped pulses.
DEFAULT_SUBSTEPS = 1000


@dataclass(frozen=True)
class PulseShape:
    """Dimensionless pulse envelope f on the unit time interval, 0 <= f <= 1, peak 1.

    kind:
        ``rectangular`` -- f = 1 throughout.
        ``gaussian``    -- f(x) = exp(-(2c(x - 1/2))^2) with c = ``truncation``,
                           i.e. a Gaussian of 1/e half-width 1/(2c) cut at
                           +-c half-widths; the quoted pulse area is the area
                           of the truncated envelope.
        ``tabulated``   -- linear interpolation of (time, value) samples,
                           rescaled onto [0, 1].
    """

    kind: str
    truncation: float = 3.0
    samples: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.kind not in (RECTANGULAR, GAUSSIAN, TABULATED):
            raise ValidationError(f"unknown pulse shape kind {self.kind!r}")
        if self.kind == GAUSSIAN and not (np.isfinite(self.truncation) and self.truncation > 0):
            raise ValidationError("gaussian truncation must be a positive half-width count")
        if self.kind == TABULATED:
            if self.samples is None or len(self.samples) < 2:
                raise ValidationError("tabulated shape needs at least 2 samples")
            samples = tuple((float(t), float(v)) for t, v in self.samples)
            times = np.array([t for t, _ in samples])
            values = np.array([v for _, v in samples])
            if not np.all(np.isfinite(times)) or not np.all(np.isfinite(values)):
                raise ValidationError("tabulated samples must be finite")
            if np.any(np.diff(times) <= 0):
                raise ValidationError("tabulated sample times must be strictly increasing")
            if values.min() < 0.0 or values.max() > 1.0:
                raise ValidationError("tabulated values must lie in [0, 1]")
            if abs(values.max() - 1.0) > 1e-9:
                raise ValidationError("tabulated envelope must reach peak value 1")
            object.__setattr__(self, "samples", samples)

    def envelope(self, x):
        """Envelope values at normalized times x in [0, 1]."""
        x = np.asarray(x, dtype=float)
        if self.kind == RECTANGULAR:
            return np.ones_like(x)
        if self.kind == GAUSSIAN:
            return np.exp(-((2.0 * self.truncation * (x - 0.5)) ** 2))
        times = np.array([t for t, _ in self.samples])
        values = np.array([v for _, v in self.samples])
        xs = (times - times[0]) / (times[-1] - times[0])
        return np.interp(x, xs, values)

    def unit_integral(self) -> float:
        """Integral of the envelope over the unit interval."""
        if self.kind == RECTANGULAR:
            return 1.0
        if self.kind == GAUSSIAN:
            c = self.truncation
            return math.sqrt(math.pi) * math.erf(c) / (2.0 * c)
        times = np.array([t for t, _ in self.samples])
        values = np.array([v for _, v in self.samples])
        xs = (times - times[0]) / (times[-1] - times[0])
        return float(np.trapezoid(values, xs))


def rectangular() -> PulseShape:
    return PulseShape(RECTANGULAR)


def gaussian(truncation: float = 3.0) -> PulseShape:
    return PulseShape(GAUSSIAN, truncation=truncation)


def tabulated(samples) -> PulseShape:
    return PulseShape(TABULATED, samples=tuple(tuple(s) for s in samples))


@dataclass(frozen=True)
class PulseSpec:
    """One constituent pulse: envelope, peak Rabi frequency, duration, detuning, phase."""

    shape: PulseShape
    omega_peak: float
    duration: float
    detuning: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.omega_peak) and self.omega_peak >= 0.0):
            raise ValidationError("omega_peak must be finite and >= 0")
        if not (np.isfinite(self.duration) and self.duration > 0.0):
            raise ValidationError("duration must be finite and > 0")
        if not np.isfinite(self.detuning) or not np.isfinite(self.phase):
            raise ValidationError("detuning and phase must be finite")

    @property
    def area(self) -> float:
        """Pulse area omega_peak * integral of the envelope over the pulse."""
        return self.omega_peak * self.duration * self.shape.unit_integral()


def pulse_with_area(shape: PulseShape, area: float, detuning: float = 0.0,
                    phase: float = 0.0, omega_peak: float = 1.0) -> PulseSpec:
    """Pulse of the requested area at fixed peak Rabi frequency (duration solved for)."""
    if not (np.isfinite(area) and area > 0.0):
        raise ValidationError("area must be finite and > 0")
    if omega_peak <= 0.0:
        raise ValidationError("omega_peak must be > 0 to fix a duration")
    duration = area / (omega_peak * shape.unit_integral())
    return PulseSpec(shape, omega_peak, duration, detuning, phase)


@dataclass(frozen=True, eq=False)
class Propagator2:
    """2x2 unitary propagator with Cayley-Klein accessors a = u[0,0], b = u[0,1]."""

    u: np.ndarray

    def __post_init__(self):
        a = np.array(self.u, dtype=complex)
        if a.shape != (2, 2):
            raise ValidationError(f"propagator must be 2x2, got {a.shape}")
        defect = unitarity_defect(a)
        if defect > PROPAGATOR_TOL:
            raise ValidationError(f"propagator is not unitary (defect {defect:.3e})")
        a.setflags(write=False)
        object.__setattr__(self, "u", a)

    @property
    def a(self) -> complex:
        return complex(self.u[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.u[0, 1])


def identity_propagator() -> Propagator2:
    return Propagator2(np.eye(2, dtype=complex))


def resonant_propagator(area: float, phase: float = 0.0) -> Propagator2:
    """Exact resonant propagator of a pulse of the given area; shape-independent."""
    if not np.isfinite(area) or area < 0.0:
        raise ValidationError("area must be finite and >= 0")
    a = math.cos(0.5 * area)
    b = -1j * np.exp(1j * phase) * math.sin(0.5 * area)
    return Propagator2(np.array([[a, b], [-np.conj(b), np.conj(a)]]))


def apply_phase(prop: Propagator2, phase: float) -> Propagator2:
    """Imprint a constant drive phase: u[0,1] -> u[0,1]*e^{i phase}, u[1,0] -> u[1,0]*e^{-i phase}."""
    u = np.array(prop.u)
    u[0, 1] *= np.exp(1j * phase)
    u[1, 0] *= np.exp(-1j * phase)
    return Propagator2(u)


def constant_propagator(pulse: PulseSpec) -> Propagator2:
    """Exact propagator of a rectangular pulse at constant detuning.

    Returns exp(-i*T/2 * [[0, Omega], [Omega, 2*Delta]]) with the pulse phase
    imprinted on the off-diagonal elements.  Reduces to
    :func:`resonant_propagator` when the detuning vanishes.
    """
    if pulse.shape.kind != RECTANGULAR:
        raise ValidationError("constant_propagator needs a rectangular pulse; "
                              "use shaped_propagator for other envelopes")
    h = 0.5 * np.array([[0.0, pulse.omega_peak],
                        [pulse.omega_peak, 2.0 * pulse.detuning]], dtype=complex)
    u = expm_hermitian(h, pulse.duration)
    return apply_phase(Propagator2(u), pulse.phase)


def shaped_propagator(pulse: PulseSpec, substeps: int = DEFAULT_SUBSTEPS,
                      window: tuple[float, float] = (0.0, 1.0)) -> Propagator2:
    """Piecewise-constant propagator of an arbitrary-envelope pulse.

    The pulse (or the sub-interval `window`, in fractions of the duration) is
    split into `substeps` equal slices, each advanced exactly with the
    spectral exponential of the slice-midpoint Hamiltonian.  Unitary to
    round-off by construction; second-order accurate in the slice width.
    """
    if int(substeps) != substeps or substeps < 1:
        raise ValidationError("substeps must be a positive integer")
    lo, hi = float(window[0]), float(window[1])
    if not (0.0 <= lo < hi <= 1.0):
        raise ValidationError("window must satisfy 0 <= lo < hi <= 1")
    substeps = int(substeps)
    mid = lo + (hi - lo) * (np.arange(substeps) + 0.5) / substeps
    f = pulse.shape.envelope(mid)
    dt = (hi - lo) * pulse.duration / substeps
    h = np.zeros((substeps, 2, 2), dtype=complex)
    h[:, 0, 1] = 0.5 * pulse.omega_peak * f
    h[:, 1, 0] = 0.5 * pulse.omega_peak * f
    h[:, 1, 1] = pulse.detuning
    slices = expm_hermitian_stack(h, dt)
    u = slices[0]
    for k in range(1, substeps):
        u = slices[k] @ u
    return apply_phase(Propagator2(u), pulse.phase)
