"""Star-coupled (N+1)-level systems and composite Householder reflections.

N degenerate states (indices 0..N-1) are coupled to a single ancilla (index
N) with a shared envelope f(t): coupling k has amplitude chi_k, phase beta_k,
and the ancilla carries the detuning.  A time-independent basis change splits
the manifold into one bright state

    |v> = (1/chi) * sum_k chi_k e^{i beta_k} |k>,      chi = sqrt(sum chi_k^2),

driven at the rms Rabi frequency chi*f(t), plus N-1 dark states that never
couple.  Driving the bright-ancilla pair through a composite phase gate of
phase alpha = 2*phi therefore turns the manifold propagator into the
Householder reflection

    M(v, phi) = I + (e^{i phi} - 1) |v><v|,

with the standard reflection I - 2|v><v| at phi = pi.

For gate-level simulations the couplings only fix the direction of v: they
are rescaled jointly so the rms peak Rabi frequency is 1, making the
per-pulse rms area and the detuning the dimensionless error parameters A and
Delta/Omega (a systematic source error scales all couplings identically and
leaves v untouched).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .composite import GateSequence, PhaseList, gate_sequence
from .errors import ValidationError
from .linalg import expm_hermitian, expm_hermitian_stack, require_square
from .two_level import (
    DEFAULT_SUBSTEPS,
    GAUSSIAN,
    RECTANGULAR,
    TABULATED,
    PulseShape,
    gaussian,
    rectangular,
    tabulated,
)

#: Tolerance on the norm of a vector claiming to be normalized.
NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class NPodSystem:
    """Couplings chi_k >= 0, phases beta_k, shared envelope, ancilla detuning."""

    couplings: tuple[float, ...]
    coupling_phases: tuple[float, ...]
    shape: PulseShape = rectangular()
    detuning: float = 0.0

    def __post_init__(self):
        couplings = tuple(float(c) for c in self.couplings)
        phases = tuple(float(b) for b in self.coupling_phases)
        if len(couplings) < 1:
            raise ValidationError("an N-pod needs at least one coupled state")
        if len(phases) != len(couplings):
            raise ValidationError("couplings and coupling_phases must have equal length")
        if not all(np.isfinite(c) and c >= 0.0 for c in couplings):
            raise ValidationError("couplings must be finite and >= 0")
        if not all(np.isfinite(b) for b in phases):
            raise ValidationError("coupling phases must be finite")
        if max(couplings) == 0.0:
            raise ValidationError("at least one coupling must be positive")
        if not np.isfinite(self.detuning):
            raise ValidationError("detuning must be finite")
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "coupling_phases", phases)

    @property
    def n_states(self) -> int:
        """Number of manifold states N (the full system has N+1 levels)."""
        return len(self.couplings)

    @property
    def rms_peak(self) -> float:
        return math.sqrt(sum(c * c for c in self.couplings))


@dataclass(frozen=True, eq=False)
class HouseholderTarget:
    """Normalized complex reflection vector v plus the reflection phase."""

    v: np.ndarray
    hr_phase: float = math.pi

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        if v.size < 1:
            raise ValidationError("reflection vector must be nonempty")
        defect = abs(np.linalg.norm(v) - 1.0)
        if defect > NORMALIZATION_TOL:
            raise ValidationError(f"reflection vector is not normalized (defect {defect:.3e})")
        if not np.isfinite(self.hr_phase):
            raise ValidationError("hr_phase must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.v.size


@dataclass(frozen=True, eq=False)
class MSReduction:
    """Bright/dark decomposition of the manifold: bright vector, rms peak, dark basis."""

    rms_peak: float
    bright: np.ndarray
    dark_basis: tuple[np.ndarray, ...]


def householder_matrix(target: HouseholderTarget) -> np.ndarray:
    """I + (e^{i phi} - 1) |v><v|; the standard reflection I - 2|v><v| at phi = pi."""
    v = target.v
    coeff = np.exp(1j * target.hr_phase) - 1.0
    return np.eye(v.size, dtype=complex) + coeff * np.outer(v, v.conj())


def ms_reduce(sys: NPodSystem) -> MSReduction:
    """Bright vector, rms Rabi peak, and a deterministic orthonormal dark basis."""
    chi = np.array(sys.couplings)
    rms = sys.rms_peak
    bright = chi * np.exp(1j * np.array(sys.coupling_phases)) / rms
    n = sys.n_states
    # Seed the complement from the canonical basis with the largest-|v_k| pivot
    # removed, so the dark basis is reproducible across runs.
    pivot = int(np.argmax(np.abs(bright)))
    basis = [bright] + [np.eye(n, dtype=complex)[j] for j in range(n) if j != pivot]
    ortho = []
    for vec in basis:
        w = np.array(vec)
        for _ in range(2):  # two Gram-Schmidt passes for round-off hygiene
            for q in ortho:
                w = w - q * (q.conj() @ w)
        w = w / np.linalg.norm(w)
        ortho.append(w)
    dark = ortho[1:]
    for w in dark:
        w.setflags(write=False)
    return MSReduction(rms_peak=rms, bright=bright, dark_basis=tuple(dark))


def npod_hamiltonian(sys: NPodSystem, pulse_phase: float = 0.0,
                     envelope: float = 1.0) -> np.ndarray:
    """Instantaneous (N+1)x(N+1) generator at a given envelope value and drive phase."""
    n = sys.n_states
    h = np.zeros((n + 1, n + 1), dtype=complex)
    omega = (np.array(sys.couplings) * envelope
             * np.exp(1j * (np.array(sys.coupling_phases) + pulse_phase)))
    h[:n, n] = 0.5 * omega
    h[n, :n] = 0.5 * omega.conj()
    h[n, n] = sys.detuning
    return h


def _normalized(sys: NPodSystem) -> NPodSystem:
    rms = sys.rms_peak
    if abs(rms - 1.0) < 1e-15:
        return sys
    return replace(sys, couplings=tuple(c / rms for c in sys.couplings))


def pulse_propagator(sys: NPodSystem, area: float, pulse_phase: float = 0.0,
                     substeps: int = DEFAULT_SUBSTEPS) -> np.ndarray:
    """Full (N+1)-level propagator of a single pulse of the given rms area.

    Couplings are rescaled so the rms peak Rabi frequency is 1 and the
    duration carries the area.  Rectangular pulses use one exact exponential;
    other envelopes use `substeps` midpoint slices.
    """
    if not np.isfinite(area) or area < 0.0:
        raise ValidationError("area must be finite and >= 0")
    nsys = _normalized(sys)
    dim = nsys.n_states + 1
    if area == 0.0:
        return np.eye(dim, dtype=complex)
    duration = area / nsys.shape.unit_integral()
    if nsys.shape.kind == RECTANGULAR:
        return expm_hermitian(npod_hamiltonian(nsys, pulse_phase, 1.0), duration)
    if int(substeps) != substeps or substeps < 1:
        raise ValidationError("substeps must be a positive integer")
    substeps = int(substeps)
    mid = (np.arange(substeps) + 0.5) / substeps
    f = nsys.shape.envelope(mid)
    h = np.zeros((substeps, dim, dim), dtype=complex)
    omega = (np.array(nsys.couplings)
             * np.exp(1j * (np.array(nsys.coupling_phases) + pulse_phase)))
    h[:, : dim - 1, dim - 1] = 0.5 * f[:, None] * omega
    h[:, dim - 1, : dim - 1] = np.conj(h[:, : dim - 1, dim - 1])
    h[:, dim - 1, dim - 1] = nsys.detuning
    slices = expm_hermitian_stack(h, duration / substeps)
    u = slices[0]
    for k in range(1, substeps):
        u = slices[k] @ u
    return u


def npod_propagator(sys: NPodSystem, seq: GateSequence, area: float,
                    substeps: int = DEFAULT_SUBSTEPS) -> np.ndarray:
    """Full-system propagator of a composite gate sequence (first pulse acts first)."""
    u = np.eye(sys.n_states + 1, dtype=complex)
    for phase in seq.pulse_phases:
        u = pulse_propagator(sys, area, phase, substeps) @ u
    return u


def manifold_block(u) -> np.ndarray:
    """Leading N x N sub-block of an (N+1)-level propagator (ancilla row/column dropped)."""
    a = require_square(u, "propagator")
    if a.shape[0] < 2:
        raise ValidationError("propagator must be at least 2x2")
    return np.array(a[:-1, :-1])


def composite_hr(sys: NPodSystem, family: PhaseList, hr_phase: float, area: float,
                 detuning: float = 0.0, substeps: int = DEFAULT_SUBSTEPS) -> np.ndarray:
    """Manifold propagator of the composite Householder sequence (alpha = 2*hr_phase).

    At (area = pi, detuning = 0) the result equals
    householder_matrix(v, hr_phase) with v the normalized coupling vector.
    """
    seq = gate_sequence(family, 2.0 * hr_phase)
    run = replace(sys, detuning=float(detuning))
    return manifold_block(npod_propagator(run, seq, area, substeps))


def random_system(n_states: int, seed: int = 0, shape: PulseShape | None = None) -> NPodSystem:
    """N-pod with a random reflection vector: complex-normal entries, then normalization."""
    if int(n_states) != n_states or n_states < 1:
        raise ValidationError("n_states must be a positive integer")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(int(n_states)) + 1j * rng.standard_normal(int(n_states))
    v = v / np.linalg.norm(v)
    return NPodSystem(couplings=tuple(np.abs(v)),
                      coupling_phases=tuple(np.angle(v)),
                      shape=shape if shape is not None else rectangular())


# ---------------------------------------------------------------------------
# JSON configuration documents (angles stored in units of pi)

def shape_to_config(shape: PulseShape):
    if shape.kind == RECTANGULAR:
        return RECTANGULAR
    if shape.kind == GAUSSIAN:
        return {"kind": GAUSSIAN, "truncation": shape.truncation}
    return {"kind": TABULATED, "samples": [list(s) for s in shape.samples]}


def shape_from_config(doc) -> PulseShape:
    if isinstance(doc, str):
        kind = doc
        doc = {}
    elif isinstance(doc, dict):
        kind = doc.get("kind")
    else:
        raise ValidationError("shape must be a string or an object with a 'kind'")
    if kind == RECTANGULAR:
        return rectangular()
    if kind == GAUSSIAN:
        return gaussian(float(doc.get("truncation", 3.0)))
    if kind == TABULATED:
        if "samples" not in doc:
            raise ValidationError("tabulated shape needs a 'samples' list")
        return tabulated(doc["samples"])
    raise ValidationError(f"unknown pulse shape kind {kind!r}")


def system_to_config(sys: NPodSystem, hr_phase: float) -> dict:
    """JSON-ready document; coupling phases and hr_phase in units of pi."""
    return {
        "couplings": list(sys.couplings),
        "coupling_phases": [b / math.pi for b in sys.coupling_phases],
        "shape": shape_to_config(sys.shape),
        "detuning": sys.detuning,
        "hr_phase": hr_phase / math.pi,
    }


def system_from_config(doc: dict) -> tuple[NPodSystem, HouseholderTarget]:
    """Parse a configuration document into the system and its derived reflection target."""
    if not isinstance(doc, dict):
        raise ValidationError("configuration document must be a JSON object")
    if "couplings" not in doc:
        raise ValidationError("configuration needs a 'couplings' list")
    couplings = tuple(float(c) for c in doc["couplings"])
    phases = tuple(float(b) * math.pi
                   for b in doc.get("coupling_phases", [0.0] * len(couplings)))
    shape = shape_from_config(doc.get("shape", RECTANGULAR))
    detuning = float(doc.get("detuning", 0.0))
    hr_phase = float(doc.get("hr_phase", 1.0)) * math.pi
    sys = NPodSystem(couplings, phases, shape, detuning)
    target = HouseholderTarget(ms_reduce(sys).bright, hr_phase)
    return sys, target
