"""Phase families, gate sequences, and the two-composite phase gate."""

import math
from fractions import Fraction

import numpy as np
import pytest

from comphr import (
    Propagator2,
    PulseSpec,
    ValidationError,
    bb_phases,
    compose,
    composite_phase_gate,
    constant_propagator,
    family_from_config,
    family_to_config,
    gate_sequence,
    rectangular,
    resonant_propagator,
    sequence_propagator,
    universal_phases,
)

PI = np.pi


def mod_2pi_distance(x):
    """Distance of x from the nearest multiple of 2*pi."""
    return abs(math.remainder(x, 2 * math.pi))

ALL_FAMILIES = ([bb_phases(n) for n in (1, 3, 5, 7, 9)]
                + [universal_phases(n, v) for n, v in ((3, 1), (5, 1), (5, 2), (7, 1), (7, 2))])


def phase_gate(alpha):
    return np.diag([np.exp(1j * alpha / 2), np.exp(-1j * alpha / 2)])


# --- phase families -----------------------------------------------------------

def test_bb_published_lists():
    assert bb_phases(1).fractions == (Fraction(0),)
    assert bb_phases(3).fractions == tuple(Fraction(s) for s in ("0", "2/3", "0"))
    assert bb_phases(5).fractions == tuple(Fraction(s) for s in ("0", "2/5", "6/5", "2/5", "0"))
    assert bb_phases(7).fractions == tuple(
        Fraction(s) for s in ("0", "2/7", "6/7", "12/7", "6/7", "2/7", "0"))
    assert bb_phases(9).fractions == tuple(
        Fraction(s) for s in ("0", "2/9", "2/3", "4/3", "2/9", "4/3", "2/3", "2/9", "0"))


def test_bb_rejects_even_or_nonpositive_n():
    for bad in (0, -3, 4, 2.5):
        with pytest.raises(ValidationError, match="odd"):
            bb_phases(bad)


def test_universal_published_lists():
    assert universal_phases(3, 1).fractions == tuple(Fraction(s) for s in ("0", "1/2", "0"))
    assert universal_phases(5, 1).fractions == tuple(
        Fraction(s) for s in ("0", "5/6", "1/3", "5/6", "0"))
    assert universal_phases(5, 2).fractions == tuple(
        Fraction(s) for s in ("0", "11/6", "1/3", "11/6", "0"))
    assert universal_phases(7, 1).fractions == tuple(
        Fraction(s) for s in ("0", "11/12", "5/6", "17/12", "5/6", "11/12", "0"))
    assert universal_phases(7, 2).fractions == tuple(
        Fraction(s) for s in ("0", "23/12", "5/6", "5/12", "5/6", "23/12", "0"))


def test_universal_rejects_unknown_combinations():
    for n, v in ((3, 2), (9, 1), (5, 3), (4, 1)):
        with pytest.raises(ValidationError):
            universal_phases(n, v)


def test_phase_rendering():
    assert bb_phases(5).pi_string() == "0, 2/5, 6/5, 2/5, 0"
    assert universal_phases(3, 1).pi_string() == "0, 1/2, 0"
    assert bb_phases(3).phases == pytest.approx((0.0, 2 * PI / 3, 0.0))
    assert bb_phases(5).label == "n5"
    assert universal_phases(5, 2).label == "u5v2"
    assert bb_phases(5).describe() == "broadband n=5"
    assert universal_phases(5, 2).describe() == "universal n=5 variant 2"


def test_bb_palindrome_up_to_19():
    for n in range(1, 20, 2):
        fr = bb_phases(n).fractions
        assert all(fr[k] == fr[n - 1 - k] for k in range(n))


# --- gate sequences -----------------------------------------------------------

def test_gate_sequence_offsets():
    seq = gate_sequence(bb_phases(3), PI)
    xi_over_pi = [p / PI % 2 for p in seq.pulse_phases[3:]]
    assert xi_over_pi == pytest.approx([1.5, 1 / 6, 1.5])

    seq = gate_sequence(bb_phases(1), 0.0)
    assert seq.pulse_phases == pytest.approx((0.0, PI))

    seq = gate_sequence(universal_phases(5, 2), 2 * PI)  # standard reflection
    phi = seq.pulse_phases[:5]
    xi = seq.pulse_phases[5:]
    for p, x in zip(phi, xi):
        assert mod_2pi_distance(x - p) <= 1e-12


def test_gate_sequence_offset_invariant():
    rng = np.random.default_rng(9)
    for _ in range(10):
        alpha = rng.uniform(-2 * PI, 2 * PI)
        seq = gate_sequence(universal_phases(7, 1), alpha)
        n = 7
        for k in range(n):
            delta = seq.pulse_phases[n + k] - seq.pulse_phases[k]
            assert mod_2pi_distance(delta - PI - alpha / 2) <= 1e-12


# --- composition ---------------------------------------------------------------

def test_compose_single_and_inverse():
    u = resonant_propagator(0.8, 0.3)
    assert np.allclose(compose([u]).u, u.u, atol=1e-15)
    u_dag = Propagator2(u.u.conj().T)
    assert np.allclose(compose([u, u_dag]).u, np.eye(2), atol=1e-14)
    with pytest.raises(ValidationError):
        compose([])


def test_compose_order_is_first_pulse_first():
    a = constant_propagator(PulseSpec(rectangular(), 1.0, 0.7, detuning=0.5))
    b = resonant_propagator(1.1, 0.9)
    assert np.allclose(compose([a, b]).u, b.u @ a.u, atol=1e-15)


def test_two_pi_pulses_make_a_phase_gate():
    # direct 2x2 algebra: total a = cos^2(A/2) + sin^2(A/2) e^{i alpha/2}
    rng = np.random.default_rng(21)
    for _ in range(15):
        alpha = rng.uniform(-2 * PI, 2 * PI)
        area = rng.uniform(0.0, 2 * PI)
        tot = compose([resonant_propagator(area, 0.0),
                       resonant_propagator(area, PI + alpha / 2)])
        c2 = np.cos(area / 2) ** 2
        expected = c2 + (1 - c2) * np.exp(1j * alpha / 2)
        assert tot.a == pytest.approx(expected, abs=1e-13)
    exact = compose([resonant_propagator(PI, 0.0), resonant_propagator(PI, PI + 0.35)])
    assert np.allclose(exact.u, phase_gate(0.7), atol=1e-14)


# --- composite phase gate -------------------------------------------------------

def test_gate_is_exact_at_nominal_point():
    for fam in ALL_FAMILIES:
        for alpha in (0.0, PI / 2, PI, 2 * PI):
            g = composite_phase_gate(fam, alpha, PI).u
            assert np.linalg.norm(g - phase_gate(alpha)) <= 1e-12


def test_bb3_nominal_gate_matrix():
    g = composite_phase_gate(bb_phases(3), PI, PI).u
    assert np.allclose(g, np.diag([1j, -1j]), atol=1e-13)


def test_bb1_double_area_error_top_left():
    # alpha = 2*pi, per-pulse area 0.9*pi: a_tot = 2 cos^2(0.45 pi) - 1
    g = composite_phase_gate(bb_phases(1), 2 * PI, 0.9 * PI).u
    assert g[0, 0] == pytest.approx(-0.9510565162951535, abs=1e-13)


def test_identity_gate_for_alpha_zero():
    areas = np.linspace(0.0, 2 * PI, 41)
    for fam in ALL_FAMILIES:
        for area in areas:
            g = composite_phase_gate(fam, 0.0, area).u
            assert np.linalg.norm(g - np.eye(2)) <= 1e-12


def test_bb_flatness_order():
    # diagonal error of the bb gate is 2|sin(alpha/4)| cos^(2n)(A/2), exactly
    for n in (1, 3, 5, 9):
        fam = bb_phases(n)
        for alpha in (PI / 3, PI, 2 * PI):
            for area in np.linspace(0.1, 1.9, 7) * PI:
                g = composite_phase_gate(fam, alpha, area).u
                err = abs(g[0, 0] - np.exp(1j * alpha / 2))
                expected = 2 * abs(np.sin(alpha / 4)) * np.cos(area / 2) ** (2 * n)
                assert err == pytest.approx(expected, abs=1e-12)


def test_gate_accepts_detuning():
    fam = universal_phases(5, 2)
    g = composite_phase_gate(fam, PI, 0.9 * PI, detuning=0.3)
    # consistency with an explicit pulse-by-pulse build
    seq = gate_sequence(fam, PI)
    pulses = [constant_propagator(PulseSpec(rectangular(), 1.0, 0.9 * PI,
                                            detuning=0.3, phase=p))
              for p in seq.pulse_phases]
    assert np.max(np.abs(g.u - compose(pulses).u)) <= 1e-13


def test_zero_area_sequence_is_identity():
    seq = gate_sequence(bb_phases(3), PI)
    assert np.allclose(sequence_propagator(seq, 0.0, detuning=0.8).u, np.eye(2), atol=1e-15)


def test_family_config_round_trip():
    for fam in ALL_FAMILIES:
        doc = family_to_config(fam)
        again = family_from_config(doc)
        assert again.fractions == fam.fractions
        assert again.label == fam.label
    with pytest.raises(ValidationError):
        family_from_config({"family": "narrowband", "n": 3})
    with pytest.raises(ValidationError):
        family_from_config({"n": 3})
