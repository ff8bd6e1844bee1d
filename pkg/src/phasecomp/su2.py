"""Exact SU(2) propagators for single pulses and composite sequences.

A propagator is held as the Cayley-Klein pair (a, b), i.e. the unitary

    [[ a,        b      ],
     [-conj(b),  conj(a)]],

with |a|^2 + |b|^2 = 1.  The transition probability of a sequence acting on
a system prepared in the first state is |b|^2 of the total propagator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "UNITARITY_TOL",
    "Propagator",
    "PulseSpec",
    "CompositeSequence",
    "ErrorModel",
    "DOUBLE",
    "TRIPLE",
    "resonant_propagator",
    "rectangular_propagator",
    "compose",
    "sequence_propagator",
    "transition_probability",
    "pi_pulse_train",
]

UNITARITY_TOL = 1e-12

# Below this total phase the rectangular propagator switches to the series
# (sinc) branch to avoid 0/0.
_SINC_THRESHOLD = 1e-8


@dataclass(frozen=True)
class Propagator:
    """SU(2) matrix as a Cayley-Klein pair."""

    a: complex
    b: complex

    def unitarity_defect(self) -> float:
        return abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0)

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.a, self.b], [-np.conj(self.b), np.conj(self.a)]], dtype=complex
        )


@dataclass(frozen=True)
class PulseSpec:
    """One pulse: nominal area and phase, plus the rectangular-model knobs.

    For the resonant model only `area` and `phase` matter; `rabi`, `detuning`
    and `duration` parameterize the rectangular model, with rabi * duration
    equal to the area at the nominal point.
    """

    area: float
    phase: float
    rabi: float = math.pi
    detuning: float = 0.0
    duration: float = 1.0


@dataclass(frozen=True)
class CompositeSequence:
    """Ordered pulse train with a label and symmetry metadata."""

    pulses: tuple[PulseSpec, ...]
    label: str = ""
    symmetric: bool = False

    def __len__(self) -> int:
        return len(self.pulses)

    @property
    def phases(self) -> tuple[float, ...]:
        """Nominal phases in radians."""
        return tuple(p.phase for p in self.pulses)

    @property
    def phases_pi(self) -> tuple[float, ...]:
        """Nominal phases in units of pi."""
        return tuple(p.phase / math.pi for p in self.pulses)


@dataclass(frozen=True)
class ErrorModel:
    """Which systematic errors perturb the sequence.

    kind "double": relative pulse-area error alpha and relative phase error
    eps, error vector (alpha, eps).  kind "triple": relative Rabi-frequency
    error alpha, detuning delta in units of the nominal Rabi frequency, and
    relative phase error eps, error vector (alpha, delta, eps).
    """

    kind: str
    nominal_rabi: float = math.pi
    nominal_duration: float = 1.0

    def __post_init__(self):
        if self.kind not in ("double", "triple"):
            raise ValueError(f"unknown error model kind {self.kind!r}")

    @property
    def num_errors(self) -> int:
        return 2 if self.kind == "double" else 3


DOUBLE = ErrorModel("double")
TRIPLE = ErrorModel("triple")


def resonant_propagator(area: float, phase: float) -> Propagator:
    """Propagator of a resonant pulse with the given temporal area and phase."""
    half = 0.5 * area
    return Propagator(
        a=complex(math.cos(half)),
        b=-1j * math.sin(half) * cmath.exp(1j * phase),
    )


def rectangular_propagator(
    rabi: float, detuning: float, duration: float, phase: float
) -> Propagator:
    """Propagator of a rectangular pulse with constant Rabi frequency and detuning."""
    if duration <= 0:
        raise ValueError("duration must be positive")
    w = math.hypot(rabi, detuning)
    half = 0.5 * w * duration
    if w * duration < _SINC_THRESHOLD:
        # sin(half)/w -> duration/2 as w -> 0
        sin_over_w = 0.5 * duration * (1.0 - half * half / 6.0)
    else:
        sin_over_w = math.sin(half) / w
    return Propagator(
        a=math.cos(half) - 1j * detuning * sin_over_w,
        b=-1j * rabi * sin_over_w * cmath.exp(1j * phase),
    )


def compose(propagators) -> Propagator:
    """Total propagator of a list of pulses; the first entry acts first."""
    props = list(propagators)
    if not props:
        raise ValueError("empty sequence")
    a, b = props[0].a, props[0].b
    for p in props[1:]:
        a, b = p.a * a - p.b * b.conjugate(), p.a * b + p.b * a.conjugate()
    return Propagator(a, b)


def sequence_propagator(
    seq: CompositeSequence, model: ErrorModel, errors
) -> Propagator:
    """Propagator of the sequence with its nominal parameters perturbed.

    The error vector is (alpha, eps) for the double model and
    (alpha, delta, eps) for the triple model.  The phase error multiplies
    the nominal phase, so a zero nominal phase is error-free.
    """
    errors = tuple(errors)
    if len(errors) != model.num_errors:
        raise ValueError(
            f"error vector has length {len(errors)}, expected {model.num_errors} "
            f"for the {model.kind} model"
        )
    if model.kind == "double":
        alpha, eps = errors
        props = [
            resonant_propagator(p.area * (1.0 + alpha), p.phase * (1.0 + eps))
            for p in seq.pulses
        ]
    else:
        alpha, delta, eps = errors
        props = [
            rectangular_propagator(
                p.rabi * (1.0 + alpha),
                p.detuning + delta * model.nominal_rabi,
                p.duration,
                p.phase * (1.0 + eps),
            )
            for p in seq.pulses
        ]
    return compose(props)


def transition_probability(u: Propagator) -> float:
    """Population transferred between the two states, |b|^2."""
    return abs(u.b) ** 2


def _is_palindrome(values, tol=1e-12) -> bool:
    return all(abs(values[i] - values[-1 - i]) <= tol for i in range(len(values) // 2))


def pi_pulse_train(phases_pi, label: str = "") -> CompositeSequence:
    """Sequence of nominal pi pulses with the given phases (units of pi)."""
    phases_pi = tuple(float(p) for p in phases_pi)
    pulses = tuple(
        PulseSpec(area=math.pi, phase=p * math.pi, rabi=math.pi, duration=1.0)
        for p in phases_pi
    )
    symmetric = (
        len(phases_pi) >= 1
        and _is_palindrome(phases_pi)
        and abs(phases_pi[0]) <= 1e-12
        and abs(phases_pi[-1]) <= 1e-12
    )
    return CompositeSequence(pulses=pulses, label=label, symmetric=symmetric)
