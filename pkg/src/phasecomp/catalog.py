"""Named composite sequences, phase-family formulas, and phase transformations.

All stored phases are in units of pi, exactly as published (four decimals for
the numerically derived rows).  Note the Phi13b source lists a stray ")" where
a "," belongs; the value is stored as 0.2744.

The transformations (sign flip, +-2*pi on individual phases, reversal, global
shift) leave the transition probability invariant in the absence of phase
errors.  With a systematic phase error only the sign flip, the reversal and
the global shift survive: adding 2*pi to a phase changes the sequence because
the error multiplies the nominal phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .su2 import CompositeSequence, pi_pulse_train

__all__ = [
    "names",
    "get_sequence",
    "nullified_terms",
    "bn_phases",
    "bn_sequence",
    "sign_flip",
    "add_2pi",
    "reverse",
    "global_shift",
    "canonicalize",
    "CanonicalPhases",
    "sequence_to_jsonable",
    "sequence_from_jsonable",
]

# name -> (interior phases phi_2..phi_{n+1} in units of pi, nullified indices)
# Full phase lists are the palindromes (0, phi_2, ..., phi_{n+1}, ..., phi_2, 0).
_INTERIOR = {
    "B3": ((2 / 3,), ((1, 0),)),
    "B5a": ((4 / 5, 2 / 5), ((1, 0), (3, 0))),
    "B5b": ((2 / 5, 6 / 5), ((1, 0), (3, 0))),
    "B5c": ((6 / 5, 8 / 5), ((1, 0), (3, 0))),
    "B5d": ((8 / 5, 4 / 5), ((1, 0), (3, 0))),
    "Phi5": ((0.7433, 0.3951), ((1, 0), (1, 1))),
    "Phi7": ((0.5906, -0.3069, -0.5749), ((1, 0), (1, 1), (3, 0))),
    "Phi9a": ((0.8095, 0.5444, 1.1007, 0.1715), ((1, 0), (1, 1), (1, 2), (3, 0))),
    "Phi9b": ((1.4073, 0.2688, 0.6144, 1.6587), ((1, 0), (1, 1), (3, 0), (3, 1))),
    "Phi11a": (
        (0.6713, 0.3049, 1.0965, 0.7176, 0.0956),
        ((1, 0), (1, 1), (3, 0), (3, 1), (5, 0)),
    ),
    "Phi11b": (
        (0.6934, 0.3176, 1.1303, 0.7420, 0.1010),
        ((1, 0), (1, 1), (1, 2), (3, 0), (3, 1)),
    ),
    "Phi13a": (
        (0.8097, 0.2288, -0.0720, -0.9158, -0.1132, 0.8688),
        ((1, 0), (1, 1), (3, 0), (3, 1), (5, 0), (5, 1)),
    ),
    "Phi13b": (
        (0.8150, 0.2523, 0.6393, -0.2552, -0.4568, 0.2744),
        ((1, 0), (1, 1), (1, 2), (3, 0), (3, 1), (3, 2)),
    ),
    "Phi13c": (
        (0.7639, 0.1842, -0.1071, -0.8840, -0.0756, 0.8432),
        ((1, 0), (1, 1), (1, 2), (3, 0), (3, 1), (5, 0)),
    ),
    # Universal nine-pulse broadband sequence (rectangular-pulse benchmark).
    "U9": ((0.635, 1.35, 0.553, 0.297), ((1, 0),)),
    # Triple-compensating nine-pulse sequence; its nullified set is verified
    # by profile comparison rather than by residuals.
    "T9": ((1.348, 1.257, 0.166, 0.167), ()),
}


def _full_phases(interior) -> tuple[float, ...]:
    interior = tuple(interior)
    return (0.0, *interior, *interior[-2::-1], 0.0)


def _normalize(name: str) -> str:
    key = name.replace("Φ", "Phi").strip()
    lowered = {k.lower(): k for k in _INTERIOR}
    if key.lower() not in lowered:
        raise ValueError(f"unknown sequence {name!r}")
    return lowered[key.lower()]


def names() -> tuple[str, ...]:
    return tuple(_INTERIOR)


def get_sequence(name: str) -> CompositeSequence:
    """Catalog sequence by name (e.g. "B3", "Phi5", "T9")."""
    key = _normalize(name)
    interior, _ = _INTERIOR[key]
    return pi_pulse_train(_full_phases(interior), label=key)


def nullified_terms(name: str) -> tuple[tuple[int, ...], ...]:
    """Coefficient indices the named sequence was designed to cancel."""
    _, nullified = _INTERIOR[_normalize(name)]
    return nullified


def bn_phases(n_pulses: int, variant: int, reduce_mod_2pi: bool = False) -> np.ndarray:
    """Phases (units of pi) of the analytic broadband pi-pulse family.

    For N = 2n+1 pulses, variant 1 is phi_k = k(k-1) n / N and variant 2 is
    phi_k = k(k-1) / N, k = 1..N.  Raw formula values by default: with a
    phase error the mod-2pi reduction is a physically different sequence,
    so the reduction must be requested explicitly.
    """
    if n_pulses < 3 or n_pulses % 2 == 0:
        raise ValueError("N must be an odd integer >= 3")
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    n = (n_pulses - 1) // 2
    k = np.arange(1, n_pulses + 1)
    scale = n if variant == 1 else 1
    phases = k * (k - 1) * scale / n_pulses
    if reduce_mod_2pi:
        phases = np.mod(phases, 2.0)
    return phases.astype(float)


def bn_sequence(n_pulses: int, variant: int, reduce_mod_2pi: bool = False) -> CompositeSequence:
    phases = bn_phases(n_pulses, variant, reduce_mod_2pi)
    suffix = "/mod2pi" if reduce_mod_2pi else ""
    return pi_pulse_train(phases, label=f"B{n_pulses}.{variant}{suffix}")


# -- phase transformations -------------------------------------------------


def sign_flip(seq: CompositeSequence) -> CompositeSequence:
    out = pi_pulse_train([-p for p in seq.phases_pi], label=f"{seq.label}+sign_flip")
    return out


def add_2pi(seq: CompositeSequence, k: int, multiple: int = 1) -> CompositeSequence:
    """Add `multiple` * 2*pi to the phase of pulse k (1-based, paper convention)."""
    if not 1 <= k <= len(seq):
        raise ValueError(f"pulse index {k} out of range 1..{len(seq)}")
    phases = list(seq.phases_pi)
    phases[k - 1] += 2.0 * multiple
    return pi_pulse_train(phases, label=f"{seq.label}+add2pi[{k}]{multiple:+d}")


def reverse(seq: CompositeSequence) -> CompositeSequence:
    return pi_pulse_train(list(seq.phases_pi)[::-1], label=f"{seq.label}+reverse")


def global_shift(seq: CompositeSequence, shift_pi: float) -> CompositeSequence:
    """Add the same phase (units of pi) to every pulse."""
    phases = [p + shift_pi for p in seq.phases_pi]
    return pi_pulse_train(phases, label=f"{seq.label}+shift{shift_pi:+g}pi")


@dataclass(frozen=True)
class CanonicalPhases:
    """Result of canonicalization, with the applied bookkeeping."""

    phases_pi: tuple[float, ...]
    shift_pi: float
    sign_flipped: bool
    # Indices of phases lying outside both [0, 2) and (-1, 1] (units of pi).
    # Reported, never silently wrapped.
    out_of_range: tuple[int, ...]


def canonicalize(phases_pi, tol: float = 1e-12) -> CanonicalPhases:
    """Canonical representative: zero outer phase, positive leading phase.

    Applies a global shift so the first phase is 0 and a sign flip if the
    first nonzero phase is negative.  Both operations leave the probability
    landscape unchanged even under phase errors.  Any phase outside both
    canonical windows is flagged but kept as-is.
    """
    phases = [float(p) for p in phases_pi]
    shift = -phases[0]
    phases = [p + shift for p in phases]
    flipped = False
    for p in phases:
        if abs(p) > tol:
            if p < 0:
                flipped = True
                phases = [-q for q in phases]
            break
    out_of_range = tuple(
        i
        for i, p in enumerate(phases)
        if not (0.0 - tol <= p < 2.0) and not (-1.0 < p <= 1.0 + tol)
    )
    return CanonicalPhases(
        phases_pi=tuple(phases),
        shift_pi=shift,
        sign_flipped=flipped,
        out_of_range=out_of_range,
    )


# -- JSON interchange ------------------------------------------------------


def sequence_to_jsonable(seq: CompositeSequence, nullified=None) -> dict:
    if nullified is None and seq.label in _INTERIOR:
        nullified = _INTERIOR[seq.label][1]
    return {
        "name": seq.label,
        "phases_pi": [p for p in seq.phases_pi],
        "areas_pi": [p.area / math.pi for p in seq.pulses],
        "nullified": [list(t) for t in (nullified or ())],
    }


def sequence_from_jsonable(data: dict) -> CompositeSequence:
    phases = data["phases_pi"]
    areas = data.get("areas_pi")
    if areas is not None and any(abs(a - 1.0) > 1e-12 for a in areas):
        raise ValueError("only pi-pulse trains are supported")
    return pi_pulse_train(phases, label=data.get("name", ""))
