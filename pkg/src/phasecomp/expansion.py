"""Taylor expansion of the composed propagator around the zero-error point.

The first diagonal element U11 of the total propagator is built with jet
arithmetic in the error variables and its coefficients are read off exactly.
For the double model the variables are (alpha, eps); for the triple model
(alpha, delta, eps), with delta the detuning in units of the nominal Rabi
frequency (an absolute offset -- a relative detuning error at zero detuning
would be degenerate).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import jets
from .su2 import CompositeSequence, ErrorModel, PulseSpec

__all__ = [
    "DEFAULT_DOUBLE_CAPS",
    "DEFAULT_TRIPLE_CAPS",
    "CoefficientTable",
    "EvenOrderReport",
    "expand_u11",
    "check_even_j",
]

# Per-variable order caps: (alpha, eps) and (alpha, delta, eps).  Chosen to
# cover every catalog target plus guard orders.
DEFAULT_DOUBLE_CAPS = (5, 2)
DEFAULT_TRIPLE_CAPS = (5, 5, 2)


@dataclass(frozen=True)
class CoefficientTable:
    """All Taylor coefficients of U11 within the caps."""

    caps: tuple[int, ...]
    entries: dict

    def coefficient(self, index) -> complex:
        index = tuple(int(i) for i in index)
        if index not in self.entries:
            raise IndexError(f"index {index} outside caps {self.caps}")
        return self.entries[index]

    def to_jsonable(self) -> dict:
        return {
            "caps": list(self.caps),
            "entries": [
                {"idx": list(idx), "re": c.real, "im": c.imag}
                for idx, c in sorted(self.entries.items())
            ],
        }


def _pulse_jets(pulse: PulseSpec, model: ErrorModel, caps):
    """Cayley-Klein pair of one pulse as jets in the error variables."""
    if model.kind == "double":
        alpha = jets.variable(0, 0.0, caps)
        eps = jets.variable(1, 0.0, caps)
        half = (0.5 * pulse.area) * (1.0 + alpha)
        a = jets.cos(half)
        b = -1j * jets.sin(half) * jets.exp_i(pulse.phase * (1.0 + eps))
    else:
        alpha = jets.variable(0, 0.0, caps)
        delta = jets.variable(1, 0.0, caps)
        eps = jets.variable(2, 0.0, caps)
        omega = pulse.rabi * (1.0 + alpha)
        det = pulse.detuning + model.nominal_rabi * delta
        w = jets.sqrt(omega * omega + det * det)
        sin_over_w = jets.sin((0.5 * pulse.duration) * w) / w
        a = jets.cos((0.5 * pulse.duration) * w) - 1j * det * sin_over_w
        b = -1j * omega * sin_over_w * jets.exp_i(pulse.phase * (1.0 + eps))
    return a, b


def expand_u11(
    seq: CompositeSequence, model: ErrorModel, caps=None
) -> CoefficientTable:
    """Exact Taylor coefficients of U11 of the composed propagator."""
    if caps is None:
        caps = DEFAULT_DOUBLE_CAPS if model.kind == "double" else DEFAULT_TRIPLE_CAPS
    caps = tuple(int(c) for c in caps)
    if len(caps) != model.num_errors:
        raise ValueError(f"caps {caps} do not match the {model.kind} model")

    cache: dict[PulseSpec, tuple] = {}
    a = jets.constant(1.0, caps)
    b = jets.constant(0.0, caps)
    for pulse in seq.pulses:
        if pulse not in cache:
            cache[pulse] = _pulse_jets(pulse, model, caps)
        pa, pb = cache[pulse]
        a, b = pa * a - pb * b.conjugate(), pa * b + pb * a.conjugate()

    entries = {
        idx: a.coefficient(idx)
        for idx in itertools.product(*(range(c + 1) for c in caps))
    }
    return CoefficientTable(caps=caps, entries=entries)


# -- batched evaluation ----------------------------------------------------
#
# The solver evaluates U11 coefficients at many phase vectors per Newton
# iteration.  Only the phase factor differs between pulses and between batch
# elements, so the area/detuning series is built once with jet arithmetic
# and the batch dimension rides along in plain array convolutions.


def _phase_factor_batch(phases: "np.ndarray", k_cap: int) -> "np.ndarray":
    """Taylor coefficients in eps of exp(i*phi*(1+eps)), shape (B, k_cap+1)."""
    out = np.empty((phases.shape[0], k_cap + 1), dtype=complex)
    out[:, 0] = np.exp(1j * phases)
    for k in range(1, k_cap + 1):
        out[:, k] = out[:, k - 1] * (1j * phases) / k
    return out


def _bconv(a: "np.ndarray", b: "np.ndarray") -> "np.ndarray":
    """Truncated convolution over all trailing axes; leading axis is batch."""
    dims = a.shape[1:]
    batch = max(a.shape[0], b.shape[0])
    out = np.zeros((batch,) + dims, dtype=complex)
    for idx in itertools.product(*(range(d) for d in dims)):
        coeff = a[(slice(None),) + idx]
        if not coeff.any():
            continue
        dst = (slice(None),) + tuple(slice(i, None) for i in idx)
        src = (slice(None),) + tuple(slice(0, d - i) for i, d in zip(idx, dims))
        out[dst] += coeff.reshape((-1,) + (1,) * len(dims)) * b[src]
    return out


def _conv_last_axis(base: "np.ndarray", factor: "np.ndarray") -> "np.ndarray":
    """Convolve a batch-free series with per-batch coefficients on the last axis."""
    k_len = base.shape[-1]
    out = np.zeros((factor.shape[0],) + base.shape, dtype=complex)
    for k in range(min(k_len, factor.shape[1])):
        coeff = factor[:, k].reshape((-1,) + (1,) * base.ndim)
        out[..., k:] += coeff * base[None, ..., : k_len - k]
    return out


def u11_coefficients_batch(
    phase_lists: "np.ndarray", model: ErrorModel, caps
) -> "np.ndarray":
    """U11 Taylor coefficient arrays for a batch of nominal-pi-pulse trains.

    `phase_lists` has shape (B, N) and holds full nominal phases in radians;
    the result has shape (B, *(caps+1)).  Agrees with :func:`expand_u11`
    coefficient-by-coefficient (the scalar jet path serves as a cross-check).
    """
    caps = tuple(int(c) for c in caps)
    phase_lists = np.asarray(phase_lists, dtype=float)
    batch, n_pulses = phase_lists.shape
    base = PulseSpec(area=math.pi, phase=0.0)
    a_jet, b_jet = _pulse_jets(base, model, caps)
    a0 = a_jet.coeffs[None, ...]
    sinb = b_jet.coeffs  # phase factor is 1 at phi = 0

    shape = tuple(c + 1 for c in caps)
    a_tot = np.zeros((batch,) + shape, dtype=complex)
    a_tot[(slice(None),) + (0,) * len(caps)] = 1.0
    b_tot = np.zeros((batch,) + shape, dtype=complex)
    for p in range(n_pulses):
        pf = _phase_factor_batch(phase_lists[:, p], caps[-1])
        pb = _conv_last_axis(sinb, pf)
        a_new = _bconv(a0, a_tot) - _bconv(pb, np.conj(b_tot))
        b_new = _bconv(a0, b_tot) + _bconv(pb, np.conj(a_tot))
        a_tot, b_tot = a_new, b_new
    return a_tot


@dataclass(frozen=True)
class EvenOrderReport:
    """Largest |coefficient| per even alpha-order, and the verdict."""

    max_abs: dict
    tolerance: float

    @property
    def ok(self) -> bool:
        # j = 0 entries are reported but exempt: only even orders >= 2 are
        # forced to vanish by the phase symmetry.
        return all(v < self.tolerance for j, v in self.max_abs.items() if j >= 2)


def check_even_j(
    seq: CompositeSequence, model: ErrorModel, caps=None, tol: float = 1e-10
) -> EvenOrderReport:
    """Check that even-order alpha coefficients of a symmetric train vanish."""
    if not seq.symmetric:
        raise ValueError("even-order symmetry check requires a symmetric sequence")
    table = expand_u11(seq, model, caps)
    max_abs: dict[int, float] = {}
    for idx, c in table.entries.items():
        j = idx[0]
        if j % 2 == 0:
            max_abs[j] = max(max_abs.get(j, 0.0), abs(c))
    return EvenOrderReport(max_abs=max_abs, tolerance=tol)
