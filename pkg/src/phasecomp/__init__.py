"""Composite pi-pulse sequences whose relative phases tolerate systematic errors.

Subpackages:

- :mod:`phasecomp.su2` -- exact two-level propagators and sequence composition
- :mod:`phasecomp.jets` -- truncated multivariate Taylor-series arithmetic
- :mod:`phasecomp.expansion` -- coefficient tables of the composed propagator
- :mod:`phasecomp.catalog` -- published sequences and phase transformations
- :mod:`phasecomp.solver` -- multi-start Newton nullification of coefficients
- :mod:`phasecomp.profiler` -- error-plane probability scans and region metrics
- :mod:`phasecomp.cli` -- the `phasecomp` command-line tool
"""

from .su2 import (
    DOUBLE,
    TRIPLE,
    CompositeSequence,
    ErrorModel,
    Propagator,
    PulseSpec,
    compose,
    pi_pulse_train,
    rectangular_propagator,
    resonant_propagator,
    sequence_propagator,
    transition_probability,
)

__version__ = "0.1.0"

__all__ = [
    "DOUBLE",
    "TRIPLE",
    "CompositeSequence",
    "ErrorModel",
    "Propagator",
    "PulseSpec",
    "compose",
    "pi_pulse_train",
    "rectangular_propagator",
    "resonant_propagator",
    "sequence_propagator",
    "transition_probability",
    "__version__",
]
