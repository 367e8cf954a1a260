"""Pseudo-spectral anisotropic Navier-Stokes with nonlinear damping.

Thin wrapper over the C++ core. The main entry points:

- ``Grid((N1, N2, N3), box)`` and the spectral operators
  (``forward_transform``, ``inverse_transform``, ``leray_project``,
  ``friedrichs_cutoff``, ``derivative``, ``horizontal_laplacian``)
- norms (``lebesgue_norm``, ``sobolev_norm``, ``h01_norm``, ``mixed_norm``)
- ``run_simulation(config_json)`` for full runs with an energy ledger
- verification helpers (``monotonicity_check``, ``gronwall_envelope``,
  ``b_alpha``, ``product_law_probe``, ``stability_probe``)

Fields are numpy arrays of shape ``(3, N1, N2, N3)``: real samples on the
collocation lattice, complex coefficients in mode space.
"""

import json as _json

from ._core import (  # noqa: F401
    BlowUpError,
    ConfigError,
    Grid,
    b_alpha,
    damping_term,
    derivative,
    forward_transform,
    friedrichs_cutoff,
    gronwall_envelope,
    h01_norm,
    horizontal_laplacian,
    inverse_transform,
    lebesgue_norm,
    leray_project,
    max_divergence,
    mixed_norm,
    monotonicity_check,
    nonlinear_term,
    product_law_probe,
    random_divergence_free,
    run_simulation,
    sobolev_norm,
    stability_probe,
    taylor_green,
)
from ._core import __version__  # noqa: F401


def run(config):
    """Run a simulation from a config dict (or JSON string)."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return run_simulation(config)
