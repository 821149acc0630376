"""Detailed balance for an oscillator coupled to a one-dimensional scalar field.

An oscillator at rest in a thermal field, and one in uniformly accelerated
motion through the vacuum, both radiate no net energy: what they emit is
cancelled by interference with the field fluctuations that drive them.  The
package evaluates the correlators, kernels and fluxes involved and checks
these cancellations numerically.
"""

__version__ = "0.1.0"

from .params import NaturalUnits, PhysicalParams, load_params, validate  # noqa: E402
from .quadrature import QuadratureSpec  # noqa: E402
from .kinematics import FieldPoint, Worldline  # noqa: E402
from .response import susceptibility  # noqa: E402
from .flux import FluxReport, net_flux_moving, net_flux_stationary  # noqa: E402

__all__ = [
    "__version__",
    "PhysicalParams",
    "NaturalUnits",
    "QuadratureSpec",
    "Worldline",
    "FieldPoint",
    "FluxReport",
    "load_params",
    "validate",
    "susceptibility",
    "net_flux_stationary",
    "net_flux_moving",
]
