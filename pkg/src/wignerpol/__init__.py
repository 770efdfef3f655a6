"""SL(2,C) spinor kinematics, massless little-group phases and two-chart polarization states."""

from .charts import Chart, ChartedMomentum, LightlikeMomentum, coset_rep, coset_rep_alt, little_group, wigner_phase
from .core import E2Element, e2_matrix, e2_recognize, rotation_su2, boost_su2, spinor_map, su2_a
from .errors import ChartViolation, InputError, InvariantViolation, KinematicsError, NotInE2, NotInOverlap
from .massive import MassiveMomentum, SpinState, boost_massive, parity_massive, transport_massive, wigner_D
from .polarization import PolarizationState, convert_chart, parity_op, sigma_ops, tangent_field, transport_massless

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "ChartedMomentum",
    "LightlikeMomentum",
    "coset_rep",
    "coset_rep_alt",
    "little_group",
    "wigner_phase",
    "E2Element",
    "e2_matrix",
    "e2_recognize",
    "rotation_su2",
    "boost_su2",
    "spinor_map",
    "su2_a",
    "ChartViolation",
    "InputError",
    "InvariantViolation",
    "KinematicsError",
    "NotInE2",
    "NotInOverlap",
    "MassiveMomentum",
    "SpinState",
    "boost_massive",
    "parity_massive",
    "transport_massive",
    "wigner_D",
    "PolarizationState",
    "convert_chart",
    "parity_op",
    "sigma_ops",
    "tangent_field",
    "transport_massless",
]
