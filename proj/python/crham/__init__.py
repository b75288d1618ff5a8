from ._crham import (
    CrhamError,
    DeviceParams,
    DriveSpec,
    J_from_xi,
    Method,
    __version__,
    compositions,
    effective_cr,
    exchange_J,
    least_action_blockdiag,
    pauli_labels,
    qubit_analytic,
    third_order_coefficients,
    xi_static,
)

__all__ = [
    "CrhamError",
    "DeviceParams",
    "DriveSpec",
    "J_from_xi",
    "Method",
    "__version__",
    "compositions",
    "effective_cr",
    "exchange_J",
    "least_action_blockdiag",
    "pauli_labels",
    "qubit_analytic",
    "third_order_coefficients",
    "xi_static",
]
