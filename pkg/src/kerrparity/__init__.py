"""Second-order (Kerr) nonlinear phase estimation with coherent light and parity detection."""
from ._backend import BACKEND
from .errors import DegeneratePointError, KerrParityError, NonIdentifiableError, SolverError
from .metrology import (
    ResolutionReport,
    SensitivityReport,
    broadening_coefficient,
    classical_fisher,
    fwhm,
    model_fwhm,
    optimal_sensitivity,
    resolution_coefficient,
    sensitivity,
)
from .qfi import QfiReport, poisson_weight, qcrb, qfi_closed_form, qfi_component, qfi_phase_averaged
from .series import (
    SeriesParams,
    TruncationPolicy,
    eval_series,
    eval_series_derivative,
    log_factorial,
    truncation_bound,
)
from .signal import (
    DetectorModel,
    InterferometerSpec,
    LossModel,
    ParityModel,
    SignalTrace,
    even_odd_probabilities,
    parity_detector,
    parity_ideal,
    parity_joint,
    parity_linear_reference,
    parity_lossy,
    sample_trace,
    visibility,
)

__version__ = "0.1.0"
