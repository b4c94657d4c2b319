"""Two-mode squeezed light with one mode through an EIT slow-light cell.

Computes balanced-homodyne noise spectra, classifies the output against
strong and weak EPR criteria, and locates the transmission thresholds at
which squeezing and entanglement survive.
"""

from .eit import (
    ChannelPair,
    Susceptibility,
    channel_pair,
    fiber_phase,
    matched_fiber_length,
    susceptibility,
    transmission,
    window_edges,
    window_width,
)
from .epr import EprClassification, EprLevel, classify, conjugate_variances, threshold_scan
from .homodyne import (
    Formula,
    VarianceResult,
    optimal_phase,
    squeezing_band,
    variance,
    variance_exact,
    variance_matched,
    variance_mismatched,
)
from .opa import BogoliubovPair, bogoliubov, squeeze_floor
from .params import (
    EitParams,
    FiberParams,
    OpaParams,
    PhaseMode,
    RunConfig,
    default_paper_params,
    dump_config,
    load_config,
    validate,
)
from .sweeps import sweep_spectrum, sweep_transmission

__version__ = "0.1.0"
