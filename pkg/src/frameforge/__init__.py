"""Deterministic frame constructions, coherence and sparsity certification."""
from .errors import *  # noqa: F401,F403
from .frame import Frame
from .linalg import Rng
from .finite import FiniteField, FieldElement, hadamard
from .designs import DesignIncidence, steiner_system, steiner_parameter_solver, verify_design
from .constructions import (
    build_code_frame, build_chirp, build_gabor, build_harmonic, build_harmonic_plus_identity,
    build_identity_fourier, build_paley_etf, build_planar, build_random, build_simplex,
    build_spherical_2design, build_steiner_etf, build_vandermonde, real_rotation,
)
from .coherence import (
    average_coherence, coherence_report, check_nu_sufficient_conditions, welch_lower_bound,
    worst_case_coherence,
)

__version__ = "0.1.0"
