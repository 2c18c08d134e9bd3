"""Rotation domains for the quadratic Henon family near the 1:3 resonance.

The package splits into a parameter layer (params), the two maps and orbit
classification (henon), formal normal forms on jets (jets, bnf), the limit
model vector fields and their flow (vfield), the spectral periodic-orbit
solver (spectral), Floquet analysis of that orbit (floquet), the search
recipes built on top (search), serialization (serialize), curated presets
(presets), and the CLI/HTTP front ends (cli, service).
"""

from .errors import (BranchFailure, DegenerateMultipliers, DegreeMismatch,
                     DominanceFailure, EigDivergence, HenonRingsError,
                     NoConvergence, SelectionFailure, SingularJacobian,
                     SmallDivisor, StepFailure, TooShort)
from .params import (Params, alpha_from_beta_c, mu_delta, params_from_beta_c,
                     params_from_resonant, reversibility_tau)
from .henon import (BOUNDED, MAP_HENON, MAP_HENON_MOD, OrbitStatus,
                    OrbitTrace, PlanarPoint, attraction_thirds,
                    classify_orbit, frame_from_mod, frame_to_mod,
                    henon_inverse_step, henon_mod_step, henon_step, iterate,
                    sigma)
from .jets import (MAX_DEGREE, Jet2, canonical_map, generating_jet,
                   identity_pair, jacobian_det_jet, jet_compose, lie_flow_map,
                   poisson)
from .bnf import bnf_normal_form_jet, cohomological_solve, hmod_jet, resonant_bnf
from .vfield import (CONV_ABSORBED, CONV_TWO_PI, KIND_X_TAU, KIND_XHAT,
                     FlowResult, ModelField, eval_field, field_components,
                     fixed_points, flow, seed_locator)
from .spectral import (CONV_HAT, CONV_UNHAT, DEFAULT_N, DEFAULT_W1,
                       FourierOrbit, coarse_frequency, convert, decay_fit,
                       evaluate, fine_frequency, frequency_derivative,
                       initial_guess, newton_solve, residual, tail_residual,
                       translate)
from .floquet import (FloquetData, build_linearization_operator,
                      derived_quantities, det_fourier_coeffs,
                      floquet_eigensolve, floquet_report, periodic_frame,
                      resolvent, resolvent_residual)
from .search import (SearchReport, approximate_rotation, find_exotic,
                     find_herman, phi_y_leading, seed_chain, sweep_exotic)
from .presets import Preset, get_preset, load_golden_orbit, load_registry, preset_names
from .serialize import SCHEMA_VERSION, canonical_json

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
