"""Availability analysis of SDN and traditional backbone networks with
stochastic activity networks: exact CTMC solution, Monte Carlo
simulation, a model catalog and structural cut-set enumeration."""

from .core import (Activity, Case, CaseNormalizationError, ExpressionError,
                   InputArc, InputGate, MarkingError, OutputArc, OutputGate,
                   ParamError, Place, RewardVariable, SanError, SanModel,
                   SemanticsError, case_probs, enabled, fire, validate_model)
from .ctmc import (Generator, SolverError, StateCapExceeded, StateSpace,
                   SteadyState, expected_reward, explore, solve_unavailability,
                   steady_state)
from .sim import Estimate, SimConfig, run_estimate, simulate_replication

__version__ = "0.1.0"
