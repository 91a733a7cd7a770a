"""Two-photon ionization by STIRAP into a continuum, with and without LICS."""
from .pulses import GaussianPulse, PulseSet, evaluate, time_window
from .model import (ModelParams, TWO_LEVEL, THREE_LEVEL, hamiltonian, hamiltonian_2,
                    hamiltonian_3, loss_split, check_conditions)
from .dynamics import (NumericalFailure, ResidualPopulationWarning, Signals, StateVector,
                       Trajectory, norm, propagate, signals_from, simulate)
from .eigen import DefectiveMatrix, ExactEigensystem, exact_eigensystem, track_continuity
from .adiabatic import (DegenerateDenominator, EliminationDomainError, analytic_populations,
                        analytic_signals, analytic_trajectory, elimination_p1_p2,
                        perturbative_eigensystem, quasi_dark_p0, tilde)
from .sweep import AxisSpec, SweepResult, argmax, sweep
from . import presets

__version__ = "0.1.0"
