"""Randomized decision of tripartite-to-bipartite SLOCC convertibility.

A state |psi>_ABC can reach a Schmidt-rank-d state |phi>_AB by stochastic
LOCC iff the support of rho_AB holds a matrix of rank >= d. The decider
tests that by sampling the support (Schwartz-Zippel) and certifies every
YES with an exact rank computation; the :mod:`slocc_pit.pit` subpackage
reduces polynomial identity testing of arithmetic formulas to it.
"""
from .decider import (DecisionParams, DecisionReport, SamplePoint, Witness, assemble,
                      decide_slocc, flanders_check, make_witness, oracle_report, sample_point)
from .errors import (DimensionError, FormulaSyntaxError, InstanceTooLargeError,
                     InvalidInstanceError, ParameterError, SloccError)
from .linalg import GaussianRational, Mat, det_exact, rank_exact, stack_vec
from .oracle import MultiPoly, grid_decide, minors_all_zero, poly_det_symbolic
from .states import (BipartiteState, PureTensor3, SubspaceBasis, charlie_slices, load_state,
                     schmidt_rank, support_dim)

__version__ = "0.1.0"
