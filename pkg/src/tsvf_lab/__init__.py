"""Simulation toolkit for pre- and post-selected quantum systems."""

from .hilbert import Observable, SpectralForm, StateVector, inner, spectral_decompose, spin_observable, tensor_op, tensor_state
from .measurement import (ChainRecord, MeasurementChain, ProjectiveMeasurement, born_prob, collapse, post_selected_frequencies,
                          run_chain, sample_outcome, simulate)
from .rng import RngStream
from .tsvf import TwoStateVector, abl_general, abl_prob, decomposition_check, time_reverse, weak_value
from .weakpointer import PointerModel, pointer_distribution, pointer_mean, weak_convergence_report

__version__ = "0.1.0"
