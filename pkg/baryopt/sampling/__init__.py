"""
Metropolis-Hastings sampling of Gibbs distributions on manifolds.
"""

from .chain import (
    ChainRun,
    ChainState,
    initial_state,
    iterate_chain,
    make_rng,
    mh_step,
    rejection_probability,
    run_chain,
    write_samples_csv,
)
from .kernels import ConjugationKernel, ProposalKernel, VonMisesFisherKernel, get_kernel

__all__ = [
    "ChainRun",
    "ChainState",
    "ConjugationKernel",
    "ProposalKernel",
    "VonMisesFisherKernel",
    "get_kernel",
    "initial_state",
    "iterate_chain",
    "make_rng",
    "mh_step",
    "rejection_probability",
    "run_chain",
    "write_samples_csv",
]
