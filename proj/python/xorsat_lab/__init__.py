"""k-XORSAT laboratory: instance sampling, GF(2) solving, 2-core peeling,
sequential decimation and the closed-form threshold/freeness numerics.

Thin wrapper over the compiled extension; see `xorsat_lab._core` for the
full surface.
"""

from ._core import (  # noqa: F401
    Instance,
    EliminationResult,
    MarginalValue,
    CoreResult,
    DecimationTrace,
    sample_instance,
    parse_instance,
    serialize,
    instance_hash,
    evaluate,
    hamming,
    eliminate,
    sample_solution,
    exact_marginal,
    peel,
    peel_randomized,
    project,
    extend_core_solution,
    run_decimation,
    free_fraction,
    theory,
)

__all__ = [
    "Instance",
    "EliminationResult",
    "MarginalValue",
    "CoreResult",
    "DecimationTrace",
    "sample_instance",
    "parse_instance",
    "serialize",
    "instance_hash",
    "evaluate",
    "hamming",
    "eliminate",
    "sample_solution",
    "exact_marginal",
    "peel",
    "peel_randomized",
    "project",
    "extend_core_solution",
    "run_decimation",
    "free_fraction",
    "theory",
]
