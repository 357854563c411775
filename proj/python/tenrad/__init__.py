"""Sub-Nyquist MIMO radar simulation and recovery toolkit."""

from ._core import (
    ApertureOccupancy,
    CpFactors,
    Error,
    HitMatch,
    IndexSets,
    OmpResult,
    PartialMeasurementTensor,
    RadarConfig,
    SparseSceneTensor,
    Target,
    TargetScene,
    TcInit,
    TcResult,
    TcSolverConfig,
    add_noise,
    aperture_occupancy,
    build_index_sets,
    extract_parameters,
    feasibility_check_json,
    hankelize,
    hit_match,
    hit_rate,
    noise_variance_for_snr,
    omp_recover,
    run_sweep_json,
    scene_to_tensor,
    support_to_scene,
    synthesize,
    tc_recover,
)

__all__ = [
    "ApertureOccupancy",
    "CpFactors",
    "Error",
    "HitMatch",
    "IndexSets",
    "OmpResult",
    "PartialMeasurementTensor",
    "RadarConfig",
    "SparseSceneTensor",
    "Target",
    "TargetScene",
    "TcInit",
    "TcResult",
    "TcSolverConfig",
    "add_noise",
    "aperture_occupancy",
    "build_index_sets",
    "extract_parameters",
    "feasibility_check_json",
    "hankelize",
    "hit_match",
    "hit_rate",
    "noise_variance_for_snr",
    "omp_recover",
    "run_sweep_json",
    "scene_to_tensor",
    "support_to_scene",
    "synthesize",
    "tc_recover",
]
