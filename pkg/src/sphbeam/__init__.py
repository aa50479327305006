"""Optimal modal beamforming and independent steering for spherical
loudspeaker arrays."""

from .design import (
    ModalWeights,
    dolph_chebyshev_weights,
    hypercardioid_pattern,
    max_directivity_weights,
    max_wng_weights,
)
from .metrics import (
    MetricReport,
    directivity_factor,
    directivity_factor_integral,
    directivity_index,
    report,
    wng,
)
from .radiation import (
    ArrayGeometry,
    BeamPattern,
    Medium,
    SHVector,
    beam_pattern_field,
    beam_pattern_modal,
    cap_gain,
    dodecahedron,
    great_circle_angle,
    pressure_field,
    radial_far,
    radial_near,
    velocity_coeffs,
)
from .synthesis import (
    SteeredWeights,
    TransformMatrices,
    UnitWeights,
    build_transform,
    forward_weights,
    steer,
    unit_weights,
)
from .virtualmeas import (
    SamplingGrid,
    TransferMatrix,
    discrete_sft,
    gaussian_grid,
    measured_pattern,
    near_field_steer,
    pattern_error,
    perturb_transfer,
    transfer_matrix,
    virtual_measure,
)

__version__ = "0.1.0"
