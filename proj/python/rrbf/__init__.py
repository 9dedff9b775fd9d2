"""Rate-reliability beamforming MIMO-OFDM link simulator."""

from ._core import (
    DEFAULT_PHI1,
    DegenerateChannel,
    InvalidInput,
    IoError,
    QamConstellation,
    build_evcm,
    conditional_ml_detect,
    dft,
    eig_hermitian_2x2,
    eigen_beams,
    encode_alamouti,
    encode_rate2,
    exhaustive_ml_detect,
    ofdm_demodulate,
    ofdm_modulate,
    qam_modulate,
    qam_slice,
    run_psd,
    run_sweep,
    spectral_efficiency,
    validate,
    water_fill,
)

__all__ = [
    "DEFAULT_PHI1",
    "DegenerateChannel",
    "InvalidInput",
    "IoError",
    "QamConstellation",
    "build_evcm",
    "conditional_ml_detect",
    "dft",
    "eig_hermitian_2x2",
    "eigen_beams",
    "encode_alamouti",
    "encode_rate2",
    "exhaustive_ml_detect",
    "ofdm_demodulate",
    "ofdm_modulate",
    "qam_modulate",
    "qam_slice",
    "run_psd",
    "run_sweep",
    "spectral_efficiency",
    "validate",
    "water_fill",
]
