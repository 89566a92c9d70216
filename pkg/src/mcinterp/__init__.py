"""Multichannel interpolation of periodic bandlimited signals."""

from .analysis import (ErrorReport, averaged_error, averaged_error_empirical,
                       consistency_residual, omega, rmse, spectral_sampler)
from .channels import (ChannelSpec, Kernel, build_kernel, build_matrix,
                       dump_bank, load_bank, multiplier)
from .engine import (FROM_F, FROM_F_AND_HF, SampleSet, demodulate,
                     estimate_a0, evaluate, evaluate_at, evaluate_translates,
                     hilbert_evaluate, ingest, reconstruct_spectrum,
                     sample_channels, take_real)
from .errors import *  # noqa: F401,F403
from .sisr import (DegradeConfig, ImagePlane, cc, degrade, psnr, upscale,
                   upscale_lines)
from .spectrum import (BandSpec, GridSignal, Spectrum, analyze, grid_times,
                       partition_bands, synthesize)

__version__ = "0.1.0"
