"""formpreserve: form-preserving transformations of wave functions and Wigner distributions."""

from formpreserve.numerics import Grid1D, SampledWaveFunction, SpecialFnResult

__version__ = "0.1.0"

__all__ = ["Grid1D", "SampledWaveFunction", "SpecialFnResult", "__version__"]
