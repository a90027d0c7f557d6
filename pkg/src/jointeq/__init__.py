"""Coherent-link simulation and end-to-end transceiver-joint equalizer
optimization for cascaded WSS filtering impairments.

Two chains share one codebase: a conventional evaluation link (Tx DSP,
fiber/EDFA/WSS channel, Rx DSP with adaptive equalization) used for
scoring, and a differentiable twin of it in which the Tx pre-equalizer
and Rx equalizer are trainable convolution layers while every other
stage is a static layer with a hand-derived vector-Jacobian product.
"""

from .errors import ConfigError, DivergenceError, ShapeError, StateError

__all__ = ["ConfigError", "DivergenceError", "ShapeError", "StateError"]
__version__ = "0.1.0"
