"""minkgeo - computational geometry of Lorentz-Minkowski and pseudo-Euclidean spaces."""

__version__ = "0.1.0"
