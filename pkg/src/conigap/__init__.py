"""conigap: conifold-gap direct integration for local P2.

Subpackages:

- :mod:`conigap.series`     exact truncated Laurent series over Q
- :mod:`conigap.mirror`     B-model generators and mirror maps, both charts
- :mod:`conigap.anomaly`    holomorphic-anomaly direct integration and the gap
- :mod:`conigap.elliptic`   floating-point elliptic layer (theta, resolvent, density)
- :mod:`conigap.recursion`  numeric spectral-curve recursion and free energies
- :mod:`conigap.coulomb`    Metropolis sampler for the conifold ensemble
"""

from .series import TruncatedLaurentSeries

__all__ = ["TruncatedLaurentSeries"]
__version__ = "0.1.0"
