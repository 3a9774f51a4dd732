"""
quadmartin - Martin boundary and Green's function toolkit for a degenerate
obliquely reflected Brownian motion in the quadrant.

Evaluates boundary Laplace transforms and Martin harmonic functions by the
compensation method, the directional asymptotics and contour inversion of the
Green density, and cross-checks all of them against a Monte Carlo simulator.
"""

__version__ = "0.1.0"
__description__ = (
    "Compensation series, Martin harmonic functions and Green density asymptotics "
    "for degenerate reflected Brownian motion in the quadrant"
)
