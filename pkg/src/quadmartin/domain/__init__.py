"""Domain layer - kernel geometry, compensation series and harmonic functions."""
