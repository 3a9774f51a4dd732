"""Infrastructure layer - Monte Carlo simulation engine."""
