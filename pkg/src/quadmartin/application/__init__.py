"""Application layer - services coordinating domain computations."""
