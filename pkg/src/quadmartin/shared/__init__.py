"""Shared utilities and cross-cutting concerns."""
