"""
CLI commands module.

Contains individual command modules organized by functionality.
"""
