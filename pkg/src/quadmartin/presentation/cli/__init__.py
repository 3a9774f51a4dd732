"""
CLI module - Command-line interface for quadmartin.

Commands are organized by the computation they expose.
"""
