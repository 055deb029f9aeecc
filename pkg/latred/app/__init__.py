"""Application layer for latred.

Configuration loading and logging setup shared by the command line.
"""

from latred.app.bootstrap import load_configuration, setup_logging

__all__ = ["load_configuration", "setup_logging"]
