"""Command-line interface package for latred."""

from latred.ui.cli.app import build_parser, main

__all__ = ["build_parser", "main"]
