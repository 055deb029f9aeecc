"""User interface package for latred.

This package contains the presentation layer implementations.
"""
