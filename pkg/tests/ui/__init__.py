"""Test package for UI components."""
