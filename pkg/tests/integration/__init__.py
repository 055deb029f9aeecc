"""Integration tests for latred."""
