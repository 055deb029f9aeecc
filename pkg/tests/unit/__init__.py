"""Unit tests for latred."""
