"""Test suite for latred."""
