"""Tests for application bootstrap and main entry points."""
