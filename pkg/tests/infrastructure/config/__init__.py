"""Tests for configuration management system."""
