"""Tests for core service implementations."""
