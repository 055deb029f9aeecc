"""Tests for persistence layer implementations."""
