"""Tests for the MIMO detection harness."""
