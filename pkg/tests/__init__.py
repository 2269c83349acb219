"""Tests for betashift."""
