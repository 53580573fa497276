"""Tests for bwclusters."""
