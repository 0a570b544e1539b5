"""Tests for minkgeo."""
