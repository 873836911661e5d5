"""Exact computations for wild character varieties."""
