"""Shared store for the per-criterion summary lines."""

LINES = {}
