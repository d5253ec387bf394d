"""Batch figure rendering for the ring-grating toolkit's CSV/JSON outputs."""

__version__ = "0.1.0"
