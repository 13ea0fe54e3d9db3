"""Exact verification toolkit for exceptional curves on ADE fibrations
of Klein surfaces."""

__version__ = "0.1.0"
