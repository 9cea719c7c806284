"""Workbench for categories with small maps on finite fragments."""

__version__ = "0.1.0"
