"""Kummer surface normal forms, theta relations and their verification."""

__version__ = "0.1.0"
