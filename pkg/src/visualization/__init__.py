"""Figures of Burgers solutions and continuation branches."""

from .fields import FieldVisualizer

__all__ = ["FieldVisualizer"]
