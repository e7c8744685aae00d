"""Signed quivers and their symmetric representations, in exact arithmetic."""
from __future__ import annotations

__version__ = "0.1.0"
