"""
CLI Commands
"""
from . import classify, construct, decompose, inspect, sweep

__all__ = ["classify", "construct", "decompose", "inspect", "sweep"]
