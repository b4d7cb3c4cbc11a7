"""
PolarFade - Hierarchical polar coding for block-fading BSC and AEN channels
Coding library plus a seeded simulation CLI
"""

__version__ = "0.1.0"
