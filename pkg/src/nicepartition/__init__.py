"""Dynamic (2+eps)-approximate fractional matching and vertex cover with
worst-case polylogarithmic update work, built on a hierarchical level
structure with shadow-levels."""

from .dynamic import DynamicMatching, NodeView, UpdateStats
from .partition import Halt, NicePartition, NodeState
from .residual import ResidualState
from .updates import ClientError
from .weights import Config

__all__ = [
    "ClientError", "Config", "DynamicMatching", "Halt", "NicePartition",
    "NodeState", "NodeView", "ResidualState", "UpdateStats",
]
