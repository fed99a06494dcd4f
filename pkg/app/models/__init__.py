"""
Domain Models Package

FLOW OVERVIEW
- Centralizes the immutable value types shared by every computational module.
- Exposes: Network, Edge, Configuration, NodeState, ActionKind, StepClass,
  Trace, StepRecord, TraceOutcome, StepGraph, StepEdge, MonitorReport,
  DBounds, DPotential, CompositeMeasure.
"""

from .network import Network, Edge
from .configuration import Configuration, NodeState, ActionKind, StepClass
from .trace import Trace, StepRecord, TraceOutcome
from .step_graph import StepGraph, StepEdge
from .monitor_report import MonitorReport, CheckCounter
from .potential import DBounds, DPotential, CompositeMeasure

__all__ = [
    'Network',
    'Edge',
    'Configuration',
    'NodeState',
    'ActionKind',
    'StepClass',
    'Trace',
    'StepRecord',
    'TraceOutcome',
    'StepGraph',
    'StepEdge',
    'MonitorReport',
    'CheckCounter',
    'DBounds',
    'DPotential',
    'CompositeMeasure'
]
