"""
Configuration Model

FLOW OVERVIEW
- NodeState: (d, par) local state of one node. The root's par is stored as
  None and never read.
- Configuration: total map node -> NodeState, stored as two tuples indexed by
  node identifier so that configurations hash and compare cheaply (the
  checker deduplicates millions of them).
- ActionKind / StepClass: the three actions and the three step classes.
- to_dict/from_dict implement the configuration JSON format:
  {"0": {"d": 0, "par": null}, "1": {"d": 1, "par": 0}}
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, NamedTuple, Optional, Tuple

from .fields import node_key, strict_int
from ..utils.error_handlers import ConfigurationError


class ActionKind(str, Enum):
    ROOT = 'Root'
    CD = 'CD'
    CP = 'CP'


class StepClass(str, Enum):
    """Partition of legal steps: the root moved, some d moved, only par moved."""
    ROOT_STEP = 'Root'
    D_STEP = 'D'
    PAR_STEP = 'Par'


class NodeState(NamedTuple):
    d: int
    par: Optional[int]


@dataclass(frozen=True)
class Configuration:
    """Immutable global state. d values are unbounded Python ints."""
    d: Tuple[int, ...]
    par: Tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.d) != len(self.par):
            raise ConfigurationError('d and par vectors must have the same length')

    @classmethod
    def from_states(cls, states: Mapping[int, NodeState]) -> 'Configuration':
        ordered = [states[p] for p in range(len(states))]
        return cls(d=tuple(s.d for s in ordered), par=tuple(s.par for s in ordered))

    @property
    def node_count(self) -> int:
        return len(self.d)

    def state(self, p: int) -> NodeState:
        return NodeState(self.d[p], self.par[p])

    def with_d(self, d: Iterable[int]) -> 'Configuration':
        """Same par fields, new d vector."""
        return Configuration(d=tuple(d), par=self.par)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the configuration JSON format."""
        return {str(p): {'d': self.d[p], 'par': self.par[p]} for p in range(self.node_count)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Configuration':
        """Parse the configuration JSON format (shape only)."""
        if not isinstance(data, dict) or not data:
            raise ConfigurationError('Configuration JSON must be a non-empty object')
        states = {}
        for key, value in data.items():
            p = node_key(key, ConfigurationError)
            if not isinstance(value, dict) or 'd' not in value:
                raise ConfigurationError(f'Node {p} needs an object with a "d" field')
            d = strict_int(value['d'], ConfigurationError, f'Node {p}: d must be an integer')
            par = value.get('par')
            if par is not None:
                par = strict_int(par, ConfigurationError, f'Node {p}: par must be an integer or null')
            states[p] = NodeState(d, par)
        if sorted(states) != list(range(len(states))):
            raise ConfigurationError('Configuration must cover nodes 0..N-1 exactly once')
        return cls.from_states(states)

    def __repr__(self) -> str:
        return f'Configuration(d={self.d}, par={self.par})'
