"""
Trace Model

FLOW OVERVIEW
- StepRecord: (activated set, step class, resulting configuration).
- Trace: initial configuration + ordered step records + outcome.
- Finite prefix representation of an execution; maximality is encoded by the
  TERMINATED outcome. JSON format:
  {"initial": <config>, "steps": [{"activated": [...], "class": "D",
   "config": <config>}], "outcome": "terminated", "max_steps": 100000}
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

from .configuration import Configuration, StepClass
from .fields import strict_int
from ..utils.error_handlers import InputError


class TraceOutcome(str, Enum):
    TERMINATED = 'terminated'
    TRUNCATED = 'truncated'


@dataclass(frozen=True)
class StepRecord:
    activated: Tuple[int, ...]
    step_class: StepClass
    config: Configuration

    def to_dict(self) -> Dict[str, Any]:
        return {
            'activated': list(self.activated),
            'class': self.step_class.value,
            'config': self.config.to_dict()
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'StepRecord':
        try:
            return cls(
                activated=tuple(sorted(strict_int(p, InputError, 'Activated nodes must be integers')
                                       for p in data['activated'])),
                step_class=StepClass(data['class']),
                config=Configuration.from_dict(data['config'])
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f'Malformed trace step: {e}')


@dataclass
class Trace:
    """Sequentially built record of one execution."""
    initial: Configuration
    steps: List[StepRecord] = field(default_factory=list)
    outcome: TraceOutcome = TraceOutcome.TRUNCATED
    max_steps: int = 0

    @property
    def final(self) -> Configuration:
        return self.steps[-1].config if self.steps else self.initial

    def class_tally(self) -> Dict[str, int]:
        tally = {step_class.value: 0 for step_class in StepClass}
        for step in self.steps:
            tally[step.step_class.value] += 1
        return tally

    def to_dict(self) -> Dict[str, Any]:
        return {
            'initial': self.initial.to_dict(),
            'steps': [step.to_dict() for step in self.steps],
            'outcome': self.outcome.value,
            'max_steps': self.max_steps
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Trace':
        if not isinstance(data, dict):
            raise InputError('Trace JSON must be an object')
        try:
            return cls(
                initial=Configuration.from_dict(data['initial']),
                steps=[StepRecord.from_dict(step) for step in data.get('steps', [])],
                outcome=TraceOutcome(data.get('outcome', TraceOutcome.TRUNCATED.value)),
                max_steps=strict_int(data.get('max_steps', 0), InputError, 'max_steps must be an integer')
            )
        except (KeyError, ValueError) as e:
            raise InputError(f'Malformed trace: {e}')
