"""
Run Specification

FLOW OVERVIEW
- RunSpec: everything one command needs to run.
  • Exactly one network source: a JSON file path or mapping (`network`), or a
    generator shorthand (`generator`, e.g. `path:3`, `random:6:42`).
  • Exactly one initial source (`init`): `zeros`, `random:<seed>`,
    `enumerate` (every configuration with d <= d_max), a configuration file
    path, or an already parsed configuration mapping.
- declared_node_count() reads the size from the source alone, so callers can
  refuse oversized requests before building anything.
- resolve_network() / resolve_initials(net) / initial_configuration(net)
  turn the sources into domain values, raising InputError on misuse.
- from_mapping(data, defaults) builds a RunSpec from an API request body.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Union

from .algorithm import load_configuration, random_configuration, zeros_configuration
from .checker import enumerate_initial_configs
from .error_handlers import InputError
from .topology import generator_size, load_network, parse_generator
from ..models.fields import is_strict_int, strict_int
from ..models.configuration import Configuration
from ..models.network import Network

logger = logging.getLogger(__name__)

INIT_SHORTHANDS = ('zeros', 'random:<seed>', 'enumerate')


@dataclass
class RunSpec:
    network: Union[str, Dict[str, Any], None] = None
    generator: Optional[str] = None
    init: Union[str, Dict[str, Any]] = 'zeros'
    strategy: str = 'synchronous'
    seed: int = 0
    d_max: int = 3
    max_steps: int = 100000
    max_states: int = 10 ** 7
    jobs: int = 1

    def __post_init__(self):
        if (self.network is None) == (self.generator is None):
            raise InputError('Give exactly one network source: a network file or a generator')
        if self.d_max < 0:
            raise InputError(f'd_max must be non-negative, got {self.d_max}')
        if self.max_steps < 0:
            raise InputError(f'max_steps must be non-negative, got {self.max_steps}')
        if self.jobs < 1:
            raise InputError(f'jobs must be at least 1, got {self.jobs}')

    @property
    def enumerates(self) -> bool:
        return self.init == 'enumerate'

    def declared_node_count(self) -> Optional[int]:
        """Node count named by the source, read before anything is built or loaded."""
        if self.generator is not None:
            return generator_size(self.generator)
        if isinstance(self.network, dict) and is_strict_int(self.network.get('nodes')):
            return self.network['nodes']
        return None

    def resolve_network(self) -> Network:
        if self.generator is not None:
            return parse_generator(self.generator)
        return load_network(self.network)

    def initial_configuration(self, net: Network) -> Configuration:
        init = self.init
        if isinstance(init, dict):
            return load_configuration(net, init)
        if init == 'zeros':
            return zeros_configuration(net)
        if init.startswith('random:'):
            try:
                seed = int(init.split(':', 1)[1])
            except ValueError:
                raise InputError(f"Initial source '{init}' needs an integer seed")
            return random_configuration(net, self.d_max, seed)
        if init == 'enumerate':
            raise InputError('`enumerate` yields many configurations; this command needs exactly one')
        return load_configuration(net, init)

    def resolve_initials(self, net: Network) -> List[Configuration]:
        if self.enumerates:
            return list(enumerate_initial_configs(net, self.d_max))
        return [self.initial_configuration(net)]

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], defaults: Mapping[str, Any]) -> 'RunSpec':
        """Build from an API body; missing limits come from the app config."""
        try:
            return cls(
                network=data.get('network'),
                generator=data.get('generator'),
                init=data.get('init', 'zeros'),
                strategy=str(data.get('strategy', 'synchronous')),
                seed=strict_int(data.get('seed', 0), InputError, '"seed" must be an integer'),
                d_max=strict_int(data.get('d_max', defaults.get('DEFAULT_D_MAX', 3)), InputError,
                                 '"d_max" must be an integer'),
                max_steps=strict_int(data.get('max_steps', defaults.get('MAX_STEPS', 100000)), InputError,
                                     '"max_steps" must be an integer'),
                max_states=int(defaults.get('MAX_STATES', 10 ** 7))
            )
        except (TypeError, ValueError) as e:
            raise InputError(f'Malformed run parameters: {e}')
