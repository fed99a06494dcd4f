"""
Structural Validation

FLOW OVERVIEW
- validate_network(net)
  • Root present and unique → no self-loops → no duplicate neighbors →
    neighbor identifiers in range → symmetric links → connected.
  • Returns a ValidationResult naming the first violated invariant.
- validate_configuration(net, cfg)
  • Totality over the network's nodes, d >= 0, par among neighbors for
    non-root nodes, root par unset.
- require_valid(result, error_cls)
  • Turn a failed ValidationResult into the matching exception (used by the
    loaders, which must re-validate).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Type

import networkx as nx

from .error_handlers import ConfigurationError, StabilisError
from ..models.configuration import Configuration
from ..models.network import Network

logger = logging.getLogger(__name__)


@dataclass
class ValidationResult:
    """Result of validation operation"""
    is_valid: bool
    error_code: Optional[str] = None
    error_message: Optional[str] = None
    index: Optional[int] = None

    def to_dict(self):
        return {
            'is_valid': self.is_valid,
            'error_code': self.error_code,
            'error_message': self.error_message,
            'index': self.index
        }


OK = ValidationResult(True)


class NetworkValidator:
    """Checks the rooted, bidirectional, connected network invariants."""

    @classmethod
    def validate_network(cls, net: Network) -> ValidationResult:
        if net.node_count < 1:
            return ValidationResult(False, 'INVALID_SIZE', 'A network needs at least one node')
        if not isinstance(net.root, int) or not 0 <= net.root < net.node_count:
            return ValidationResult(False, 'NO_ROOT', f'Root {net.root!r} is not a node of the network')
        if len(net.adjacency) != net.node_count:
            return ValidationResult(False, 'UNKNOWN_NODE', 'Adjacency must list every node exactly once')

        for p in net.nodes:
            neighbors = net.adjacency[p]
            if p in neighbors:
                return ValidationResult(False, 'SELF_LOOP', f'Node {p} lists itself as a neighbor')
            if len(set(neighbors)) != len(neighbors):
                return ValidationResult(False, 'DUPLICATE_NEIGHBOR', f'Node {p} lists a neighbor twice')
            for q in neighbors:
                if not 0 <= q < net.node_count:
                    return ValidationResult(False, 'UNKNOWN_NODE', f'Node {p} lists unknown neighbor {q}')

        for p in net.nodes:
            for q in net.adjacency[p]:
                if p not in net.adjacency[q]:
                    return ValidationResult(
                        False, 'ASYMMETRIC_LINK',
                        f'Node {q} is a neighbor of {p} but {p} is not a neighbor of {q}'
                    )

        if not nx.is_connected(net.to_networkx()):
            return ValidationResult(False, 'NOT_CONNECTED', 'The network is not connected')
        return OK

    @classmethod
    def validate_configuration(cls, net: Network, cfg: Configuration) -> ValidationResult:
        if cfg.node_count != net.node_count:
            return ValidationResult(
                False, 'INVALID_CONFIGURATION',
                f'Configuration covers {cfg.node_count} nodes, network has {net.node_count}'
            )
        for p in net.nodes:
            d, par = cfg.state(p)
            if not isinstance(d, int) or d < 0:
                return ValidationResult(False, 'INVALID_CONFIGURATION', f'Node {p} has negative d={d}', index=p)
            if p == net.root:
                if par is not None:
                    return ValidationResult(False, 'INVALID_CONFIGURATION',
                                            'The root parent pointer must be null', index=p)
            elif par not in net.adjacency[p]:
                return ValidationResult(False, 'INVALID_CONFIGURATION',
                                        f'Node {p} has parent {par}, which is not a neighbor', index=p)
        return OK


def require_valid(result: ValidationResult, error_cls: Type[StabilisError]) -> None:
    if not result.is_valid:
        logger.warning(f"Validation failed: {result.error_code} ({result.error_message})")
        raise error_cls(result.error_code, result.error_message)


# Convenience functions for common validations
def validate_network(net: Network) -> ValidationResult:
    """Validate a network"""
    return NetworkValidator.validate_network(net)


def validate_configuration(net: Network, cfg: Configuration) -> ValidationResult:
    """Validate a configuration against its network"""
    return NetworkValidator.validate_configuration(net, cfg)


def require_valid_configuration(net: Network, cfg: Configuration) -> None:
    require_valid(validate_configuration(net, cfg), ConfigurationError)
