"""
Network Model

FLOW OVERVIEW
- Network: rooted, bidirectional network with per-node ordered neighbor sequences.
  • Nodes are the integers 0..node_count-1; the root is one of them.
  • Neighbor order is part of the identity (it decides the CP tie-break).
  • Construction never validates; see app.utils.validators.validate_network.
- Edge: unordered neighbor pair stored canonically (smaller identifier first).
- to_dict/from_dict implement the network JSON format:
  {"nodes": N, "root": 0, "adjacency": {"0": [1], "1": [0, 2], "2": [1]}}
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterator, NamedTuple, Tuple

import networkx as nx

from .fields import node_key, strict_int
from ..utils.error_handlers import InputError, NetworkValidationError


class Edge(NamedTuple):
    """Canonical unordered pair of neighbor nodes (u < v)."""
    u: int
    v: int

    @classmethod
    def of(cls, p: int, q: int) -> 'Edge':
        return cls(p, q) if p < q else cls(q, p)

    def to_list(self):
        return [self.u, self.v]


@dataclass(frozen=True)
class Network:
    """Rooted network; immutable and safe to share between workers."""
    node_count: int
    root: int
    adjacency: Tuple[Tuple[int, ...], ...]

    @property
    def nodes(self) -> range:
        return range(self.node_count)

    def non_root_nodes(self) -> Iterator[int]:
        return (p for p in self.nodes if p != self.root)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        """One canonical entry per unordered neighbor pair, sorted."""
        pairs = {Edge.of(p, q) for p in self.nodes for q in self.adjacency[p] if p != q}
        return tuple(sorted(pairs))

    @cached_property
    def incident_edges(self) -> Tuple[Tuple[Edge, ...], ...]:
        return tuple(
            tuple(Edge.of(p, q) for q in self.adjacency[p]) for p in self.nodes
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the network JSON format."""
        return {
            'nodes': self.node_count,
            'root': self.root,
            'adjacency': {str(p): list(self.adjacency[p]) for p in self.nodes}
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Network':
        """Parse the network JSON format (shape only; no semantic validation)."""
        if not isinstance(data, dict):
            raise InputError('Network JSON must be an object')
        if 'nodes' not in data:
            raise InputError("Network JSON requires an integer 'nodes' field")
        node_count = strict_int(data['nodes'], InputError, "'nodes' must be an integer")
        if node_count < 1:
            raise NetworkValidationError('INVALID_SIZE', 'A network needs at least one node')

        root = data.get('root')
        if isinstance(root, list):
            if len(root) > 1:
                raise NetworkValidationError('MULTIPLE_ROOTS', f'Expected exactly one root, got {root}')
            root = root[0] if root else None
        if root is None:
            raise NetworkValidationError('NO_ROOT', 'Network JSON does not name a root')
        root = strict_int(root, InputError, 'The root must be an integer node identifier')

        raw_adjacency = data.get('adjacency') or {}
        if not isinstance(raw_adjacency, dict):
            raise InputError("'adjacency' must map node identifiers to neighbor lists")
        lists: Dict[int, Any] = {}
        for key, neighbors in raw_adjacency.items():
            p = node_key(key, InputError)
            if not 0 <= p < node_count:
                raise NetworkValidationError(
                    'UNKNOWN_NODE', f'Adjacency lists node {p}, outside 0..{node_count - 1}'
                )
            if p in lists:
                raise NetworkValidationError('UNKNOWN_NODE', f'Adjacency lists node {p} twice')
            if not isinstance(neighbors, list):
                raise InputError(f'Neighbors of node {p} must be a list')
            lists[p] = tuple(strict_int(q, InputError, 'Neighbor identifiers must be integers') for q in neighbors)
        adjacency = tuple(lists.get(p, ()) for p in range(node_count))
        return cls(node_count=node_count, root=root, adjacency=adjacency)

    def __repr__(self) -> str:
        return f'Network(n={self.node_count}, root={self.root}, edges={[tuple(e) for e in self.edges]})'
