"""
Step Graph Model

FLOW OVERVIEW
- StepGraph: explored fragment of the Step relation.
  • vertices: deduplicated configurations in discovery order (index = vertex id).
  • edges: one StepEdge per (source, activation set); targets may coincide.
  • roots: vertex ids of the initial configurations.
- sinks/to_networkx support the convergence checks.
- to_dot renders vertices with their d-vectors and edges with activation sets
  and class.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Set, Tuple

import networkx as nx

from .configuration import Configuration, StepClass
from .network import Network


@dataclass(frozen=True)
class StepEdge:
    source: int
    activated: Tuple[int, ...]
    step_class: StepClass
    target: int


@dataclass
class StepGraph:
    network: Network
    vertices: List[Configuration] = field(default_factory=list)
    index: Dict[Configuration, int] = field(default_factory=dict)
    edges: List[StepEdge] = field(default_factory=list)
    roots: Set[int] = field(default_factory=set)

    def add_vertex(self, cfg: Configuration) -> Tuple[int, bool]:
        """Insert if absent; returns (vertex id, newly added)."""
        vid = self.index.get(cfg)
        if vid is not None:
            return vid, False
        vid = len(self.vertices)
        self.vertices.append(cfg)
        self.index[cfg] = vid
        return vid, True

    def add_edge(self, edge: StepEdge) -> None:
        self.edges.append(edge)

    @cached_property
    def out_edges(self) -> List[List[StepEdge]]:
        table: List[List[StepEdge]] = [[] for _ in self.vertices]
        for edge in self.edges:
            table[edge.source].append(edge)
        return table

    def sinks(self) -> List[int]:
        return [vid for vid, out in enumerate(self.out_edges) if not out]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from((edge.source, edge.target) for edge in self.edges)
        return graph

    def to_dot(self) -> str:
        lines = ['digraph steps {', '  node [shape=box];']
        for vid, cfg in enumerate(self.vertices):
            shape = ', peripheries=2' if vid in self.roots else ''
            label = ','.join(str(d) for d in cfg.d)
            lines.append(f'  v{vid} [label="({label})"{shape}];')
        for edge in self.edges:
            activated = ','.join(str(p) for p in edge.activated)
            lines.append(
                f'  v{edge.source} -> v{edge.target} [label="{{{activated}}} {edge.step_class.value}"];'
            )
        lines.append('}')
        return '\n'.join(lines) + '\n'

    def stats(self) -> Dict[str, Any]:
        tally = {step_class.value: 0 for step_class in StepClass}
        for edge in self.edges:
            tally[edge.step_class.value] += 1
        return {
            'vertices': len(self.vertices),
            'edges': len(self.edges),
            'roots': len(self.roots),
            'sinks': len(self.sinks()),
            'edges_by_class': tally
        }
