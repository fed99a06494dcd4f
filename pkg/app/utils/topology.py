"""
Topology

FLOW OVERVIEW
- validate_network(net) → ValidationResult (re-exported from validators).
- dist_to_root(net) → hop distance of every node to the root (BFS, cached
  per network since networks are immutable).
- generate(kind, n, seed) → path | cycle | star | complete | random network
  rooted at node 0 with ascending neighbor order.
- enumerate_networks(max_n) → every connected labeled graph on 1..max_n nodes,
  root 0, each exactly once.
- load_network / dump_network / parse_generator / generator_size → file and
  shorthand plumbing.
"""

import itertools
import json
import logging
import random
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from .error_handlers import InputError, NetworkValidationError
from .validators import require_valid, validate_network
from ..models.network import Edge, Network

logger = logging.getLogger(__name__)

GENERATOR_KINDS = ('path', 'cycle', 'star', 'complete', 'random')
RANDOM_EDGE_PROBABILITY = 0.3


def from_edges(n: int, edges: Iterable[Tuple[int, int]], root: int = 0) -> Network:
    """Build a network whose neighbor sequences are in ascending order."""
    neighbor_sets: List[set] = [set() for _ in range(n)]
    for p, q in edges:
        neighbor_sets[p].add(q)
        neighbor_sets[q].add(p)
    return Network(node_count=n, root=root, adjacency=tuple(tuple(sorted(s)) for s in neighbor_sets))


@lru_cache(maxsize=1024)
def _distance_table(net: Network) -> Tuple[int, ...]:
    lengths = nx.single_source_shortest_path_length(net.to_networkx(), net.root)
    return tuple(lengths[p] for p in net.nodes)


def dist_to_root(net: Network) -> Dict[int, int]:
    """Shortest-path hop distance of every node to the root."""
    return dict(enumerate(_distance_table(net)))


def distance_vector(net: Network) -> Tuple[int, ...]:
    """dist_to_root as a tuple indexed by node (hot-path variant)."""
    return _distance_table(net)


def generate(kind: str, n: int, seed: Optional[int] = None) -> Network:
    """Generate a valid network of the requested shape, rooted at node 0."""
    if n < 1:
        raise NetworkValidationError('INVALID_SIZE', f'Cannot generate a network with {n} nodes')
    if kind == 'path':
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == 'cycle':
        edges = [(i, i + 1) for i in range(n - 1)]
        if n > 2:
            edges.append((n - 1, 0))
    elif kind == 'star':
        edges = [(0, i) for i in range(1, n)]
    elif kind == 'complete':
        edges = list(itertools.combinations(range(n), 2))
    elif kind == 'random':
        if seed is None:
            raise InputError('Random networks require a seed')
        rng = random.Random(seed)
        # spanning tree first, so the result is always connected
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        present = {Edge.of(p, q) for p, q in edges}
        for p, q in itertools.combinations(range(n), 2):
            if Edge.of(p, q) not in present and rng.random() < RANDOM_EDGE_PROBABILITY:
                edges.append((p, q))
    else:
        raise InputError(f"Unknown generator kind '{kind}' (expected one of {', '.join(GENERATOR_KINDS)})")
    net = from_edges(n, edges)
    logger.debug(f"Generated {kind} network: {net}")
    return net


def _split_generator(text: str) -> Tuple[str, int, Optional[int]]:
    parts = text.split(':')
    if len(parts) not in (2, 3):
        raise InputError(f"Generator shorthand '{text}' must look like kind:n or kind:n:seed")
    try:
        n = int(parts[1])
        seed = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise InputError(f"Generator shorthand '{text}' has a non-integer size or seed")
    return parts[0], n, seed


def parse_generator(text: str) -> Network:
    """Parse the `kind:n[:seed]` shorthand, e.g. `path:3` or `random:6:42`."""
    return generate(*_split_generator(text))


def generator_size(text: str) -> int:
    """Node count named by a generator shorthand, without building the network."""
    return _split_generator(text)[1]


def enumerate_networks(max_n: int) -> Iterator[Network]:
    """Every labeled connected graph on n in [1, max_n] nodes, root fixed to 0."""
    for n in range(1, max_n + 1):
        possible = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(possible)):
            chosen = [possible[i] for i in range(len(possible)) if mask >> i & 1]
            graph = nx.Graph()
            graph.add_nodes_from(range(n))
            graph.add_edges_from(chosen)
            if nx.is_connected(graph):
                yield from_edges(n, chosen)


def edges(net: Network) -> Tuple[Edge, ...]:
    return net.edges


def load_network(source: Union[str, Path, Dict[str, Any]]) -> Network:
    """Load from a JSON file path or an already parsed mapping; re-validates."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text(encoding='utf-8'))
        except OSError as e:
            raise InputError(f'Cannot read network file {source}: {e}')
        except json.JSONDecodeError as e:
            raise InputError(f'Network file {source} is not valid JSON: {e}')
    net = Network.from_dict(data)
    require_valid(validate_network(net), NetworkValidationError)
    return net


def dump_network(net: Network) -> Dict[str, Any]:
    return net.to_dict()


__all__ = [
    'validate_network', 'dist_to_root', 'distance_vector', 'generate', 'parse_generator',
    'enumerate_networks', 'edges', 'from_edges', 'load_network', 'dump_network'
]
