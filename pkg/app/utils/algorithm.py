"""
BFS Spanning Tree Algorithm (atomic-state model)

FLOW OVERVIEW
- Macros
  • dist_macro(net, cfg, p) → min over neighbors q of q.d + 1.
  • par_dist(net, cfg, p) → first neighbor (adjacency order) with q.d + 1 = p.d.
- Guards
  • enabled_action(net, cfg, p) → Root | CD | CP | None.
  • enabled_nodes(net, cfg) → {node: action} for every enabled node.
- Statements
  • statement_results(net, cfg, nodes) → new local state of each node,
    computed against cfg only.
  • apply_step(net, cfg, activated) → successor configuration; all activated
    nodes read the pre-step configuration (simultaneous semantics).
- Predicates and classification
  • classify_step(cfg, cfg2, root) → RootStep | DStep | ParStep.
  • is_terminal / is_legitimate.
- Configuration helpers: zeros_configuration, random_configuration,
  load_configuration, dump_configuration.
"""

import json
import logging
import random
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from .error_handlers import InputError, StepError
from .topology import distance_vector
from .validators import require_valid_configuration
from ..models.configuration import ActionKind, Configuration, NodeState, StepClass
from ..models.network import Network

logger = logging.getLogger(__name__)


def dist_macro(net: Network, cfg: Configuration, p: int) -> int:
    neighbors = net.adjacency[p]
    if not neighbors:
        raise StepError('EMPTY_NEIGHBORHOOD', f'Node {p} has no neighbors')
    d = cfg.d
    return min(d[q] for q in neighbors) + 1


def par_dist(net: Network, cfg: Configuration, p: int) -> int:
    target = cfg.d[p]
    for q in net.adjacency[p]:
        if cfg.d[q] + 1 == target:
            return q
    raise StepError('NO_WITNESS', f'No neighbor of node {p} has d = {target - 1}')


def enabled_action(net: Network, cfg: Configuration, p: int) -> Optional[ActionKind]:
    """The unique enabled action of p, if any. CD and CP exclude each other."""
    d = cfg.d
    if p == net.root:
        return ActionKind.ROOT if d[p] != 0 else None
    if d[p] != dist_macro(net, cfg, p):
        return ActionKind.CD
    par = cfg.par[p]
    if par is None or d[par] + 1 != d[p]:
        return ActionKind.CP
    return None


def enabled_nodes(net: Network, cfg: Configuration) -> Dict[int, ActionKind]:
    actions = {}
    for p in net.nodes:
        action = enabled_action(net, cfg, p)
        if action is not None:
            actions[p] = action
    return actions


def _execute(net: Network, cfg: Configuration, p: int, action: ActionKind) -> NodeState:
    if action is ActionKind.ROOT:
        return NodeState(0, cfg.par[p])
    if action is ActionKind.CD:
        return NodeState(dist_macro(net, cfg, p), cfg.par[p])
    return NodeState(cfg.d[p], par_dist(net, cfg, p))


def statement_results(net: Network, cfg: Configuration,
                      actions: Dict[int, ActionKind]) -> Dict[int, NodeState]:
    """New local state of every node in `actions`, each evaluated against cfg."""
    return {p: _execute(net, cfg, p, action) for p, action in actions.items()}


def overlay(cfg: Configuration, updates: Dict[int, NodeState]) -> Configuration:
    """cfg with the given nodes' states replaced."""
    d = list(cfg.d)
    par = list(cfg.par)
    for p, state in updates.items():
        d[p] = state.d
        par[p] = state.par
    return Configuration(d=tuple(d), par=tuple(par))


def apply_step(net: Network, cfg: Configuration, activated: Iterable[int]) -> Configuration:
    """Atomic step: every activated node executes its enabled statement."""
    activated = sorted(set(activated))
    if not activated:
        raise StepError('EMPTY_ACTIVATION', 'A step must activate at least one node')
    actions = {}
    for p in activated:
        if not 0 <= p < net.node_count:
            raise StepError('NODE_NOT_ENABLED', f'Node {p} is not part of the network', details={'node': p})
        action = enabled_action(net, cfg, p)
        if action is None:
            raise StepError('NODE_NOT_ENABLED', f'Node {p} is not enabled', details={'node': p})
        actions[p] = action
    return overlay(cfg, statement_results(net, cfg, actions))


def classify_step(cfg: Configuration, cfg2: Configuration, root: int) -> StepClass:
    if cfg.d[root] != cfg2.d[root]:
        return StepClass.ROOT_STEP
    if cfg.d != cfg2.d:
        return StepClass.D_STEP
    return StepClass.PAR_STEP


def is_terminal(net: Network, cfg: Configuration) -> bool:
    return all(enabled_action(net, cfg, p) is None for p in net.nodes)


def is_legitimate(net: Network, cfg: Configuration) -> bool:
    """d is the true distance everywhere and every parent sits one level closer."""
    if cfg.d[net.root] != 0:
        return False
    if cfg.d != distance_vector(net):
        return False
    for p in net.non_root_nodes():
        par = cfg.par[p]
        if par is None or par not in net.adjacency[p] or cfg.d[par] != cfg.d[p] - 1:
            return False
    return True


def zeros_configuration(net: Network) -> Configuration:
    """All d = 0, every non-root parent set to its first neighbor."""
    return Configuration(
        d=(0,) * net.node_count,
        par=tuple(None if p == net.root else net.adjacency[p][0] for p in net.nodes)
    )


def random_configuration(net: Network, d_max: int, seed: int) -> Configuration:
    rng = random.Random(seed)
    d = tuple(rng.randint(0, d_max) for _ in net.nodes)
    par = tuple(None if p == net.root else rng.choice(net.adjacency[p]) for p in net.nodes)
    return Configuration(d=d, par=par)


def load_configuration(net: Network, source: Union[str, Path, Dict[str, Any]]) -> Configuration:
    """Load from a JSON file path or parsed mapping and validate against net."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text(encoding='utf-8'))
        except OSError as e:
            raise InputError(f'Cannot read configuration file {source}: {e}')
        except json.JSONDecodeError as e:
            raise InputError(f'Configuration file {source} is not valid JSON: {e}')
    cfg = Configuration.from_dict(data)
    require_valid_configuration(net, cfg)
    return cfg


def dump_configuration(cfg: Configuration) -> Dict[str, Any]:
    return cfg.to_dict()
