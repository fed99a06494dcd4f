"""
Potential Functions and Orders

FLOW OVERVIEW
- Aggregates and bounds (only d fields matter)
  • d_aggregates(cfg) → (min_d, max_d, sum_d).
  • d_le(cfg1, cfg2) → pointwise order on d.
  • bottom_of(cfg) / top_of(net, cfg) → lower and upper envelopes; top_of is
    built layer by layer in increasing distance to the root.
  • bounds_of / k0_interval / in_box → the box of a reference configuration
    and its dense rank interval.
- Edges
  • edge_smooth / edge_rank, ns_set(net, cfg, k).
  • step_smooth(net, cfg, cfg2) and k_star(net, cfg, cfg2) for d-steps.
- Measures and orders
  • cp_count(net, cfg) → number of CP-enabled nodes.
  • d_potential(net, bounds, cfg) → DPotential over the box's rank interval.
  • setlex_lt / d_potential_lt → lexicographic orders (larger sum_d is smaller).
  • measure(net, cfg, bounds=None) → CompositeMeasure; composite_lt layers
    root d, then d-potential (same box only), then #CP.
- potential_report(net, cfg) → JSON payload of the `potential` command.
"""

import logging
from typing import Any, Dict, FrozenSet, Optional, Sequence, Set, Tuple

from .algorithm import classify_step, enabled_action, enabled_nodes, is_legitimate
from .error_handlers import PotentialError
from .topology import distance_vector
from ..models.configuration import ActionKind, Configuration, StepClass
from ..models.network import Edge, Network
from ..models.potential import CompositeMeasure, DBounds, DPotential

logger = logging.getLogger(__name__)


def d_aggregates(cfg: Configuration) -> Tuple[int, int, int]:
    d = cfg.d
    return min(d), max(d), sum(d)


def d_le(cfg1: Configuration, cfg2: Configuration) -> bool:
    return all(a <= b for a, b in zip(cfg1.d, cfg2.d))


def bottom_of(cfg: Configuration) -> Configuration:
    return cfg.with_d((min(cfg.d),) * cfg.node_count)


def top_of(net: Network, cfg: Configuration) -> Configuration:
    """Each non-root node is raised to 1 + the smallest top value one level closer to the root."""
    dist = distance_vector(net)
    top = list(cfg.d)
    for p in sorted(net.nodes, key=lambda q: dist[q]):
        if p == net.root:
            continue
        closer = [top[q] for q in net.adjacency[p] if dist[q] == dist[p] - 1]
        top[p] = max(cfg.d[p], 1 + min(closer))
    return cfg.with_d(tuple(top))


def bounds_of(net: Network, cfg: Configuration) -> DBounds:
    return DBounds(bot=bottom_of(cfg), top=top_of(net, cfg))


def k0_interval(bounds: DBounds) -> Tuple[int, int]:
    return min(bounds.bot.d), max(bounds.top.d)


def in_box(bounds: DBounds, cfg: Configuration) -> bool:
    return d_le(bounds.bot, cfg) and d_le(cfg, bounds.top)


def cp_count(net: Network, cfg: Configuration) -> int:
    return sum(1 for p in net.nodes if enabled_action(net, cfg, p) is ActionKind.CP)


def edge_smooth(cfg: Configuration, e: Edge) -> bool:
    return abs(cfg.d[e.u] - cfg.d[e.v]) <= 1


def edge_rank(cfg: Configuration, e: Edge) -> int:
    return min(cfg.d[e.u], cfg.d[e.v])


def ns_groups(net: Network, cfg: Configuration) -> Dict[int, Set[Edge]]:
    groups: Dict[int, Set[Edge]] = {}
    for e in net.edges:
        if not edge_smooth(cfg, e):
            groups.setdefault(edge_rank(cfg, e), set()).add(e)
    return groups


def ns_set(net: Network, cfg: Configuration, k: int) -> FrozenSet[Edge]:
    """Non-smooth edges of rank k."""
    return frozenset(e for e in net.edges if not edge_smooth(cfg, e) and edge_rank(cfg, e) == k)


def _changed_nodes(cfg: Configuration, cfg2: Configuration) -> Set[int]:
    return {p for p, (a, b) in enumerate(zip(cfg.d, cfg2.d)) if a != b}


def _require_d_step(net: Network, cfg: Configuration, cfg2: Configuration) -> None:
    step_class = classify_step(cfg, cfg2, net.root)
    if step_class is not StepClass.D_STEP:
        raise PotentialError('NOT_A_D_STEP', f'Expected a d-step, got a {step_class.value} step')


def step_smooth(net: Network, cfg: Configuration, cfg2: Configuration) -> bool:
    """True iff every node whose d changed touches smooth edges only (in cfg)."""
    _require_d_step(net, cfg, cfg2)
    return all(
        edge_smooth(cfg, e)
        for p in _changed_nodes(cfg, cfg2)
        for e in net.incident_edges[p]
    )


def k_star(net: Network, cfg: Configuration, cfg2: Configuration) -> Tuple[int, Edge]:
    """Lowest rank of a non-smooth edge touched by the step, and the first such edge."""
    _require_d_step(net, cfg, cfg2)
    changed = _changed_nodes(cfg, cfg2)
    candidates = [
        (edge_rank(cfg, e), e) for e in net.edges
        if not edge_smooth(cfg, e) and (e.u in changed or e.v in changed)
    ]
    if not candidates:
        raise PotentialError('NOT_NON_SMOOTH_D_STEP', 'The d-step only touches smooth edges')
    return min(candidates)


def d_potential(net: Network, bounds: DBounds, cfg: Configuration) -> DPotential:
    """
    Non-smooth edge sets for every rank of the box interval, plus sum_d.

    Ranks outside the interval are not represented; callers that care check
    in_box first.
    """
    lo, hi = k0_interval(bounds)
    groups = ns_groups(net, cfg)
    return DPotential(
        k_lo=lo,
        ns_by_rank=tuple(frozenset(groups.get(k, ())) for k in range(lo, hi + 1)),
        sum_d=sum(cfg.d)
    )


def setlex_lt(a: Sequence[FrozenSet[Edge]], b: Sequence[FrozenSet[Edge]]) -> bool:
    if len(a) != len(b):
        raise PotentialError('K0_MISMATCH', 'Edge-set sequences are indexed by different intervals')
    for mine, theirs in zip(a, b):
        if mine != theirs:
            return mine < theirs
    return False


def d_potential_lt(a: DPotential, b: DPotential) -> bool:
    if a.k0 != b.k0:
        raise PotentialError('K0_MISMATCH', f'Potentials over {a.k0} and {b.k0} are not comparable')
    if a.ns_by_rank == b.ns_by_rank:
        return b.sum_d < a.sum_d
    return setlex_lt(a.ns_by_rank, b.ns_by_rank)


def measure(net: Network, cfg: Configuration, bounds: Optional[DBounds] = None) -> CompositeMeasure:
    if bounds is None:
        bounds = bounds_of(net, cfg)
    return CompositeMeasure(
        root_d=cfg.d[net.root],
        d_pot=d_potential(net, bounds, cfg),
        cp=cp_count(net, cfg)
    )


def composite_lt(net: Network, m1: CompositeMeasure, m2: CompositeMeasure, same_phase: bool) -> bool:
    if m1.root_d != m2.root_d:
        return m1.root_d < m2.root_d
    same_interval = m1.d_pot.k0 == m2.d_pot.k0
    if same_phase and same_interval and d_potential_lt(m1.d_pot, m2.d_pot):
        return True
    return same_interval and m1.d_pot == m2.d_pot and m1.cp < m2.cp


def potential_report(net: Network, cfg: Configuration) -> Dict[str, Any]:
    min_d, max_d, sum_d = d_aggregates(cfg)
    bounds = bounds_of(net, cfg)
    phi = d_potential(net, bounds, cfg)
    actions = enabled_nodes(net, cfg)
    return {
        'aggregates': {'min_d': min_d, 'max_d': max_d, 'sum_d': sum_d},
        'bounds': bounds.to_dict(),
        'k0': list(k0_interval(bounds)),
        'ns_by_rank': {
            str(k): [e.to_list() for e in sorted(edges)]
            for k, edges in sorted(ns_groups(net, cfg).items())
        },
        'd_potential': phi.to_dict(),
        'cp': cp_count(net, cfg),
        'enabled': {str(p): action.value for p, action in actions.items()},
        'terminal': not actions,
        'legitimate': is_legitimate(net, cfg)
    }
