"""
Exhaustive Small-Scope Checker

FLOW OVERVIEW
- enumerate_initial_configs(net, d_max) → every configuration with d in
  [0, d_max] and every par choice among each non-root node's neighbors.
- explore(net, initials, limits) → StepGraph
  • Breadth-first closure under every non-empty subset of enabled nodes.
  • One shared, deduplicated graph for all initial configurations.
  • ExplorationLimitError when the state count or an observed d value passes
    its limit (both mean the semantics are broken, not that the input is big).
- verify_convergence(g) → ConvergenceResult (acyclic, every sink legitimate).
- Monitors (violations are recorded, never raised)
  • monitor_vertex(net, cfg) → terminal iff legitimate, guard exclusivity.
  • monitor_step(net, source, target, activated) → layered measure checks,
    with the reference box taken from the step's own source.
  • monitor_graph(g, jobs) → all vertices and edges; with jobs > 1 the edges
    are split into ordered chunks and merged back in order.
  • audit_trace(net, trace) → the same per-step checks plus phase-aware box
    and potential checks against the first configuration of each phase.
- worst_case_steps(g) / worst_case_profile(net, d_max_values) → longest path
  to a sink.
- run_check(...) → CheckResult bundling everything above.
"""

import itertools
import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .algorithm import (
    classify_step, dist_macro, enabled_nodes, is_legitimate, is_terminal, overlay,
    statement_results
)
from .error_handlers import ExplorationLimitError, GraphNotAcyclic
from .potentials import (
    ns_groups, bottom_of, bounds_of, composite_lt, d_le, d_potential, d_potential_lt,
    cp_count, edge_rank, edge_smooth, in_box, k_star, measure, step_smooth, top_of
)
from .prom_metrics import observe_check_duration, observe_exploration, observe_monitor
from ..models.configuration import Configuration, StepClass
from ..models.monitor_report import MonitorReport
from ..models.network import Network
from ..models.step_graph import StepEdge, StepGraph
from ..models.trace import Trace

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 10 ** 7
PROGRESS_EVERY = 100000


@dataclass(frozen=True)
class ExplorationLimits:
    max_states: int = DEFAULT_MAX_STATES
    max_d_observed: Optional[int] = None

    @classmethod
    def for_run(cls, net: Network, d_max: int, initials: Sequence[Configuration],
                max_states: int = DEFAULT_MAX_STATES) -> 'ExplorationLimits':
        """d_max + node count + largest initial d."""
        largest = max((max(cfg.d) for cfg in initials), default=0)
        return cls(max_states=max_states, max_d_observed=d_max + net.node_count + largest)


@dataclass(frozen=True)
class ConvergenceResult:
    acyclic: bool
    all_sinks_legitimate: bool
    sinks: int = 0
    illegitimate_sink: Optional[Configuration] = None

    @property
    def converged(self) -> bool:
        return self.acyclic and self.all_sinks_legitimate

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'acyclic': self.acyclic,
            'all_sinks_legitimate': self.all_sinks_legitimate,
            'sinks': self.sinks
        }
        if self.illegitimate_sink is not None:
            data['illegitimate_sink'] = self.illegitimate_sink.to_dict()
        return data


@dataclass
class CheckResult:
    network: Network
    d_max: int
    initial_count: int
    graph: StepGraph
    convergence: ConvergenceResult
    report: MonitorReport
    worst_case: Optional[int]
    elapsed_seconds: float = 0.0
    jobs: int = 1

    @property
    def verified(self) -> bool:
        return self.convergence.converged and self.report.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verified': self.verified,
            'network': self.network.to_dict(),
            'd_max': self.d_max,
            'initial_configurations': self.initial_count,
            'graph': self.graph.stats(),
            'convergence': self.convergence.to_dict(),
            'worst_case_steps': self.worst_case,
            'monitor': self.report.to_dict()
        }


def enumerate_initial_configs(net: Network, d_max: int) -> Iterator[Configuration]:
    d_choices = itertools.product(range(d_max + 1), repeat=net.node_count)
    par_options = [(None,) if p == net.root else net.adjacency[p] for p in net.nodes]
    par_choices = list(itertools.product(*par_options))
    for d in d_choices:
        for par in par_choices:
            yield Configuration(d=d, par=par)


def explore(net: Network, initials: Iterable[Configuration],
            limits: Optional[ExplorationLimits] = None) -> StepGraph:
    initials = list(initials)
    if limits is None:
        limits = ExplorationLimits()
    d_limit = limits.max_d_observed
    if d_limit is None:
        largest = max((max(cfg.d) for cfg in initials), default=0)
        d_limit = 2 * largest + net.node_count

    graph = StepGraph(network=net)
    queue = deque()
    for cfg in initials:
        vid, new = graph.add_vertex(cfg)
        graph.roots.add(vid)
        if new:
            queue.append(vid)
    logger.info(f"Exploring from {len(graph.roots)} initial configurations on {net.node_count} nodes")

    while queue:
        vid = queue.popleft()
        cfg = graph.vertices[vid]
        actions = enabled_nodes(net, cfg)
        if not actions:
            continue
        results = statement_results(net, cfg, actions)
        ordered = sorted(actions)
        for size in range(1, len(ordered) + 1):
            for subset in itertools.combinations(ordered, size):
                target = overlay(cfg, {p: results[p] for p in subset})
                if max(target.d) > d_limit:
                    raise ExplorationLimitError(
                        'D_VALUE_LIMIT_EXCEEDED',
                        f'Observed d = {max(target.d)} above the limit {d_limit}',
                        details={'source': cfg.to_dict(), 'activated': list(subset)}
                    )
                tid, new = graph.add_vertex(target)
                if new:
                    if len(graph.vertices) > limits.max_states:
                        raise ExplorationLimitError(
                            'STATE_LIMIT_EXCEEDED',
                            f'More than {limits.max_states} configurations explored'
                        )
                    queue.append(tid)
                    if len(graph.vertices) % PROGRESS_EVERY == 0:
                        logger.info(f"{len(graph.vertices)} configurations, {len(queue)} queued")
                graph.add_edge(StepEdge(vid, subset, classify_step(cfg, target, net.root), tid))

    stats = graph.stats()
    observe_exploration(stats['vertices'], stats['edges_by_class'])
    logger.info(f"Explored {stats['vertices']} configurations and {stats['edges']} steps")
    return graph


def verify_convergence(g: StepGraph) -> ConvergenceResult:
    acyclic = nx.is_directed_acyclic_graph(g.to_networkx())
    sinks = g.sinks()
    illegitimate = next(
        (g.vertices[vid] for vid in sinks if not is_legitimate(g.network, g.vertices[vid])), None
    )
    if not acyclic:
        logger.warning('Step graph has a cycle')
    if illegitimate is not None:
        logger.warning(f"Sink {illegitimate} is not legitimate")
    return ConvergenceResult(
        acyclic=acyclic,
        all_sinks_legitimate=illegitimate is None,
        sinks=len(sinks),
        illegitimate_sink=illegitimate
    )


def _step_counterexample(source: Configuration, activated, target: Configuration):
    return lambda: {
        'source': source.to_dict(),
        'activated': None if activated is None else list(activated),
        'target': target.to_dict()
    }


def monitor_vertex(net: Network, cfg: Configuration) -> MonitorReport:
    report = MonitorReport()
    counterexample = lambda: {'configuration': cfg.to_dict()}
    report.record('terminal_iff_legitimate', is_terminal(net, cfg) == is_legitimate(net, cfg), counterexample)
    exclusive = True
    for p in net.non_root_nodes():
        dist = dist_macro(net, cfg, p)
        cd_guard = cfg.d[p] != dist
        par = cfg.par[p]
        cp_guard = cfg.d[p] == dist and (par is None or cfg.d[par] + 1 != cfg.d[p])
        if cd_guard and cp_guard:
            exclusive = False
    report.record('guard_exclusivity', exclusive, counterexample)
    return report


def _monitor_non_smooth(report: MonitorReport, net: Network, source: Configuration,
                        target: Configuration, counterexample) -> None:
    k, witness = k_star(net, source, target)
    before = ns_groups(net, source)
    after = ns_groups(net, target)
    report.record(
        'nonsmooth_rank_below_preserved',
        all(before.get(j, set()) == after.get(j, set()) for j in set(before) | set(after) if j < k),
        counterexample
    )
    report.record(
        'nonsmooth_low_rank_origin',
        all(e in before.get(j, set()) for j, edges in after.items() if j <= k for e in edges),
        counterexample
    )
    report.record('nonsmooth_ns_strict_shrink', after.get(k, set()) < before.get(k, set()), counterexample)
    report.record(
        'nonsmooth_witness_progress',
        witness in before.get(k, set())
        and (edge_smooth(target, witness) or edge_rank(target, witness) > k),
        counterexample
    )
    # p is the lower endpoint; only constrained while the witness stays non-smooth
    p, q = (witness.u, witness.v) if source.d[witness.u] < source.d[witness.v] else (witness.v, witness.u)
    endpoints_ok = True
    if not edge_smooth(target, witness):
        if target.d[p] != source.d[p]:
            endpoints_ok = target.d[p] > source.d[p]
        if target.d[q] != source.d[q]:
            endpoints_ok = endpoints_ok and target.d[q] == source.d[p] + 1
    report.record('nonsmooth_witness_endpoints', endpoints_ok, counterexample)


def monitor_step(net: Network, source: Configuration, target: Configuration,
                 activated: Optional[Sequence[int]] = None) -> MonitorReport:
    """Check every lemma that applies to one step, with the box of `source` as reference."""
    report = MonitorReport()
    counterexample = _step_counterexample(source, activated, target)
    step_class = classify_step(source, target, net.root)

    if activated is not None:
        report.record(
            'activation_progress',
            all(source.state(p) != target.state(p) for p in activated),
            counterexample
        )

    bounds = bounds_of(net, source)
    source_measure = measure(net, source, bounds)
    if step_class is StepClass.ROOT_STEP:
        root = net.root
        report.record('root_step_reset', source.d[root] != 0 and target.d[root] == 0, counterexample)
        target_measure = measure(net, target)
    else:
        target_measure = measure(net, target, bounds)
        report.record('box_closure', in_box(bounds, target), counterexample)
        if step_class is StepClass.PAR_STEP:
            report.record('par_step_potential_invariant',
                          target_measure.d_pot == source_measure.d_pot, counterexample)
            report.record('par_step_cp_decrease', target_measure.cp < source_measure.cp, counterexample)
        else:
            report.record(
                'd_step_bounds_evolution',
                d_le(bottom_of(source), bottom_of(target)) and d_le(top_of(net, target), bounds.top),
                counterexample
            )
            if step_smooth(net, source, target):
                report.record('smooth_step_ns_preserved',
                              ns_groups(net, source) == ns_groups(net, target), counterexample)
                report.record('smooth_step_sum_increase', sum(target.d) > sum(source.d), counterexample)
            else:
                _monitor_non_smooth(report, net, source, target, counterexample)
            report.record('d_step_potential_decrease',
                          d_potential_lt(target_measure.d_pot, source_measure.d_pot), counterexample)

    report.record(
        'composite_decrease',
        composite_lt(net, target_measure, source_measure, same_phase=step_class is not StepClass.ROOT_STEP),
        counterexample
    )
    return report


def _monitor_chunk(net: Network, steps: List[Tuple[Configuration, Tuple[int, ...], Configuration]]) -> MonitorReport:
    report = MonitorReport()
    for source, activated, target in steps:
        report.merge(monitor_step(net, source, target, activated))
    return report


def _monitor_chunk_task(args) -> MonitorReport:
    return _monitor_chunk(*args)


def monitor_graph(g: StepGraph, jobs: int = 1) -> MonitorReport:
    net = g.network
    report = MonitorReport()
    for cfg in g.vertices:
        report.merge(monitor_vertex(net, cfg))

    steps = [(g.vertices[e.source], e.activated, g.vertices[e.target]) for e in g.edges]
    if jobs <= 1 or len(steps) < 2:
        report.merge(_monitor_chunk(net, steps))
    else:
        size = -(-len(steps) // jobs)
        chunks = [(net, steps[i:i + size]) for i in range(0, len(steps), size)]
        logger.info(f"Monitoring {len(steps)} steps in {len(chunks)} chunks with {jobs} workers")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for fragment in pool.map(_monitor_chunk_task, chunks):
                report.merge(fragment)

    observe_monitor(report)
    if not report.passed:
        logger.warning(f"Monitor violations in: {', '.join(report.violated_checks())}")
    return report


def audit_trace(net: Network, trace: Trace) -> MonitorReport:
    """
    Re-check a recorded execution. A phase starts at the initial configuration
    and after every root step; inside a phase the reference box is the one of
    the phase's first configuration.
    """
    report = MonitorReport()
    bounds = bounds_of(net, trace.initial)
    root_steps = 0
    source = trace.initial
    for index, step in enumerate(trace.steps):
        target = step.config
        counterexample = _step_counterexample(source, step.activated, target)
        report.merge(monitor_step(net, source, target, step.activated))
        step_class = classify_step(source, target, net.root)
        if step_class is StepClass.ROOT_STEP:
            root_steps += 1
            report.record('phase_single_root_step', root_steps <= 1, counterexample)
            bounds = bounds_of(net, target)
        else:
            report.record('phase_box_closure', in_box(bounds, target), counterexample)
            before = d_potential(net, bounds, source)
            after = d_potential(net, bounds, target)
            if step_class is StepClass.D_STEP:
                report.record('phase_d_step_potential_decrease', d_potential_lt(after, before), counterexample)
            else:
                report.record('phase_par_step_potential_invariant', after == before, counterexample)
                report.record('phase_par_step_cp_decrease',
                              cp_count(net, target) < cp_count(net, source), counterexample)
        source = target
    logger.info(f"Audited {len(trace.steps)} steps, {report.violations} violations")
    return report


def worst_case_steps(g: StepGraph) -> int:
    """Longest path, in steps, from an initial configuration to a sink."""
    digraph = g.to_networkx()
    if not nx.is_directed_acyclic_graph(digraph):
        raise GraphNotAcyclic('The step graph has a cycle; no longest path exists')
    # every vertex is reachable from a root, so every source vertex is a root
    return nx.dag_longest_path_length(digraph)


def run_check(net: Network, d_max: int, initials: Optional[Sequence[Configuration]] = None,
              limits: Optional[ExplorationLimits] = None, jobs: int = 1) -> CheckResult:
    started = time.perf_counter()
    if initials is None:
        initials = list(enumerate_initial_configs(net, d_max))
    else:
        initials = list(initials)
    if limits is None:
        limits = ExplorationLimits.for_run(net, d_max, initials)
    elif limits.max_d_observed is None:
        limits = ExplorationLimits.for_run(net, d_max, initials, max_states=limits.max_states)

    graph = explore(net, initials, limits)
    convergence = verify_convergence(graph)
    report = monitor_graph(graph, jobs=jobs)
    worst = worst_case_steps(graph) if convergence.acyclic else None
    elapsed = time.perf_counter() - started
    observe_check_duration(elapsed)
    return CheckResult(
        network=net,
        d_max=d_max,
        initial_count=len(initials),
        graph=graph,
        convergence=convergence,
        report=report,
        worst_case=worst,
        elapsed_seconds=elapsed,
        jobs=jobs
    )


def worst_case_profile(net: Network, d_max_values: Iterable[int],
                       limits: Optional[ExplorationLimits] = None) -> List[Dict[str, int]]:
    """worst_case_steps for each d_max, exploring from every initial configuration."""
    profile = []
    for d_max in d_max_values:
        initials = list(enumerate_initial_configs(net, d_max))
        run_limits = ExplorationLimits.for_run(
            net, d_max, initials, max_states=(limits or ExplorationLimits()).max_states
        )
        graph = explore(net, initials, run_limits)
        profile.append({
            'd_max': d_max,
            'states': len(graph.vertices),
            'worst_case_steps': worst_case_steps(graph)
        })
        logger.info(f"d_max={d_max}: worst case {profile[-1]['worst_case_steps']} steps")
    return profile
