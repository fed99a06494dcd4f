"""
Tests for the exhaustive checker: initial enumeration, exploration,
convergence, monitors, trace audits and worst-case profiles.
"""

import itertools

import pytest

from app.models import Configuration, StepClass, StepEdge, StepGraph, StepRecord, Trace, TraceOutcome
from app.utils.algorithm import apply_step, enabled_nodes
from app.utils.checker import (
    ExplorationLimits, audit_trace, enumerate_initial_configs, explore, monitor_graph,
    monitor_step, monitor_vertex, run_check, verify_convergence, worst_case_profile,
    worst_case_steps
)
from app.utils.daemons import ScriptedDaemon, SynchronousDaemon, run_execution
from app.utils.error_handlers import ExplorationLimitError, GraphNotAcyclic
from app.utils.topology import from_edges, generate


def _ds(graph):
    return {cfg.d for cfg in graph.vertices}


class TestEnumeration:
    """Initial configurations up to d_max"""

    def test_p2(self, p2):
        """P2 with d <= 1 has four configurations and one par choice."""
        configs = list(enumerate_initial_configs(p2, 1))
        assert len(configs) == 4
        assert all(cfg.par == (None, 0) for cfg in configs)

    def test_p3(self, p3):
        """P3 with d <= 1 has sixteen configurations."""
        assert len(list(enumerate_initial_configs(p3, 1))) == 16

    def test_singleton(self):
        """A lone root only varies its d."""
        net = from_edges(1, [])
        assert [cfg.d for cfg in enumerate_initial_configs(net, 2)] == [(0,), (1,), (2,)]


class TestExplore:
    """Breadth-first step graph construction"""

    def test_terminal_initial(self, p2):
        """A terminal initial configuration is a sink with no edges."""
        graph = explore(p2, [Configuration((0, 1), (None, 0))])
        assert len(graph.vertices) == 1
        assert graph.edges == []
        assert graph.sinks() == [0]

    def test_p2_from_two_two(self, p2, make_config):
        """P2 from (2, 2) reaches five configurations with a longest run of 3."""
        graph = explore(p2, [make_config(p2, (2, 2))])
        assert _ds(graph) == {(2, 2), (0, 2), (2, 3), (0, 3), (0, 1)}
        assert len(graph.edges) == 6
        assert graph.stats()['edges_by_class'] == {'Root': 3, 'D': 3, 'Par': 0}
        assert worst_case_steps(graph) == 3

    def test_shared_vertices(self, p2, make_config):
        """Initial configurations reached from each other are stored once."""
        graph = explore(p2, [make_config(p2, (2, 2)), make_config(p2, (0, 2))])
        assert len(graph.vertices) == 5
        assert graph.roots == {0, 1}

    def test_state_limit(self, p3, make_config):
        """Exploring past max_states is STATE_LIMIT_EXCEEDED."""
        with pytest.raises(ExplorationLimitError) as exc:
            explore(p3, [make_config(p3, (3, 0, 5))], ExplorationLimits(max_states=2))
        assert exc.value.error_code == 'STATE_LIMIT_EXCEEDED'

    def test_d_value_limit(self, p2, make_config):
        """A d above the observed limit names the offending step."""
        with pytest.raises(ExplorationLimitError) as exc:
            explore(p2, [make_config(p2, (2, 2))], ExplorationLimits(max_d_observed=2))
        assert exc.value.error_code == 'D_VALUE_LIMIT_EXCEEDED'
        assert exc.value.details['activated'] == [1]

    def test_to_dot(self, p2, make_config):
        """DOT output labels edges with the activation set and class."""
        dot = explore(p2, [make_config(p2, (0, 2))]).to_dot()
        assert dot.startswith('digraph steps {')
        assert 'v0 -> v1 [label="{1} D"]' in dot

    def test_every_activation_subset_is_explored(self, p3):
        """Each vertex has one edge per non-empty subset of its enabled nodes."""
        graph = explore(p3, enumerate_initial_configs(p3, 2))
        for vid, cfg in enumerate(graph.vertices):
            enabled = sorted(enabled_nodes(p3, cfg))
            out = graph.out_edges[vid]
            assert len(out) == 2 ** len(enabled) - 1
            expected = {
                subset for size in range(1, len(enabled) + 1)
                for subset in itertools.combinations(enabled, size)
            }
            assert {edge.activated for edge in out} == expected
            for edge in out:
                assert graph.vertices[edge.target] == apply_step(p3, cfg, edge.activated)

    def test_exploration_is_deterministic(self, p3):
        """Two runs over the same initials give identical vertex and edge lists."""
        first = explore(p3, enumerate_initial_configs(p3, 2))
        second = explore(p3, enumerate_initial_configs(p3, 2))
        assert first.vertices == second.vertices
        assert first.edges == second.edges
        assert first.roots == second.roots
        assert first.to_dot() == second.to_dot()


class TestConvergence:
    """Acyclicity and legitimate sinks"""

    def test_p3_sinks_legitimate(self, p3):
        """Every P3 run ends in the one legitimate configuration."""
        graph = explore(p3, enumerate_initial_configs(p3, 2))
        result = verify_convergence(graph)
        assert result.converged
        assert result.sinks == 1

    def test_cycle_detected(self, p2, make_config):
        """A cycle fails convergence and has no worst case."""
        graph = StepGraph(network=p2)
        graph.add_vertex(make_config(p2, (0, 2)))
        graph.add_vertex(make_config(p2, (0, 3)))
        graph.add_edge(StepEdge(0, (1,), StepClass.D_STEP, 1))
        graph.add_edge(StepEdge(1, (1,), StepClass.D_STEP, 0))
        result = verify_convergence(graph)
        assert not result.acyclic
        assert not result.converged
        with pytest.raises(GraphNotAcyclic):
            worst_case_steps(graph)

    def test_illegitimate_sink(self, p2, make_config):
        """A sink that is not legitimate is reported in full."""
        graph = StepGraph(network=p2)
        graph.add_vertex(make_config(p2, (2, 2)))
        result = verify_convergence(graph)
        assert result.acyclic
        assert not result.all_sinks_legitimate
        assert result.to_dict()['illegitimate_sink'] == {'0': {'d': 2, 'par': None}, '1': {'d': 2, 'par': 0}}


class TestMonitors:
    """Vertex and step checks"""

    def test_vertex(self, p3, make_config):
        """Vertex checks hold on real configurations."""
        assert monitor_vertex(p3, make_config(p3, (3, 0, 5))).passed
        assert monitor_vertex(p3, Configuration((0, 1, 2), (None, 2, 1))).passed

    @pytest.mark.parametrize('d, activated', [
        ((3, 0, 5), [1, 2]),
        ((3, 0, 5), [0]),
        ((0, 5, 1), [2]),
        ((0, 5, 1), [1]),
        ((0, 0, 0), [1, 2])
    ])
    def test_real_steps_pass(self, p3, make_config, d, activated):
        """Step checks hold on real steps."""
        from app.utils.algorithm import apply_step
        source = make_config(p3, d)
        report = monitor_step(p3, source, apply_step(p3, source, activated), activated)
        assert report.passed, report.violated_checks()

    def test_par_step(self, p3):
        """Par steps lower cp."""
        source = Configuration((0, 1, 2), (None, 2, 1))
        target = Configuration((0, 1, 2), (None, 0, 1))
        report = monitor_step(p3, source, target, [1])
        assert report.passed
        assert 'par_step_cp_decrease' in report.checks

    def test_non_smooth_step_checks(self, fig1, make_config):
        """The eight-node non-smooth step runs the non-smooth checks."""
        from app.utils.algorithm import apply_step
        from .conftest import FIG1_GAMMA1_D
        gamma2 = apply_step(fig1, make_config(fig1, FIG1_GAMMA1_D), {1, 6})
        gamma3 = apply_step(fig1, gamma2, {3, 4})
        report = monitor_step(fig1, gamma2, gamma3, [3, 4])
        assert report.passed
        assert 'nonsmooth_ns_strict_shrink' in report.checks
        assert 'smooth_step_sum_increase' not in report.checks

    def test_forged_step_is_recorded(self, p3, make_config):
        """A step the algorithm cannot take leaves the box and is recorded."""
        source = make_config(p3, (0, 0, 0))
        target = make_config(p3, (0, 0, 5))
        report = monitor_step(p3, source, target, [2])
        assert not report.passed
        assert 'box_closure' in report.violated_checks()
        counterexample = report.to_dict()['checks']['box_closure']['counterexample']
        assert counterexample['activated'] == [2]
        assert [counterexample['target'][p]['d'] for p in ('0', '1', '2')] == [0, 0, 5]

    def test_graph_jobs_match(self, p3):
        """Worker processes give the same report as a single process."""
        graph = explore(p3, enumerate_initial_configs(p3, 1))
        sequential = monitor_graph(graph, jobs=1)
        parallel = monitor_graph(graph, jobs=2)
        assert sequential.passed
        assert sequential.to_dict() == parallel.to_dict()


class TestAuditTrace:
    """Recorded trace audits"""

    def test_execution_passes(self, p2, make_config):
        """A scripted P2 run passes with one root step."""
        trace = run_execution(p2, make_config(p2, (2, 2)), ScriptedDaemon([[1], [0], [1]]), 100, seed=0)
        report = audit_trace(p2, trace)
        assert report.passed
        assert report.checks['phase_single_root_step'].passed == 1

    def test_longer_execution(self):
        """A synchronous run on a 5-cycle passes."""
        net = generate('cycle', 5)
        cfg0 = Configuration((4, 0, 7, 1, 3), (None, 0, 1, 2, 0))
        trace = run_execution(net, cfg0, SynchronousDaemon(), 1000, seed=0)
        assert audit_trace(net, trace).passed

    def test_second_root_step(self, p2, make_config):
        """A second root step in one trace is flagged."""
        trace = Trace(
            make_config(p2, (2, 2)),
            [
                StepRecord((0,), StepClass.ROOT_STEP, make_config(p2, (0, 2))),
                StepRecord((0,), StepClass.ROOT_STEP, make_config(p2, (1, 2)))
            ],
            TraceOutcome.TRUNCATED
        )
        report = audit_trace(p2, trace)
        assert 'phase_single_root_step' in report.violated_checks()
        assert 'root_step_reset' in report.violated_checks()


class TestRunCheck:
    """End-to-end check and profiles"""

    def test_p3(self, p3):
        """run_check on P3 verifies and reports its parts."""
        result = run_check(p3, 1)
        assert result.verified
        data = result.to_dict()
        assert data['initial_configurations'] == 16
        assert data['convergence']['acyclic'] is True
        assert data['monitor']['passed'] is True
        assert data['worst_case_steps'] == result.worst_case

    def test_p2_explicit_initials(self, p2, make_config):
        """Explicit initials replace the enumeration."""
        result = run_check(p2, 2, initials=[make_config(p2, (2, 2))])
        assert result.initial_count == 1
        assert result.worst_case == 3

    def test_state_limit_propagates(self, p3):
        """Limit errors propagate out of run_check."""
        with pytest.raises(ExplorationLimitError):
            run_check(p3, 2, limits=ExplorationLimits(max_states=10))

    def test_profile_is_monotone(self, p2):
        """Worst-case steps never drop as d_max grows."""
        profile = worst_case_profile(p2, range(4))
        assert [row['d_max'] for row in profile] == [0, 1, 2, 3]
        steps = [row['worst_case_steps'] for row in profile]
        assert steps == sorted(steps)
        assert profile[2]['worst_case_steps'] >= 3
