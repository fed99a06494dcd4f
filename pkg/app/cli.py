"""
Command-Line Interface

FLOW OVERVIEW
- `stabilis` click group (also mounted under `flask stabilis`).
  • simulate  → run_execution under one daemon strategy; trace to --out,
    summary JSON on stdout.
  • check     → enumerate → explore → verify_convergence → monitor_graph →
    worst_case_steps for one network (--net/--gen) or every network up to
    --all-graphs nodes; with --trace FILE, validate and audit a recorded
    execution instead.
  • potential → potential report of one configuration.
  • profile   → worst_case_steps for d_max = 0..--dmax.
  • serve     → HTTP surface on the Flask development server.
- stdout carries JSON only; logs go to stderr (-v INFO, -vv DEBUG, else STABILIS_LOG).
- Exit codes: 0 success/verified, 1 verification failure, 2 input error.
"""

import functools
import json
import logging
import sys
from pathlib import Path

import click

from . import configure_logging
from .config import Config
from .models.monitor_report import MonitorReport
from .utils.checker import ExplorationLimits, audit_trace, run_check, worst_case_profile
from .utils.daemons import load_trace, resolve_strategy, run_execution, trace_summary, validate_trace
from .utils.error_handlers import InputError, StabilisError, format_error
from .utils.potentials import potential_report
from .utils.run_spec import RunSpec
from .utils.topology import enumerate_networks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _emit(payload) -> None:
    click.echo(_dumps(payload))


def _write(path, payload) -> None:
    try:
        Path(path).write_text(_dumps(payload) + '\n', encoding='utf-8')
    except OSError as e:
        raise InputError(f'Cannot write {path}: {e}')


def _handle_errors(command):
    """Map domain errors to JSON on stdout and the documented exit codes."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except InputError as e:
            logger.warning(f"{e.error_code}: {e.message}")
            _emit(format_error(e))
            sys.exit(EXIT_INPUT)
        except StabilisError as e:
            logger.error(f"{e.error_code}: {e.message}")
            _emit(format_error(e))
            sys.exit(EXIT_FAILED)
    return wrapper


def _pick(value, default):
    return default if value is None else value


def network_options(command):
    command = click.option('--gen', 'generator', help='Generator shorthand kind:n[:seed], e.g. path:3.')(command)
    command = click.option('--net', 'network', type=click.Path(dir_okay=False),
                           help='Network JSON file.')(command)
    return command


@click.group()
@click.option('-v', '--verbose', count=True, help='-v for INFO, -vv for DEBUG logs on stderr.')
@click.pass_context
def stabilis(ctx, verbose):
    """Self-stabilizing BFS spanning tree: simulation and exhaustive checking."""
    config = Config()
    level = {0: config.LOG_LEVEL, 1: 'INFO'}.get(verbose, 'DEBUG')
    configure_logging(level)
    ctx.obj = config


@stabilis.command()
@network_options
@click.option('--init', default='zeros', show_default=True,
              help='zeros | random:<seed> | <configuration file>.')
@click.option('--strategy', default='synchronous', show_default=True,
              help='synchronous, central_first, central_random, random_subset[:p], '
                   'greedy_adversary[:samples] or scripted:<plan.json>.')
@click.option('--seed', default=0, show_default=True, type=int)
@click.option('--dmax', type=int, help='Largest d drawn by random:<seed> initial configurations.')
@click.option('--max-steps', type=int, help='Step cap (default STABILIS_MAX_STEPS).')
@click.option('--out', type=click.Path(dir_okay=False), help='Write the trace JSON here.')
@click.pass_obj
@_handle_errors
def simulate(config, network, generator, init, strategy, seed, dmax, max_steps, out):
    """Run one execution and print its summary."""
    spec = RunSpec(
        network=network, generator=generator, init=init, strategy=strategy, seed=seed,
        d_max=_pick(dmax, config.DEFAULT_D_MAX), max_steps=_pick(max_steps, config.MAX_STEPS)
    )
    net = spec.resolve_network()
    cfg0 = spec.initial_configuration(net)
    daemon = resolve_strategy(spec.strategy, config.GREEDY_SAMPLE_LIMIT)
    trace = run_execution(net, cfg0, daemon, spec.max_steps, spec.seed)
    if out:
        _write(out, trace.to_dict())
    _emit(trace_summary(net, trace))


def _check_trace(net, trace_file) -> int:
    trace = load_trace(trace_file)
    validation = validate_trace(net, trace)
    if not validation.is_valid:
        _emit({'valid': False, 'validation': validation.to_dict()})
        return EXIT_FAILED
    report = audit_trace(net, trace)
    _emit({'valid': True, 'summary': trace_summary(net, trace), 'audit': report.to_dict()})
    return EXIT_OK if report.passed else EXIT_FAILED


def _check_all_graphs(max_nodes, d_max, limits, jobs, report_file) -> int:
    merged = MonitorReport()
    results = []
    for net in enumerate_networks(max_nodes):
        result = run_check(net, d_max, limits=limits, jobs=jobs)
        merged.merge(result.report)
        results.append({
            'network': net.to_dict(),
            'verified': result.verified,
            'vertices': len(result.graph.vertices),
            'worst_case_steps': result.worst_case,
            'violations': result.report.violations
        })
    payload = {
        'verified': all(r['verified'] for r in results),
        'networks': len(results),
        'd_max': d_max,
        'results': results,
        'monitor': merged.to_dict()
    }
    if report_file:
        _write(report_file, payload)
    _emit({key: payload[key] for key in ('verified', 'networks', 'd_max', 'monitor')})
    return EXIT_OK if payload['verified'] else EXIT_FAILED


@stabilis.command()
@network_options
@click.option('--all-graphs', type=int, help='Check every connected network with up to N nodes.')
@click.option('--dmax', type=int, help='Largest initial d (default STABILIS_D_MAX).')
@click.option('--init', default='enumerate', show_default=True,
              help='enumerate | zeros | random:<seed> | <configuration file>.')
@click.option('--jobs', type=int, help='Worker processes for monitor checks.')
@click.option('--max-states', type=int, help='Exploration state cap.')
@click.option('--report', 'report_file', type=click.Path(dir_okay=False), help='Write the report JSON here.')
@click.option('--dot', 'dot_file', type=click.Path(dir_okay=False), help='Write the step graph as DOT here.')
@click.option('--trace', 'trace_file', type=click.Path(dir_okay=False),
              help='Validate and audit a recorded trace instead of exploring.')
@click.pass_obj
@_handle_errors
def check(config, network, generator, all_graphs, dmax, init, jobs, max_states, report_file, dot_file, trace_file):
    """Exhaustively verify convergence and every step monitor."""
    d_max = _pick(dmax, config.DEFAULT_D_MAX)
    jobs = _pick(jobs, config.JOBS)
    limits = ExplorationLimits(max_states=_pick(max_states, config.MAX_STATES))

    if all_graphs is not None:
        if network or generator or trace_file:
            raise InputError('--all-graphs cannot be combined with --net, --gen or --trace')
        sys.exit(_check_all_graphs(all_graphs, d_max, limits, jobs, report_file))

    spec = RunSpec(network=network, generator=generator, init=init, d_max=d_max, jobs=jobs)
    net = spec.resolve_network()
    if trace_file:
        sys.exit(_check_trace(net, trace_file))

    result = run_check(net, d_max, initials=spec.resolve_initials(net), limits=limits, jobs=jobs)
    payload = result.to_dict()
    if report_file:
        _write(report_file, payload)
    if dot_file:
        try:
            Path(dot_file).write_text(result.graph.to_dot(), encoding='utf-8')
        except OSError as e:
            raise InputError(f'Cannot write {dot_file}: {e}')
    _emit(payload)
    sys.exit(EXIT_OK if result.verified else EXIT_FAILED)


@stabilis.command()
@network_options
@click.option('--config', 'config_file', required=True, type=click.Path(dir_okay=False),
              help='Configuration JSON file.')
@_handle_errors
def potential(network, generator, config_file):
    """Print aggregates, bounds, non-smooth edges, potential and #CP of one configuration."""
    spec = RunSpec(network=network, generator=generator, init=config_file)
    net = spec.resolve_network()
    _emit(potential_report(net, spec.initial_configuration(net)))


@stabilis.command()
@network_options
@click.option('--dmax', type=int, help='Profile d_max = 0..DMAX (default STABILIS_D_MAX).')
@click.option('--max-states', type=int, help='Exploration state cap.')
@click.pass_obj
@_handle_errors
def profile(config, network, generator, dmax, max_states):
    """Worst-case step count as a function of d_max."""
    spec = RunSpec(network=network, generator=generator, d_max=_pick(dmax, config.DEFAULT_D_MAX))
    net = spec.resolve_network()
    limits = ExplorationLimits(max_states=_pick(max_states, config.MAX_STATES))
    _emit({
        'network': net.to_dict(),
        'profile': worst_case_profile(net, range(spec.d_max + 1), limits)
    })


@stabilis.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', default=5000, show_default=True, type=int)
def serve(host, port):
    """Serve the HTTP API with the Flask development server."""
    from . import create_app
    create_app().run(host=host, port=port, debug=False)


def main():
    stabilis(prog_name='stabilis')
