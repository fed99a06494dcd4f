"""
API Routes

FLOW OVERVIEW
- /api/status [GET]
  • Version, environment and request limits.
- /api/metrics [GET]
  • Prometheus text exposition.
- /api/potential [POST]
  • {network, config} → potential report (same JSON as the `potential` command);
    refused with INPUT_TOO_LARGE above API_MAX_NETWORK_NODES.
- /api/simulate [POST]
  • {network | generator, init, strategy, seed, max_steps} → trace summary + trace;
    refused with INPUT_TOO_LARGE above API_MAX_NETWORK_NODES.
- /api/check [POST]
  • {network | generator, d_max[, init]} → check report (all initial
    configurations unless init is given); refused with INPUT_TOO_LARGE
    above API_MAX_NODES / API_MAX_D_MAX. Both caps are read from the body
    before the network is built.
Every POST body goes through api_utils (size and JSON checks); domain errors
propagate to the JSON error handlers.
"""

import os

from flask import Blueprint, Response, current_app, jsonify, request

from .. import __version__
from ..models.fields import is_strict_int
from ..utils.algorithm import load_configuration
from ..utils.api_utils import request_validator, response_formatter
from ..utils.checker import ExplorationLimits, run_check
from ..utils.daemons import ScriptedDaemon, load_plan, resolve_strategy, run_execution, trace_summary
from ..utils.error_handlers import InputError
from ..utils.potentials import potential_report
from ..utils.prom_metrics import CONTENT_TYPE_LATEST, metrics_latest
from ..utils.run_spec import RunSpec
from ..utils.topology import load_network

api_bp = Blueprint('api', __name__)


def _inline_spec(data):
    """RunSpec from a request body; files are never read on behalf of HTTP callers."""
    if isinstance(data.get('network'), str):
        raise InputError('"network" must be an inline network object')
    if 'generator' in data and not isinstance(data['generator'], str):
        raise InputError('"generator" must be a shorthand such as path:3')
    init = data.get('init', 'zeros')
    if isinstance(init, str) and not (init in ('zeros', 'enumerate') or init.startswith('random:')):
        raise InputError('"init" must be zeros, random:<seed> or an inline configuration object')
    return RunSpec.from_mapping(data, current_app.config)


def _read_body():
    """Size and JSON checks shared by the POST endpoints; returns (data, error response)."""
    client_ip = request.environ.get('HTTP_X_FORWARDED_FOR', request.environ.get('REMOTE_ADDR'))
    is_valid_size, size_error = request_validator.validate_request_size(client_ip)
    if not is_valid_size:
        return None, (jsonify(size_error), 413)
    is_valid_json, data, json_error = request_validator.validate_json_request(client_ip)
    if not is_valid_json:
        return None, (jsonify(json_error), 400)
    return data, None


@api_bp.route('/status')
def api_status():
    """API status endpoint"""
    return jsonify({
        'status': 'operational',
        'version': __version__,
        'environment': os.getenv('STABILIS_ENV', 'development'),
        'limits': {
            'max_nodes': current_app.config.get('API_MAX_NODES'),
            'max_d_max': current_app.config.get('API_MAX_D_MAX'),
            'max_network_nodes': current_app.config.get('API_MAX_NETWORK_NODES'),
            'max_steps': current_app.config.get('MAX_STEPS')
        }
    })


@api_bp.route('/metrics')
def metrics():
    """Prometheus metrics endpoint."""
    output = metrics_latest()
    return Response(output, mimetype=CONTENT_TYPE_LATEST)


@api_bp.route('/potential', methods=['POST'])
def potential():
    data, error = _read_body()
    if error:
        return error
    if not isinstance(data.get('network'), dict) or not isinstance(data.get('config'), dict):
        raise InputError('Both "network" and "config" are required as inline objects')
    nodes = data['network'].get('nodes')
    in_scope, scope_error = request_validator.validate_network_scope(nodes if is_strict_int(nodes) else None)
    if not in_scope:
        return jsonify(scope_error), 413
    net = load_network(data['network'])
    cfg = load_configuration(net, data['config'])
    body = response_formatter.format_success_response(potential_report(net, cfg))
    return jsonify(body)


@api_bp.route('/simulate', methods=['POST'])
def simulate():
    data, error = _read_body()
    if error:
        return error
    spec = _inline_spec(data)
    in_scope, scope_error = request_validator.validate_network_scope(spec.declared_node_count())
    if not in_scope:
        return jsonify(scope_error), 413
    net = spec.resolve_network()
    cfg0 = spec.initial_configuration(net)
    if spec.strategy.startswith('scripted'):
        # plans travel inline over HTTP, never as server-side paths
        strategy = ScriptedDaemon(load_plan(data.get('plan')))
    else:
        strategy = resolve_strategy(spec.strategy, current_app.config.get('GREEDY_SAMPLE_LIMIT'))
    max_steps = min(spec.max_steps, current_app.config.get('MAX_STEPS', spec.max_steps))
    trace = run_execution(net, cfg0, strategy, max_steps, spec.seed)
    body = response_formatter.format_success_response({
        'summary': trace_summary(net, trace),
        'trace': trace.to_dict()
    })
    return jsonify(body)


@api_bp.route('/check', methods=['POST'])
def check():
    data, error = _read_body()
    if error:
        return error
    spec = _inline_spec(data)
    in_scope, scope_error = request_validator.validate_check_scope(spec.declared_node_count(), spec.d_max)
    if not in_scope:
        return jsonify(scope_error), 413
    net = spec.resolve_network()
    # every configuration up to d_max unless the body names an initial source
    initials = spec.resolve_initials(net) if 'init' in data else None
    result = run_check(net, spec.d_max, initials=initials,
                       limits=ExplorationLimits(max_states=spec.max_states))
    status = 200 if result.verified else 422
    body = response_formatter.format_success_response(result.to_dict())
    return jsonify(body), status
