"""
Error Model and Handlers

FLOW OVERVIEW
- StabilisError (ValueError) carries an upper-snake `error_code` and optional
  `details`; subclasses group codes by concern.
  • InputError and its subclasses (bad files, bad networks, bad
    configurations) are caller mistakes → CLI exit 2, HTTP 400.
  • Everything else signals a failed verification or a broken contract
    → CLI exit 1, HTTP 422.
- format_error(error) → JSON envelope shared by the API and the CLI.
- register_error_handlers(app)
  • Registers StabilisError, 404 and 500 handlers returning JSON envelopes.
"""

import logging
from typing import Any, Dict, Optional

from flask import jsonify

logger = logging.getLogger(__name__)


class StabilisError(ValueError):
    """Base error with a machine-readable code."""
    error_code = 'STABILIS_ERROR'
    http_status = 422

    def __init__(self, *args, details: Optional[Dict[str, Any]] = None):
        if len(args) == 2:
            self.error_code, message = args
        else:
            message = args[0] if args else self.error_code
        super().__init__(*args)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        return self.message

    def to_dict(self) -> Dict[str, Any]:
        data = {'error_code': self.error_code, 'message': self.message}
        if self.details:
            data['details'] = self.details
        return data


class InputError(StabilisError):
    error_code = 'INVALID_RUN_SPEC'
    http_status = 400


class NetworkValidationError(InputError):
    error_code = 'INVALID_NETWORK'


class ConfigurationError(InputError):
    error_code = 'INVALID_CONFIGURATION'


class StepError(StabilisError):
    error_code = 'ILLEGAL_STEP'


class StrategyContractViolation(StabilisError):
    error_code = 'STRATEGY_CONTRACT_VIOLATION'


class PotentialError(StabilisError):
    error_code = 'POTENTIAL_PRECONDITION'


class ExplorationLimitError(StabilisError):
    error_code = 'STATE_LIMIT_EXCEEDED'


class GraphNotAcyclic(StabilisError):
    error_code = 'GRAPH_NOT_ACYCLIC'


def format_error(error: StabilisError) -> Dict[str, Any]:
    """Consistent failure payload for API responses and CLI output."""
    payload = {'success': False}
    payload.update(error.to_dict())
    return payload


def register_error_handlers(app):
    """Register error handlers with the Flask app"""

    @app.errorhandler(StabilisError)
    def stabilis_error(error):
        logger.warning(f"Request failed with {error.error_code}: {error.message}")
        return jsonify(format_error(error)), error.http_status

    @app.errorhandler(404)
    def not_found(error):
        return jsonify({'success': False, 'error_code': 'NOT_FOUND',
                        'message': 'The requested resource does not exist.'}), 404

    @app.errorhandler(500)
    def internal_error(error):
        from .api_utils import response_formatter
        return jsonify(response_formatter.format_server_error_response()), 500
