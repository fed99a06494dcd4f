"""
API Utilities Module

FLOW OVERVIEW
- APIRequestValidator
  • validate_json_request → parse/validate JSON and return (ok, data, error).
  • validate_request_size → enforce 64KB content size limit.
  • validate_check_scope → keep POST /api/check within the configured node
    and d_max limits.
  • validate_network_scope → node cap for POST /api/simulate and /api/potential.

- APIResponseFormatter
  • format_success_response → {"success": true, "data": ...} envelope.
  • format_server_error_response → consistent unexpected error payload.

Shared by every POST endpoint to avoid code duplication.
"""

import logging
from typing import Dict, Any, Tuple, Optional
from flask import request, current_app

MAX_REQUEST_BYTES = 65536


class APIRequestValidator:
    """Body checks shared by every POST endpoint."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def validate_json_request(self, client_ip: str = None) -> Tuple[bool, Optional[Dict[str, Any]], Optional[Dict[str, Any]]]:
        """
        Validate and parse JSON request.

        Args:
            client_ip: Client IP for logging

        Returns:
            Tuple of (is_valid, data, error_response)
        """
        data = request.get_json(force=True, silent=True)
        if data is None:
            self.logger.warning(f"Invalid JSON from {client_ip}")
            return False, None, {
                'success': False,
                'error_code': 'INVALID_JSON',
                'message': 'Request body is not valid JSON.'
            }

        if not isinstance(data, dict):
            self.logger.warning(f"Invalid data type from {client_ip}: {type(data)}")
            return False, None, {
                'success': False,
                'error_code': 'INVALID_DATA_TYPE',
                'message': 'Request body must be a JSON object (network, init, strategy, ...).'
            }

        return True, data, None

    def validate_request_size(self, client_ip: str = None) -> Tuple[bool, Optional[Dict[str, Any]]]:
        """Reject bodies above 64KB."""
        content_length = request.content_length or 0
        if content_length > MAX_REQUEST_BYTES:
            self.logger.warning(f"Large request blocked from {client_ip}: {content_length} bytes")
            return False, {
                'success': False,
                'error_code': 'INPUT_TOO_LARGE',
                'message': 'Request too large. Maximum 64KB allowed.'
            }

        return True, None

    def validate_check_scope(self, node_count: Optional[int], d_max: int) -> Tuple[bool, Optional[Dict[str, Any]]]:
        """Exhaustive checks are exponential; keep HTTP callers at desk scale."""
        max_nodes = current_app.config.get('API_MAX_NODES', 5)
        max_d = current_app.config.get('API_MAX_D_MAX', 4)
        if (node_count or 0) > max_nodes or d_max > max_d:
            self.logger.warning(f"Check of {node_count} nodes with d_max={d_max} refused")
            return False, {
                'success': False,
                'error_code': 'INPUT_TOO_LARGE',
                'message': f'Checks over HTTP are limited to {max_nodes} nodes and d_max {max_d}.'
            }
        return True, None

    def validate_network_scope(self, node_count: Optional[int]) -> Tuple[bool, Optional[Dict[str, Any]]]:
        """Node cap for simulate and potential, applied before the network is built."""
        max_nodes = current_app.config.get('API_MAX_NETWORK_NODES', 256)
        if (node_count or 0) > max_nodes:
            self.logger.warning(f"Network of {node_count} nodes refused")
            return False, {
                'success': False,
                'error_code': 'INPUT_TOO_LARGE',
                'message': f'Networks over HTTP are limited to {max_nodes} nodes.'
            }
        return True, None


class APIResponseFormatter:
    """Success and failure envelopes."""

    @staticmethod
    def format_success_response(data: Dict[str, Any]) -> Dict[str, Any]:
        return {
            'success': True,
            'data': data
        }

    @staticmethod
    def format_server_error_response(error_code: str = 'INTERNAL_SERVER_ERROR',
                                     message: str = 'Internal server error. Please try again later.') -> Dict[str, Any]:
        """Format server error response."""
        return {
            'success': False,
            'error_code': error_code,
            'message': message
        }


# Global instances
request_validator = APIRequestValidator()
response_formatter = APIResponseFormatter()
