"""
Main Routes

FLOW OVERVIEW
- / [GET]
  • JSON service index listing the API endpoints.
- /health [GET]
  • JSON health check.
"""

from datetime import datetime, timezone

from flask import Blueprint, jsonify

main_bp = Blueprint('main', __name__)


@main_bp.route('/')
def home():
    """Service index"""
    return jsonify({
        'service': 'stabilis',
        'endpoints': {
            'GET /health': 'health check',
            'GET /api/status': 'version and request limits',
            'GET /api/metrics': 'Prometheus metrics',
            'POST /api/potential': 'potential report of one configuration',
            'POST /api/simulate': 'run one execution under a daemon strategy',
            'POST /api/check': 'exhaustive check of a small network'
        }
    })


@main_bp.route('/health')
def health():
    """Health check endpoint"""
    return jsonify({'status': 'healthy', 'timestamp': datetime.now(timezone.utc).isoformat()})
