"""
Stabilis Application Package

FLOW OVERVIEW
- configure_logging(level)
  • One stderr handler on the root logger; stdout stays reserved for JSON.
- create_app(test_config=None)
  • Build Flask app, apply config (test mapping verbatim, or env-based Config).
  • Register blueprints: main (/), api (/api).
  • Register global error handlers and the `stabilis` CLI command group.
  • Time every request into the Prometheus request metrics.
"""

import logging
import sys
import time

from flask import Flask, g, request

from .config import Config

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(level='WARNING'):
    """Route all log records to stderr at `level` (name or number)."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_stabilis', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._stabilis = True
    root.addHandler(handler)
    root.setLevel(level)


def create_app(test_config=None):
    """Application factory pattern for production deployment"""
    app = Flask(__name__)

    # Configuration
    if test_config:
        # Use test configuration if provided
        app.config.update(test_config)
    else:
        # Use environment-based configuration
        app.config.update(Config().to_mapping())

    configure_logging(app.config.get('LOG_LEVEL', 'WARNING'))

    from .routes import main_bp, api_bp
    app.register_blueprint(main_bp)
    app.register_blueprint(api_bp, url_prefix='/api')

    # Register error handlers
    from .utils.error_handlers import register_error_handlers
    register_error_handlers(app)

    from .cli import stabilis
    app.cli.add_command(stabilis)

    from .utils.prom_metrics import observe_request

    @app.before_request
    def start_timer():
        g.request_started = time.perf_counter()

    @app.after_request
    def record_request(response):
        started = g.get('request_started')
        if started is not None and request.url_rule is not None:
            observe_request(request.url_rule.rule, response.status_code, time.perf_counter() - started)
        return response

    return app
