"""
Prometheus metrics registration and helpers.

Exports:
- observe_request(...): record HTTP request metrics
- observe_execution(...): record one simulated execution
- observe_exploration(...): record one explored step graph
- observe_monitor(...): record monitor check evaluations and violations
- observe_check_duration(...): wall time of a full check run
- metrics_latest(): return text exposition from correct registry (handles multiprocess)
- CONTENT_TYPE_LATEST: correct Prometheus content type
"""

import os
from prometheus_client import Counter, Histogram, CollectorRegistry, generate_latest, CONTENT_TYPE_LATEST
from prometheus_client import multiprocess


REQUEST_COUNTER = Counter(
    'stabilis_http_requests_total', 'Total HTTP requests', ['endpoint', 'status']
)

REQUEST_LATENCY = Histogram(
    'stabilis_http_request_latency_seconds', 'HTTP request latency seconds', ['endpoint']
)

EXECUTIONS = Counter(
    'stabilis_executions_total', 'Simulated executions', ['strategy', 'outcome']
)

EXECUTION_STEPS = Histogram(
    'stabilis_execution_steps', 'Steps per simulated execution', buckets=[
        0, 1, 2, 5, 10, 20, 50, 100, 500, 1000, 10000, 100000
    ]
)

EXPLORED_STATES = Counter(
    'stabilis_explored_states_total', 'Configurations added to step graphs'
)

STEP_EDGES = Counter(
    'stabilis_step_edges_total', 'Step graph edges by step class', ['step_class']
)

MONITOR_CHECKS = Counter(
    'stabilis_monitor_checks_total', 'Monitor check evaluations', ['check']
)

MONITOR_VIOLATIONS = Counter(
    'stabilis_monitor_violations_total', 'Monitor check violations', ['check']
)

CHECK_DURATION = Histogram(
    'stabilis_check_duration_seconds', 'Duration of exhaustive check runs'
)


def observe_request(endpoint: str, status: int, latency_seconds: float) -> None:
    REQUEST_COUNTER.labels(endpoint=endpoint, status=str(status)).inc()
    REQUEST_LATENCY.labels(endpoint=endpoint).observe(latency_seconds)


def observe_execution(strategy: str, outcome: str, steps: int) -> None:
    EXECUTIONS.labels(strategy=strategy, outcome=outcome).inc()
    EXECUTION_STEPS.observe(steps)


def observe_exploration(states: int, edges_by_class: dict) -> None:
    EXPLORED_STATES.inc(states)
    for step_class, count in edges_by_class.items():
        if count:
            STEP_EDGES.labels(step_class=step_class).inc(count)


def observe_monitor(report) -> None:
    """Fold a MonitorReport into the per-check counters."""
    for name, counter in report.checks.items():
        total = counter.passed + counter.violations
        if total:
            MONITOR_CHECKS.labels(check=name).inc(total)
        if counter.violations:
            MONITOR_VIOLATIONS.labels(check=name).inc(counter.violations)


def observe_check_duration(seconds: float) -> None:
    CHECK_DURATION.observe(seconds)


def metrics_latest() -> bytes:
    """Return the Prometheus text exposition, multiprocess-aware if configured."""
    prom_mp_dir = os.getenv('PROMETHEUS_MULTIPROC_DIR')
    if prom_mp_dir:
        registry = CollectorRegistry()
        multiprocess.MultiProcessCollector(registry)
        return generate_latest(registry)
    # Default registry
    return generate_latest()
