"""
Daemons and Execution Driver

FLOW OVERVIEW
- DaemonStrategy: callable (net, cfg, enabled, rng) → non-empty subset of
  enabled nodes. No strategy enforces fairness: every one of them is a valid
  unfair daemon.
  • SynchronousDaemon, CentralFirstDaemon, CentralRandomDaemon,
    RandomSubsetDaemon(p), GreedyAdversaryDaemon(sample_limit),
    ScriptedDaemon(plan).
- builtin_strategies() / resolve_strategy(text) → name based lookup, e.g.
  `random_subset:0.3`, `greedy_adversary:64`, `scripted:plan.json`.
- run_execution(net, cfg0, strategy, max_steps, seed) → Trace, deterministic in
  its inputs and seed.
- validate_trace(net, trace) → ValidationResult (ILLEGAL_STEP, WRONG_CLASS,
  NOT_MAXIMAL with the offending step index).
- trace_summary / load_trace / dump_trace / load_plan → reporting and files.
"""

import itertools
import json
import logging
import random
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Union

from .algorithm import (
    apply_step, classify_step, enabled_action, enabled_nodes, is_legitimate, is_terminal,
    overlay, statement_results
)
from .error_handlers import InputError, StepError, StrategyContractViolation
from .prom_metrics import observe_execution
from .validators import ValidationResult, validate_configuration
from ..models.configuration import Configuration
from ..models.fields import is_strict_int
from ..models.network import Network
from ..models.trace import StepRecord, Trace, TraceOutcome

logger = logging.getLogger(__name__)

DEFAULT_GREEDY_SAMPLES = 256
DEFAULT_SUBSET_PROBABILITY = 0.5


class PlanExhausted(Exception):
    """Raised by a scripted daemon once its plan has been fully replayed."""


class DaemonStrategy:
    """Base class: pick a non-empty subset of the enabled nodes."""
    name = 'daemon'

    def reset(self) -> None:
        """Called once at the start of every execution."""

    def choose(self, net: Network, cfg: Configuration, enabled: FrozenSet[int],
               rng: random.Random) -> FrozenSet[int]:
        raise NotImplementedError

    def __call__(self, net, cfg, enabled, rng) -> FrozenSet[int]:
        return self.choose(net, cfg, enabled, rng)

    def __repr__(self) -> str:
        return f'<{type(self).__name__} {self.name}>'


class SynchronousDaemon(DaemonStrategy):
    name = 'synchronous'

    def choose(self, net, cfg, enabled, rng):
        return frozenset(enabled)


class CentralFirstDaemon(DaemonStrategy):
    name = 'central_first'

    def choose(self, net, cfg, enabled, rng):
        return frozenset([min(enabled)])


class CentralRandomDaemon(DaemonStrategy):
    name = 'central_random'

    def choose(self, net, cfg, enabled, rng):
        return frozenset([rng.choice(sorted(enabled))])


class RandomSubsetDaemon(DaemonStrategy):
    """Each enabled node joins with probability p; never returns an empty set."""
    name = 'random_subset'

    def __init__(self, probability: float = DEFAULT_SUBSET_PROBABILITY):
        if not 0.0 < probability <= 1.0:
            raise InputError(f'random_subset probability must be in (0, 1], got {probability}')
        self.probability = probability

    def choose(self, net, cfg, enabled, rng):
        ordered = sorted(enabled)
        chosen = [p for p in ordered if rng.random() < self.probability]
        if not chosen:
            chosen = [rng.choice(ordered)]
        return frozenset(chosen)


class GreedyAdversaryDaemon(DaemonStrategy):
    """
    Step-count stretcher: among at most `sample_limit` candidate subsets, pick
    the one whose successor has the most enabled nodes (first one on ties).
    Small enabled sets are enumerated exhaustively, larger ones sampled.
    """
    name = 'greedy_adversary'

    def __init__(self, sample_limit: int = DEFAULT_GREEDY_SAMPLES):
        if sample_limit < 1:
            raise InputError('greedy_adversary needs at least one candidate per step')
        self.sample_limit = sample_limit

    def _candidates(self, ordered: List[int], rng: random.Random) -> List[FrozenSet[int]]:
        total = (1 << len(ordered)) - 1
        if total <= self.sample_limit:
            masks = range(1, total + 1)
        else:
            masks = [rng.randint(1, total) for _ in range(self.sample_limit)]
        return [frozenset(p for i, p in enumerate(ordered) if mask >> i & 1) for mask in masks]

    def choose(self, net, cfg, enabled, rng):
        ordered = sorted(enabled)
        actions = {p: enabled_action(net, cfg, p) for p in ordered}
        results = statement_results(net, cfg, actions)
        best, best_score = None, -1
        for subset in self._candidates(ordered, rng):
            successor = overlay(cfg, {p: results[p] for p in subset})
            score = len(enabled_nodes(net, successor))
            if score > best_score:
                best, best_score = subset, score
        return best


class ScriptedDaemon(DaemonStrategy):
    """Replays an explicit activation plan, one set per step."""
    name = 'scripted'

    def __init__(self, plan: Sequence[Iterable[int]]):
        self.plan = [frozenset(int(p) for p in step) for step in plan]
        self._cursor = 0

    def reset(self) -> None:
        self._cursor = 0

    def choose(self, net, cfg, enabled, rng):
        if self._cursor >= len(self.plan):
            raise PlanExhausted()
        planned = self.plan[self._cursor]
        if not planned or not planned <= enabled:
            raise StrategyContractViolation(
                'PLAN_STEP_ILLEGAL',
                f'Plan step {self._cursor} activates {sorted(planned)} but enabled nodes are {sorted(enabled)}',
                details={'index': self._cursor}
            )
        self._cursor += 1
        return planned


def builtin_strategies() -> Dict[str, Callable[..., DaemonStrategy]]:
    return {
        'synchronous': SynchronousDaemon,
        'central_first': CentralFirstDaemon,
        'central_random': CentralRandomDaemon,
        'random_subset': RandomSubsetDaemon,
        'greedy_adversary': GreedyAdversaryDaemon,
        'scripted': ScriptedDaemon
    }


def load_plan(source: Union[str, Path, list]) -> List[List[int]]:
    """Scripted plans are JSON arrays of activation sets."""
    if source is None:
        raise InputError('A scripted run needs an activation plan')
    if isinstance(source, list):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text(encoding='utf-8'))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f'Cannot read activation plan {source}: {e}')
    if not isinstance(data, list) or not all(
            isinstance(step, list) and all(is_strict_int(p) for p in step) for step in data):
        raise InputError('An activation plan must be a JSON array of arrays of node identifiers')
    return data


def resolve_strategy(text: str, greedy_samples: Optional[int] = None) -> DaemonStrategy:
    """Build a strategy from `name[:argument]`."""
    name, _, argument = text.partition(':')
    factories = builtin_strategies()
    if name not in factories:
        raise InputError(f"Unknown strategy '{name}' (expected one of {', '.join(factories)})")
    try:
        if name == 'random_subset':
            return RandomSubsetDaemon(float(argument) if argument else DEFAULT_SUBSET_PROBABILITY)
        if name == 'greedy_adversary':
            limit = int(argument) if argument else (greedy_samples or DEFAULT_GREEDY_SAMPLES)
            return GreedyAdversaryDaemon(limit)
    except ValueError:
        raise InputError(f"Strategy argument '{argument}' is not a number")
    if name == 'scripted':
        if not argument:
            raise InputError('The scripted strategy needs a plan file: scripted:<plan.json>')
        return ScriptedDaemon(load_plan(argument))
    if argument:
        raise InputError(f"Strategy '{name}' takes no argument")
    return factories[name]()


def run_execution(net: Network, cfg0: Configuration, strategy: DaemonStrategy,
                  max_steps: int, seed: int) -> Trace:
    """Iterate steps under `strategy` until terminal or `max_steps` steps."""
    rng = random.Random(seed)
    strategy.reset()
    trace = Trace(initial=cfg0, max_steps=max_steps)
    cfg = cfg0
    while True:
        actions = enabled_nodes(net, cfg)
        if not actions:
            trace.outcome = TraceOutcome.TERMINATED
            break
        if len(trace.steps) >= max_steps:
            trace.outcome = TraceOutcome.TRUNCATED
            break
        enabled = frozenset(actions)
        try:
            chosen = strategy(net, cfg, enabled, rng)
        except PlanExhausted:
            logger.info(f"Activation plan exhausted after {len(trace.steps)} steps")
            trace.outcome = TraceOutcome.TRUNCATED
            break
        chosen = frozenset(chosen) if chosen is not None else frozenset()
        if not chosen or not chosen <= enabled:
            logger.warning(f"{strategy!r} returned {sorted(chosen)} for enabled set {sorted(enabled)}")
            raise StrategyContractViolation(
                f'Strategy {strategy.name} returned {sorted(chosen)}, '
                f'which is not a non-empty subset of {sorted(enabled)}',
                details={'step': len(trace.steps)}
            )
        successor = overlay(cfg, statement_results(net, cfg, {p: actions[p] for p in chosen}))
        step_class = classify_step(cfg, successor, net.root)
        trace.steps.append(StepRecord(tuple(sorted(chosen)), step_class, successor))
        logger.debug(f"step {len(trace.steps)}: {sorted(chosen)} {step_class.value} -> d={successor.d}")
        cfg = successor

    observe_execution(strategy.name, trace.outcome.value, len(trace.steps))
    logger.info(f"Execution with {strategy.name} {trace.outcome.value} after {len(trace.steps)} steps")
    return trace


def validate_trace(net: Network, trace: Trace) -> ValidationResult:
    """Replay every recorded step and check classes and maximality."""
    initial_check = validate_configuration(net, trace.initial)
    if not initial_check.is_valid:
        return initial_check
    cfg = trace.initial
    for index, step in enumerate(trace.steps):
        try:
            expected = apply_step(net, cfg, step.activated)
        except StepError as e:
            return ValidationResult(False, 'ILLEGAL_STEP', f'Step {index}: {e.message}', index=index)
        if expected != step.config:
            return ValidationResult(
                False, 'ILLEGAL_STEP',
                f'Step {index}: recorded configuration differs from the replayed one', index=index
            )
        actual_class = classify_step(cfg, step.config, net.root)
        if actual_class != step.step_class:
            return ValidationResult(
                False, 'WRONG_CLASS',
                f'Step {index}: recorded class {step.step_class.value}, actual {actual_class.value}',
                index=index
            )
        cfg = step.config
    if trace.outcome is TraceOutcome.TERMINATED and not is_terminal(net, cfg):
        return ValidationResult(False, 'NOT_MAXIMAL',
                                'Trace is marked terminated but its last configuration has enabled nodes')
    return ValidationResult(True)


def trace_summary(net: Network, trace: Trace) -> Dict[str, Any]:
    final = trace.final
    tally = trace.class_tally()
    return {
        'steps': len(trace.steps),
        'outcome': trace.outcome.value,
        'final_terminal': is_terminal(net, final),
        'final_legitimate': is_legitimate(net, final),
        'final_d': list(final.d),
        'steps_by_class': tally,
        'root_steps': tally['Root']
    }


def load_trace(source: Union[str, Path, Dict[str, Any]]) -> Trace:
    if isinstance(source, dict):
        return Trace.from_dict(source)
    try:
        data = json.loads(Path(source).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f'Cannot read trace file {source}: {e}')
    return Trace.from_dict(data)


def dump_trace(trace: Trace) -> Dict[str, Any]:
    return trace.to_dict()
