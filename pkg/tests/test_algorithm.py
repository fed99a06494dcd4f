"""
Tests for guards, statements, step semantics and the predicates.

P3 is the path r - a - b (nodes 0, 1, 2) with a's neighbor order [r, b].
"""

import json

import pytest

from app.models import ActionKind, Configuration, Network, StepClass
from app.utils.algorithm import (
    apply_step, classify_step, dist_macro, dump_configuration, enabled_action, enabled_nodes,
    is_legitimate, is_terminal, load_configuration, overlay, par_dist, random_configuration,
    statement_results, zeros_configuration
)
from app.utils.error_handlers import ConfigurationError, StepError
from app.utils.validators import validate_configuration

R, A, B = 0, 1, 2
LEGIT_P3 = Configuration((0, 1, 2), (None, 0, 1))


class TestMacros:
    """dist and par_dist"""

    @pytest.mark.parametrize('d, p, expected', [((0, 1, 5), A, 1), ((3, 0, 5), A, 4), ((0, 5, 1), B, 6)])
    def test_dist_macro(self, p3, make_config, d, p, expected):
        """dist is one more than the smallest neighbor d."""
        assert dist_macro(p3, make_config(p3, d), p) == expected

    @pytest.mark.parametrize('d, expected', [((0, 1, 0), R), ((5, 1, 0), B), ((0, 2, 1), B)])
    def test_par_dist(self, p3, make_config, d, expected):
        """The first neighbor in adjacency order with d one less wins."""
        assert par_dist(p3, make_config(p3, d), A) == expected

    def test_par_dist_without_witness(self, p3, make_config):
        """No neighbor one below is a NO_WITNESS error."""
        with pytest.raises(StepError) as exc:
            par_dist(p3, make_config(p3, (0, 5, 0)), A)
        assert exc.value.error_code == 'NO_WITNESS'

    def test_empty_neighborhood(self):
        """A non-root node without neighbors cannot evaluate dist."""
        net = Network(2, 0, ((), ()))
        with pytest.raises(StepError) as exc:
            dist_macro(net, Configuration((0, 0), (None, None)), 1)
        assert exc.value.error_code == 'EMPTY_NEIGHBORHOOD'


class TestGuards:
    """Each node has at most one enabled action"""

    def test_root_and_cd(self, p3, make_config):
        """Wrong root d enables Root; wrong d elsewhere enables CD."""
        cfg = make_config(p3, (3, 0, 5))
        assert enabled_nodes(p3, cfg) == {R: ActionKind.ROOT, A: ActionKind.CD, B: ActionKind.CD}

    def test_cp(self, p3):
        """Correct d with a parent that is not one level closer enables CP."""
        cfg = Configuration((0, 1, 2), (None, 2, 1))
        assert enabled_action(p3, cfg, A) is ActionKind.CP
        assert enabled_action(p3, cfg, B) is None

    def test_legitimate_has_no_enabled_node(self, p3):
        """Nothing is enabled in the legitimate configuration."""
        assert enabled_nodes(p3, LEGIT_P3) == {}


class TestApplyStep:
    """Simultaneous step semantics"""

    def test_simultaneous_reads(self, p3, make_config):
        """Activated nodes read the pre-step configuration."""
        assert apply_step(p3, make_config(p3, (0, 0, 0)), {A, B}).d == (0, 1, 1)

    def test_cd_statement(self, p3, make_config):
        """CD sets d to dist and leaves par alone."""
        assert apply_step(p3, make_config(p3, (0, 5, 1)), {B}).d == (0, 5, 6)

    def test_cp_statement(self, p3):
        """CP moves the parent pointer to the first witness."""
        after = apply_step(p3, Configuration((0, 1, 2), (None, 2, 1)), {A})
        assert after == LEGIT_P3

    def test_root_statement(self, p3, make_config):
        """Root resets its d to zero."""
        assert apply_step(p3, make_config(p3, (3, 0, 5)), {R}).d == (0, 0, 5)

    def test_order_independence(self, p3, make_config):
        """Activation order does not change the successor."""
        cfg = make_config(p3, (3, 0, 5))
        actions = enabled_nodes(p3, cfg)
        expected = overlay(cfg, statement_results(p3, cfg, actions))
        assert apply_step(p3, cfg, [B, A, R]) == expected
        assert expected.d == (0, 4, 1)

    def test_empty_activation(self, p3):
        """An empty activation set is refused."""
        with pytest.raises(StepError) as exc:
            apply_step(p3, LEGIT_P3, [])
        assert exc.value.error_code == 'EMPTY_ACTIVATION'

    def test_node_not_enabled(self, p3, make_config):
        """Activating a disabled node names that node."""
        with pytest.raises(StepError) as exc:
            apply_step(p3, make_config(p3, (0, 1, 5)), {A})
        assert exc.value.error_code == 'NODE_NOT_ENABLED'
        assert exc.value.details == {'node': A}

    def test_every_activated_node_changes(self, p3, make_config):
        """Every activated node changes its local state."""
        cfg = make_config(p3, (3, 0, 5))
        after = apply_step(p3, cfg, {R, A, B})
        assert all(cfg.state(p) != after.state(p) for p in (R, A, B))


class TestClassification:
    """Root, D and Par steps"""

    def test_classes(self, p3, make_config):
        """Root, D and Par steps are told apart by what moved."""
        assert classify_step(make_config(p3, (3, 0, 5)), make_config(p3, (0, 4, 5)), R) is StepClass.ROOT_STEP
        assert classify_step(make_config(p3, (0, 5, 1)), make_config(p3, (0, 5, 6)), R) is StepClass.D_STEP
        assert classify_step(Configuration((0, 1, 2), (None, 2, 1)), LEGIT_P3, R) is StepClass.PAR_STEP


class TestPredicates:
    """Terminal and legitimate configurations"""

    def test_terminal(self, p2, p3, make_config):
        """Terminal means no node is enabled."""
        assert is_terminal(p3, LEGIT_P3)
        assert not is_terminal(p3, make_config(p3, (3, 0, 5)))
        assert is_terminal(p2, Configuration((0, 1), (None, 0)))

    def test_legitimate(self, p3, triangle):
        """Legitimate means BFS distances and parents one level closer."""
        assert is_legitimate(p3, LEGIT_P3)
        assert not is_legitimate(p3, Configuration((0, 1, 2), (None, 2, 1)))
        assert is_legitimate(triangle, Configuration((0, 1, 1), (None, 0, 0)))

    def test_singleton(self):
        """A lone root is terminal only at d zero."""
        net = Network(1, 0, ((),))
        assert is_terminal(net, Configuration((0,), (None,)))
        assert is_legitimate(net, Configuration((0,), (None,)))
        assert not is_terminal(net, Configuration((2,), (None,)))

    def test_large_d_values_do_not_wrap(self, p2):
        """d values are unbounded integers."""
        big = 2 ** 70
        cfg = Configuration((0, big), (None, 0))
        assert apply_step(p2, cfg, {1}).d == (0, 1)


class TestConfigurationHelpers:
    """Configuration constructors and the JSON format"""

    def test_zeros(self, p3):
        """The zeros configuration points each node at its first neighbor."""
        cfg = zeros_configuration(p3)
        assert cfg.d == (0, 0, 0)
        assert cfg.par == (None, 0, 1)

    def test_random_is_seeded_and_valid(self, fig1):
        """Random configurations are reproducible and within d_max."""
        first = random_configuration(fig1, 10, seed=3)
        assert first == random_configuration(fig1, 10, seed=3)
        assert validate_configuration(fig1, first).is_valid
        assert max(first.d) <= 10

    def test_json_format(self, p3, tmp_path):
        """A dumped configuration loads back unchanged."""
        data = dump_configuration(LEGIT_P3)
        assert data == {'0': {'d': 0, 'par': None}, '1': {'d': 1, 'par': 0}, '2': {'d': 2, 'par': 1}}
        path = tmp_path / 'cfg.json'
        path.write_text(json.dumps(data))
        assert load_configuration(p3, str(path)) == LEGIT_P3

    def test_load_rejects_non_neighbor_parent(self, p3):
        """A parent that is not a neighbor is refused."""
        with pytest.raises(ConfigurationError):
            load_configuration(p3, {'0': {'d': 0, 'par': None}, '1': {'d': 1, 'par': 0}, '2': {'d': 2, 'par': 0}})

    def test_load_rejects_gaps(self, p3):
        """Configurations must cover every node."""
        with pytest.raises(ConfigurationError):
            load_configuration(p3, {'0': {'d': 0, 'par': None}, '2': {'d': 2, 'par': 1}})

    @pytest.mark.parametrize('entry', [
        {'d': 2.9, 'par': 0},
        {'d': True, 'par': 0},
        {'d': '2', 'par': 0},
        {'d': 2, 'par': 0.0},
        {'d': 2, 'par': False}
    ])
    def test_load_rejects_non_integer_fields(self, p2, entry):
        """d and par must be real integers; nothing is truncated or coerced."""
        with pytest.raises(ConfigurationError):
            load_configuration(p2, {'0': {'d': 0, 'par': None}, '1': entry})

    @pytest.mark.parametrize('key', ['1.0', ' 1', 'one'])
    def test_load_rejects_non_integer_keys(self, p2, key):
        """Node keys must spell an integer exactly."""
        with pytest.raises(ConfigurationError):
            load_configuration(p2, {'0': {'d': 0, 'par': None}, key: {'d': 1, 'par': 0}})
