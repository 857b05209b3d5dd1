import json
import math

import numpy as np
import pytest

from elminterp.activations import Neuron, neuron_feature, neuron_feature_derivative
from elminterp.errors import DimensionError, UnsupportedRegimeError, ValidationError
from elminterp.linalg import condition_estimate
from elminterp.network import (
    FORMAT_NAME,
    HiddenLayer,
    InitSpec,
    TrainedNetwork,
    assemble_collocation,
    init_hidden,
    load_network,
    network_derivative,
    network_eval,
    network_from_dict,
    network_to_dict,
    save_network,
    train,
)
from elminterp.nodes import generate_nodes
from oracles import central_difference


def runge(x):
    return 1 / (1 + 25 * x**2)


class TestInitHidden:
    @pytest.mark.parametrize("kind", ["LS", "SP", "GRB"])
    def test_deterministic(self, kind):
        a = init_hidden(50, kind, seed=3)
        b = init_hidden(50, kind, seed=3)
        assert np.array_equal(a.weights_a, b.weights_a) and np.array_equal(a.biases_beta, b.biases_beta)
        c = init_hidden(50, kind, seed=4)
        assert not np.array_equal(a.weights_a, c.weights_a)

    def test_degenerate_ranges(self):
        h = init_hidden(1, "LS", "additive", seed=0, slope_range=(1, 1), center_range=(0, 0))
        n = h.neurons[0]
        assert n.weight_a == 1.0 and n.bias_beta == 0.0

    def test_additive_transition_at_centre(self):
        h = init_hidden(200, "LS", seed=1)
        centres = -h.biases_beta / h.weights_a
        assert np.all(np.abs(centres) <= 1.0 + 1e-12)
        assert np.all(np.abs(h.weights_a) <= 20)

    def test_gaussian_ranges(self):
        h = init_hidden(200, "GRB", seed=2)
        assert np.all(np.abs(h.weights_a) <= 1.0)
        assert np.all(h.biases_beta > 0)
        assert np.all(h.biases_beta >= 1 / 15 - 1e-15)

    def test_centres_within_overridden_range(self):
        for kind in ("LS", "SP", "GRB"):
            h = init_hidden(200, kind, seed=5, center_range=(-1.2, 1.2))
            centres = h.weights_a if kind == "GRB" else -h.biases_beta / h.weights_a
            assert np.all(np.abs(centres) <= 1.2 + 1e-12)

    def test_fixed_radius_rule(self):
        h = init_hidden(100, "GRB", seed=0, radius_rule="fixed")
        np.testing.assert_array_equal(h.biases_beta, 4 / math.sqrt(100))
        h = init_hidden(10, "GRB", seed=0, radius_rule="fixed", radius=0.3)
        np.testing.assert_array_equal(h.biases_beta, 0.3)

    def test_independent_bias(self):
        h = init_hidden(100, "SP", seed=0, independent_bias=True, bias_range=(-2, 2))
        assert np.all(np.abs(h.biases_beta) <= 2)
        tied = init_hidden(100, "SP", seed=0)
        assert not np.allclose(h.biases_beta, tied.biases_beta)

    def test_default_scheme_is_inferred(self):
        assert init_hidden(3, "GRB").scheme.value == "distance"
        assert init_hidden(3, "SP").scheme.value == "additive"

    @pytest.mark.parametrize("kind,scheme", [("GRB", "additive"), ("LS", "distance")])
    def test_invalid_pairing(self, kind, scheme):
        with pytest.raises(ValidationError):
            init_hidden(5, kind, scheme)

    @pytest.mark.parametrize("N", [0, -1, 2.5])
    def test_invalid_size(self, N):
        with pytest.raises(ValidationError):
            init_hidden(N, "LS")

    def test_bad_overrides(self):
        with pytest.raises(ValidationError):
            init_hidden(5, "LS", slope_range=(3, 1))
        with pytest.raises(ValidationError):
            init_hidden(5, "GRB", radius_rule="adaptive")
        with pytest.raises(ValidationError):
            init_hidden(5, "GRB", radius_rule="fixed", radius=0.0)
        with pytest.raises(TypeError):
            init_hidden(5, "LS", colour="red")

    def test_spec_round_trip(self):
        spec = init_hidden(4, "GRB", seed=9, shape_range=(1, 5)).init_spec
        assert InitSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec

    def test_layer_is_immutable(self):
        h = init_hidden(4, "LS")
        with pytest.raises(ValueError):
            h.weights_a[0] = 1.0

    def test_from_neurons(self):
        ns = [Neuron("LS", "additive", 1.0, 0.0), Neuron("LS", "additive", -2.0, 0.5)]
        h = HiddenLayer.from_neurons(ns)
        assert h.neurons == ns
        with pytest.raises(ValidationError):
            HiddenLayer.from_neurons([ns[0], Neuron("GRB", "distance", 0.0, 1.0)])


class TestCollocation:
    def test_constant_logistic_column(self):
        h = HiddenLayer.from_neurons([Neuron("LS", "additive", 0.0, 0.0)])
        np.testing.assert_array_equal(assemble_collocation(h, generate_nodes("equispaced", 3)), [[0.5]] * 3)

    def test_gaussian_column(self):
        h = HiddenLayer.from_neurons([Neuron("GRB", "distance", 0.0, 1.0)])
        S = assemble_collocation(h, generate_nodes("equispaced", 3))
        np.testing.assert_allclose(S[:, 0], [math.exp(-1), 1, math.exp(-1)])

    def test_shape(self):
        assert assemble_collocation(init_hidden(20, "SP"), generate_nodes("chebyshev", 10)).shape == (10, 20)

    @pytest.mark.parametrize("kind", ["LS", "SP", "GRB"])
    def test_entries_match_neuron_features(self, kind):
        h = init_hidden(7, kind, seed=11)
        x = generate_nodes("random", 9, seed=2)
        S = assemble_collocation(h, x)
        for i, n in enumerate(h.neurons):
            for j, xj in enumerate(x.abscissas):
                assert S[j, i] == pytest.approx(neuron_feature(n, xj), rel=1e-14, abs=1e-300)


class TestTrain:
    def test_single_neuron(self):
        h = HiddenLayer.from_neurons([Neuron("LS", "additive", 0.0, 0.0)])
        net = train(h, [0.0], [1.0])
        np.testing.assert_allclose(net.external_weights, [2.0])
        assert net.mode == "square"
        assert network_eval(net, 0.0) == pytest.approx(1.0)

    def test_zero_data_gives_zero_weights(self):
        net = train(init_hidden(30, "GRB", seed=0), generate_nodes("chebyshev", 15), np.zeros(15))
        assert np.all(net.external_weights == 0)
        assert np.all(network_eval(net, np.linspace(-1, 1, 11)) == 0)
        assert np.all(network_derivative(net, np.linspace(-1, 1, 11)) == 0)

    def test_overparametrized_runge_residual(self):
        x = generate_nodes("chebyshev", 80)
        y = runge(x.abscissas)
        net = train(init_hidden(160, "GRB", seed=0), x, y)
        assert net.mode == "overparametrized"
        assert net.training_residual <= 1e-6 * np.linalg.norm(y)

    def test_residual_recomputed_independently(self):
        x = generate_nodes("equispaced", 40)
        y = runge(x.abscissas)
        h = init_hidden(80, "SP", seed=2)
        net = train(h, x, y)
        S = np.array([[neuron_feature(n, xj) for n in h.neurons] for xj in x.abscissas])
        assert abs(np.linalg.norm(S @ net.external_weights - y) - net.training_residual) <= 1e-12
        assert net.collocation_condition == pytest.approx(condition_estimate(S), rel=1e-8)

    @pytest.mark.parametrize("kind", ["LS", "SP", "GRB"])
    @pytest.mark.parametrize("nodes", ["equispaced", "chebyshev", "random"])
    def test_interpolation_exactness(self, kind, nodes):
        x = generate_nodes(nodes, 60, seed=7)
        y = runge(x.abscissas)
        net = train(init_hidden(120, kind, seed=1), x, y)
        if net.collocation_condition <= 1e12:
            assert np.max(np.abs(network_eval(net, x.abscissas) - y)) <= 1e-6 * (1 + np.max(np.abs(y)))
        else:
            # beyond the conditioning bound the fit is least squares only
            assert net.training_residual <= 1e-4 * np.linalg.norm(y)

    def test_bit_identical_weights(self):
        x = generate_nodes("random", 30, seed=1)
        y = runge(x.abscissas)
        w1 = train(init_hidden(60, "LS", seed=5), x, y).external_weights
        w2 = train(init_hidden(60, "LS", seed=5), x, y).external_weights
        assert w1.tobytes() == w2.tobytes()

    def test_more_nodes_than_neurons(self):
        with pytest.raises(UnsupportedRegimeError):
            train(init_hidden(5, "LS"), generate_nodes("chebyshev", 6), np.zeros(6))

    def test_value_count_mismatch(self):
        with pytest.raises(DimensionError):
            train(init_hidden(10, "LS"), generate_nodes("chebyshev", 6), np.zeros(5))

    def test_solver_errors_propagate(self):
        with pytest.raises(ValidationError):
            train(init_hidden(10, "LS"), generate_nodes("chebyshev", 6), [np.nan] * 6)
        with pytest.raises(ValidationError):
            train(init_hidden(10, "LS"), generate_nodes("chebyshev", 6), np.zeros(6), rank_tol=2.0)


def random_net(rng, kind, N=25):
    h = init_hidden(N, kind, seed=int(rng.integers(1 << 30)))
    return TrainedNetwork(h, rng.standard_normal(N), "overparametrized", 0.0, 1.0)


class TestEvaluation:
    def test_linearity(self, rng):
        net = random_net(rng, "SP")
        w1, w2 = rng.standard_normal((2, 25))
        x = rng.uniform(-1, 1, 100)
        np.testing.assert_allclose(net.with_weights(w1 + w2)(x), net.with_weights(w1)(x) + net.with_weights(w2)(x),
                                   atol=1e-12)

    def test_matches_neuron_sum(self, rng):
        net = random_net(rng, "GRB", N=6)
        x = 0.37
        expected = sum(w * neuron_feature(n, x) for w, n in zip(net.external_weights, net.hidden.neurons))
        assert network_eval(net, x) == pytest.approx(expected, rel=1e-13)
        d_expected = sum(w * neuron_feature_derivative(n, x) for w, n in zip(net.external_weights, net.hidden.neurons))
        assert network_derivative(net, x) == pytest.approx(d_expected, rel=1e-13)

    def test_single_gaussian_flat_at_centre(self):
        h = HiddenLayer.from_neurons([Neuron("GRB", "distance", 0.25, 0.4)])
        net = TrainedNetwork(h, [3.0], "square", 0.0, 1.0)
        assert network_derivative(net, 0.25) == 0.0

    def test_shapes(self, rng):
        net = random_net(rng, "LS")
        assert isinstance(network_eval(net, 0.1), float)
        assert network_eval(net, np.zeros((3, 2))).shape == (3, 2)
        assert network_derivative(net, np.zeros(4)).shape == (4,)

    def test_derivative_matches_finite_differences(self, rng):
        worst = 0.0
        for _ in range(1000):
            net = random_net(rng, rng.choice(["LS", "SP", "GRB"]), N=10)
            x = rng.uniform(-1, 1)
            d = network_derivative(net, x)
            fd = central_difference(lambda t: network_eval(net, t), x)
            worst = max(worst, abs(d - fd) / (1 + abs(d)))
        assert worst <= 1e-6

    def test_trained_derivative_matches_finite_differences(self):
        x = generate_nodes("chebyshev", 40)
        net = train(init_hidden(80, "LS", seed=3), x, runge(x.abscissas))
        t = np.linspace(-0.99, 0.99, 200)
        d = network_derivative(net, t)
        fd = central_difference(lambda s: network_eval(net, s), t)
        # trained weights are large and cancel, so the difference quotient
        # carries rounding of order eps * sum|w| / h
        rounding = np.finfo(float).eps * np.sum(np.abs(net.external_weights)) / 1e-6
        assert np.max(np.abs(d - fd)) <= 1e-6 * (1 + np.max(np.abs(d))) + 10 * rounding

    def test_weight_count_checked(self):
        with pytest.raises(DimensionError):
            TrainedNetwork(init_hidden(3, "LS"), [1.0, 2.0], "square", 0.0, 1.0)


class TestSerialization:
    @pytest.mark.parametrize("kind", ["LS", "SP", "GRB"])
    def test_round_trip(self, tmp_path, kind):
        x = generate_nodes("chebyshev", 20)
        net = train(init_hidden(40, kind, seed=8), x, runge(x.abscissas))
        path = tmp_path / "net.json"
        save_network(net, path)
        back = load_network(path)
        assert back.hidden.init_spec == net.hidden.init_spec
        assert back.mode == net.mode
        assert back.external_weights.tobytes() == net.external_weights.tobytes()
        assert back.hidden.weights_a.tobytes() == net.hidden.weights_a.tobytes()
        g = np.linspace(-1, 1, 101)
        assert np.array_equal(network_eval(back, g), network_eval(net, g))

    def test_document_layout(self):
        net = train(init_hidden(4, "GRB", seed=0), [-1.0, 0.0, 1.0], [1.0, 2.0, 3.0])
        d = json.loads(json.dumps(network_to_dict(net)))
        assert d["format"] == FORMAT_NAME and d["version"] == 1
        assert d["kind"] == "GRB" and d["scheme"] == "distance" and d["mode"] == "overparametrized"
        assert len(d["neurons"]) == 4 and set(d["neurons"][0]) == {"a", "beta"}
        assert d["init_spec"]["seed"] == 0

    def test_infinite_condition_survives(self):
        h = HiddenLayer.from_neurons([Neuron("LS", "additive", 0.0, 0.0)] * 2)
        net = train(h, [-1.0, 1.0], [1.0, 1.0])
        assert net.collocation_condition == math.inf
        text = json.dumps(network_to_dict(net), allow_nan=False)
        assert network_from_dict(json.loads(text)).collocation_condition == math.inf

    def test_rejects_foreign_documents(self):
        with pytest.raises(ValidationError):
            network_from_dict({"format": "other"})
        d = network_to_dict(train(init_hidden(2, "LS"), [-1.0, 1.0], [0.0, 1.0]))
        d["version"] = 99
        with pytest.raises(ValidationError):
            network_from_dict(d)
