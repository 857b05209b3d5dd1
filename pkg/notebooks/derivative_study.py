# %% [markdown]
# # Derivatives of a fitted network
#
# The interpolating network is smooth, so its derivative is available in
# closed form.  Fitting only function values still gives derivative
# errors that shrink with M, though more slowly than the values.

# %%
import numpy as np

from elminterp import derivative_grid, discrete_error, generate_nodes, get_target, init_hidden, train
from elminterp import network_derivative, network_eval

target = get_target("runge")
xg = derivative_grid()
print(f"{'M':>4} {'act':>4} {'value err':>11} {'deriv err':>11}")
for M in (20, 40, 80, 160):
    nodes = generate_nodes("chebyshev", M)
    for act in ("LS", "SP", "GRB"):
        net = train(init_hidden(2 * M, act, seed=M), nodes, target.evaluator(nodes.abscissas))
        ev = discrete_error(network_eval(net, xg), target.evaluator(xg))
        ed = discrete_error(network_derivative(net, xg), target.derivative(xg))
        print(f"{M:>4} {act:>4} {ev:11.3e} {ed:11.3e}")

# %% [markdown]
# The derivative grid sits half a spacing off the value grid, so it never
# lands on x = 0, where |x| has no derivative.

# %%
print("\n0 in derivative grid:", bool(np.any(xg == 0.0)))
absx = get_target("absx")
nodes = generate_nodes("chebyshev", 160)
net = train(init_hidden(320, "LS", seed=7), nodes, absx.evaluator(nodes.abscissas))
print(f"|x|, M=160: derivative error {discrete_error(network_derivative(net, xg), absx.derivative(xg)):.3e}")
