"""Cooling a double well in phase space and verifying the result.

Walks through the core loop: build a grid and Hamiltonian, cool the
infinite-temperature state to beta = 1, compare the partition-function
estimate against dense diagonalization, and confirm the state is stationary
under real-time propagation.
"""

import numpy as np

import wigner_forge as wf

# a 256-point grid keeps this demo under ten seconds; the shipped
# acceptance runs use 512
grid = wf.make_grid(256, 256, (-10, 10), (-10, 10))
ham = wf.HamiltonianSpec.from_strings("-0.05*x^2 + 0.03*x^4", "p^2/2")

print("cooling to beta = 1 ...")
state = wf.gibbs(ham, grid, beta_target=1.0, dbeta=1e-3, splitting="chin4")
obs = wf.report(state, ham)
print(f"  trace      {obs.trace:.12f}")
print(f"  energy     {obs.energy:.8f}")
print(f"  purity     {obs.purity:.8f}")
print(f"  Z estimate {obs.z_estimate:.8f}")
print(f"  min W      {state.w.min():.3e}  (thermal states stay positive)")

print("cross-checking Z against the eigenvalue sum ...")
spectrum = wf.diagonalize(ham, grid, n_states=12)
z_oracle = np.exp(-1.0 * spectrum.energies).sum()
print(f"  oracle Z   {z_oracle:.8f}   (difference {abs(z_oracle - obs.z_estimate):.2e})")

print("propagating in real time for t = 1 ...")
residual = wf.stationarity_residual(state, ham, 1.0, 0.01, splitting="yoshida4")
print(f"  stationarity residual {residual:.2e}")

# the thermal state barely moves; a displaced wave packet moves a lot
packet = np.exp(
    -((grid.x[:, None] - 2.0) ** 2) / 0.5 - grid.p[None, :] ** 2 * 0.5
)
packet /= packet.sum() * grid.cell
control = wf.stationarity_residual(
    wf.WignerState(grid, packet), ham, 1.0, 0.01, splitting="yoshida4"
)
print(f"  displaced-packet control  {control:.2e}")
