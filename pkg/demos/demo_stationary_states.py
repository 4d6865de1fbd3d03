"""Ground and first excited state of the double well.

The adaptive loop cools until energy improvements stall, halving the step
each time; the polish stage then contracts the leftover contamination.
The excited state repeats the loop with the ground state projected out of
every proposal.  Negative Wigner values appear exactly where they should:
a non-Gaussian pure state cannot stay positive.
"""

import numpy as np

import wigner_forge as wf

grid = wf.make_grid(256, 256, (-10, 10), (-10, 10))
ham = wf.HamiltonianSpec.from_strings("-0.05*x^2 + 0.03*x^4", "p^2/2")

print("reference spectrum from dense diagonalization:")
spectrum = wf.diagonalize(ham, grid, n_states=4)
print("  ", np.array2string(spectrum.energies, precision=10))

print("ground state ...")
cfg0 = wf.SolverConfig(energy_tol=1e-10, polish_steps=400)
ground, e0 = wf.ground_state(ham, grid, cfg0)
print(f"  energy {e0:.12f}   (oracle diff {e0 - spectrum.energies[0]:+.2e})")
print(f"  purity {wf.purity(ground):.12f}")
print(f"  min W  {ground.w.min():.3e}  (negative: the state is not Gaussian)")

print("first excited state ...")
cfg1 = wf.SolverConfig(dbeta_init=0.1, energy_tol=1e-10, purity_slack=1e-4,
                       splitting="strang", polish_steps=1000, polish_dbeta=0.03)
excited, e1 = wf.excited_state(ham, grid, cfg1, [ground])
i0 = int(np.argmin(np.abs(grid.x)))
j0 = int(np.argmin(np.abs(grid.p)))
marginal_x, _ = wf.marginals(excited)
print(f"  energy {e1:.12f}   (oracle diff {e1 - spectrum.energies[1]:+.2e})")
print(f"  purity {wf.purity(excited):.12f}")
print(f"  W(0,0) {excited.w[i0, j0]:+.4f}  (central negative oval)")
print(f"  coordinate marginal at x=0: {marginal_x[i0]:.2e} of peak {marginal_x.max():.4f}")

print("stationarity of both states over t = 1:")
for label, state in (("ground", ground), ("excited", excited)):
    residual = wf.stationarity_residual(state, ham, 1.0, 0.01, splitting="yoshida4")
    print(f"  {label:8s} {residual:.2e}")
