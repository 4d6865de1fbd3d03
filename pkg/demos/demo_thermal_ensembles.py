"""Fermi and Bose distributions from the alternating thermal series.

One cooling trajectory supplies snapshots at beta, 2*beta, 3*beta, ...;
adding them (Bose) or alternating them (Fermi) builds the occupation-
weighted ensembles.  Bose statistics pile population into the ground state,
so its peak sharpens; Fermi statistics flatten it.
"""

import numpy as np

import wigner_forge as wf

grid = wf.make_grid(128, 128, (-10, 10), (-10, 10))
ham = wf.HamiltonianSpec.from_strings("-0.05*x^2 + 0.03*x^4", "p^2/2")
beta, dbeta = 1.5, 7.5e-3

print(f"plain thermal state at beta = {beta} ...")
thermal = wf.gibbs(ham, grid, beta, dbeta, splitting="strang")

print("Bose-Einstein series ...")
bose, occ_bose = wf.thermal_state(
    ham, grid, wf.ThermalSpec(s=-1, beta=beta, mu=0.0, term_tol=1e-9),
    dbeta, splitting="strang")

print("Fermi series ...")
fermi, occ_fermi = wf.thermal_state(
    ham, grid, wf.ThermalSpec(s=+1, beta=beta, mu=0.0, term_tol=1e-9),
    dbeta, splitting="strang")

print(f"  occupations: bose {occ_bose:.6f}, fermi {occ_fermi:.6f}")
print(f"  peaks: bose {bose.w.max():.4f} > thermal {thermal.w.max():.4f} "
      f"> fermi {fermi.w.max():.4f}")

print("cross-check against oracle occupancy mixtures:")
spectrum = wf.diagonalize(ham, grid, n_states=30)
for s, name, state in ((-1, "bose", bose), (+1, "fermi", fermi)):
    occupancies = 1.0 / (np.exp(beta * spectrum.energies) + s)
    reference = wf.wigner_of_mixture(spectrum, occupancies)
    reference.w /= wf.trace_integral(reference)
    print(f"  {name:6s} Linf difference {np.abs(state.w - reference.w).max():.2e}, "
          f"occupation sum {occupancies.sum():.6f}")
