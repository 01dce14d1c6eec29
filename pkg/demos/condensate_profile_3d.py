# The lowest axial (l = 1) condensate mode of the 3D trap.
#
# Its renormalized profile is z * s(k r) with s(u) = 3 j1(u)/u, s(0) = 1,
# and k = sqrt(eps) measured from the radial eigensolver.  The deviation
# from the limit profile z is bounded by a single constant times
# |z| |x|^2 / R^2 across the whole trap, and smeared pairings converge to
# the z-weighted integral of the test function.

import numpy as np

from thermolim import RadialFunction3D, RadialGrid, axial_trap_mode, l1_profile_check
from thermolim.grids import bump_profile

print("measured axial mode wavenumbers against the 3 pi / (2R) estimate:")
for R in (20.0, 40.0, 80.0):
    prof = axial_trap_mode(R)
    print(f"  R = {R:4.0f}: k R = {prof.k * R:.4f}   (3 pi / 2 = {3 * np.pi / 2:.4f})")

rg = RadialGrid(8.0, 1024)
f = RadialFunction3D(rg, np.zeros_like(rg.r), bump_profile((rg.r - 3.0) / 2.0))
res = l1_profile_check([20.0, 40.0, 80.0], f)

print()
print("deviation-bound constants sup |h - z| R^2 / (|z| |x|^2):")
for R, c in zip(res["radii"], res["bound_constants"]):
    print(f"  R = {R:4.0f}: {c:.4f}")

print()
print("pairings with an axial test function:")
for R, p in zip(res["radii"], res["pairings"]):
    print(f"  R = {R:4.0f}: {p:.6f}")
print(f"limit (z-weighted integral): {res['limit']:.6f}")
print(f"deviation log-log slope: {res['deviation_slope']:.3f}  (1/R^2 rate)")
