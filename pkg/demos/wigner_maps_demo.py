#!/usr/bin/env python3
# Phase space: the quasi-probability field transforms like a true density,
# W'(mapped point) = W(point), because the extended map has unit Jacobian.
# That single law explains rigid parabolas (beam), circles on circles
# (coherent states), and shearing ellipses (free dispersal).

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from formpreserve.numerics import Grid1D, SampledWaveFunction
from formpreserve.transform import free_ho_params, senitzky_params
from formpreserve.wavefields import ClassicalPath, Potential1D, ho_eigenstate, senitzky_wf
from formpreserve.wigner import (
    PhaseSpaceField,
    PhaseSpaceGrid,
    check_wolW,
    extract_level_curves,
    free_disperse_wigner,
    wigner_transform,
)

# The headline law, verified on a 384^2 grid for both named maps.
grid = PhaseSpaceGrid(Grid1D(-8, 8, 384), Grid1D(-8, 8, 384))
path = ClassicalPath.harmonic(1.0, 0.0, 1.0)
d1 = check_wolW(
    lambda x, t: senitzky_wf(1, x, t, path, 1.0),
    senitzky_params(1.0, 0.0, 1.0),
    Potential1D.harmonic(1.0),
    t=math.pi / 4,
    grid=grid,
)
d2 = check_wolW(
    lambda x, t: ho_eigenstate(0, x, t, 1.0),
    free_ho_params(0.0, 0.0, 1.0),
    Potential1D.harmonic(1.0),
    t=0.5,
    grid=grid,
)
print(f"law discrepancy, oscillating map:  {d1:.2e}")
print(f"law discrepancy, free<->harmonic:  {d2:.2e}")

# Level curves of the freely dispersing ground state: circle -> ellipses.
fig, ax = plt.subplots(figsize=(7, 5))
axpts = Grid1D(-5.0, 5.0, 384)
for wt, style in [(0.0, "-"), (1.0, "--"), (2.0, "-.")]:
    field = PhaseSpaceField.from_function(
        lambda x, p: free_disperse_wigner(0, x, p, wt, 1.0),
        PhaseSpaceGrid(axpts, axpts),
    )
    curve = extract_level_curves(field, math.exp(-1.0) / math.pi)[0]
    pts = np.vstack([curve.points, curve.points[:1]])
    ax.plot(pts[:, 0], pts[:, 1], style, label=rf"$\omega t = {wt:.0f}$")
ax.set_xlabel(r"$\tilde x$")
ax.set_ylabel(r"$\tilde p$")
ax.set_aspect("equal")
ax.legend()
ax.set_title("Free flow shears the unit circle into ellipses")
fig.tight_layout()
fig.savefig("wigner_maps_demo.png", dpi=130)
print("wrote wigner_maps_demo.png")

# Rigid circular motion of a coherent state's Wigner spot.
x_axis = Grid1D(-7, 7, 512)
p_axis = Grid1D(-7, 7, 512)
fig, ax = plt.subplots(figsize=(6, 6))
for t in (0.0, math.pi / 3, 2 * math.pi / 3):
    psi = SampledWaveFunction(x_axis, senitzky_wf(0, x_axis.points, t, path, 1.0), t=t)
    field = wigner_transform(psi, p_axis)
    curve = extract_level_curves(field, math.exp(-1.0) * float(field.values.max()))[0]
    pts = np.vstack([curve.points, curve.points[:1]])
    ax.plot(pts[:, 0], pts[:, 1], label=f"t = {t:.2f}")
theta = np.linspace(0, 2 * np.pi, 100)
ax.plot(np.cos(theta), np.sin(theta), ":", color="gray", label="guide circle")
ax.set_aspect("equal")
ax.legend(fontsize=8)
ax.set_title("Coherent-state spot translating around the origin")
fig.tight_layout()
fig.savefig("wigner_turntable_demo.png", dpi=130)
print("wrote wigner_turntable_demo.png")
