#!/usr/bin/env python3
"""Transmission through a finite slab: unitarity and perfect-transmission peaks.

A slab of k cells transmits perfectly at exactly k - 1 frequencies per
band, plus at the one-cell transparency frequencies.  A slab built from
a homogeneous cell is invisible at every frequency.
"""
import numpy as np

from stepslab import (UnitCell, find_bands, perfect_transmission_frequencies,
                      reflection_k, transmission_sq, transparency_frequencies)

cell = UnitCell(1.0, 4.0, 0.2)
bands = find_bands(cell, 4.0)
band = bands[0]

print(f"First band: ({band.lo:.6f}, {band.hi:.6f})")
for k in (2, 3, 5, 8):
    peaks = perfect_transmission_frequencies(cell, band, k)
    values = [transmission_sq(cell, lam, k) for lam in peaks]
    print(f"k={k}: {len(peaks)} perfect-transmission frequencies")
    for lam, t in zip(peaks, values):
        print(f"    lambda = {lam:.8f}   |t|^2 = {t:.12f}")
print()

# Energy balance holds at every real frequency.
xs = np.linspace(0.01, 4.0, 1500)
worst = 0.0
for k in (1, 4, 9):
    defect = np.abs(np.abs(reflection_k(cell, xs, k)) ** 2
                    + transmission_sq(cell, xs, k) - 1.0)
    worst = max(worst, float(defect.max()))
print(f"max | |r|^2 + |t|^2 - 1 | over the sweep: {worst:.2e}")
print()

# The one-cell transparency frequencies transmit perfectly at every k.
for lam0 in transparency_frequencies(cell, 4.0):
    row = ", ".join(f"k={k}: {transmission_sq(cell, lam0, k):.12f}" for k in (1, 6, 16))
    print(f"transparency at lambda = {lam0:.6f} -> {row}")
print()

# Inside a gap the slab turns opaque exponentially fast with k.
mid_gap = 0.5 * (bands[0].hi + bands[1].lo)
print(f"mid-gap lambda = {mid_gap:.4f}:")
for k in (1, 2, 4, 8):
    print(f"  k={k}: |t|^2 = {transmission_sq(cell, mid_gap, k):.3e}")

uniform = UnitCell(1.0, 1.0, 0.5)
print(f"\nhomogeneous slab: |t|^2 = {transmission_sq(uniform, 1.234, 7)} at any frequency")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(8, 4))
    for k in (1, 5):
        ax.plot(xs, transmission_sq(cell, xs, k), lw=1, label=f"k={k}")
    for b in bands:
        ax.axvspan(b.lo, b.hi, alpha=0.12, color="tab:green")
    ax.set_xlabel("frequency")
    ax.set_ylabel("|t|^2")
    ax.legend()
    ax.set_title("k - 1 unit peaks per band")
    fig.tight_layout()
    fig.savefig("demo_transmission.png", dpi=120)
    print("\nwrote demo_transmission.png")
