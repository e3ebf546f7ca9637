#!/usr/bin/env python3
"""The complex resonance spectrum of the finite slab.

Resonances are the lower-half-plane poles of the slab reflection
coefficient.  This script reproduces the structural picture for three
parameter sets: resonances line up below the spectral bands, each band
carries k - 1 of them (sometimes one more below a transparency
frequency), the whole spectrum is frequency periodic when the layer
transit times are equal, and everything drifts toward the real axis as
the slab grows.
"""
from stepslab import (UnitCell, Window, audit_count, convergence_study,
                      default_im_floor, find_bands, find_resonances,
                      is_commensurate, resonances_k1, spectral_period,
                      transparency_frequencies)

CELLS = {
    "equal transit times": UnitCell(1.0, 4.0, 0.2),
    "skewed (b2 = 3.8)": UnitCell(1.0, 3.8, 0.2),
    "reversed (b1 = 3.8)": UnitCell(3.8, 1.0, 0.8),
}

for label, cell in CELLS.items():
    print("=" * 64)
    print(f"{label}: b1={cell.b1}, b2={cell.b2}, x2={cell.x2}  "
          f"(commensurate: {is_commensurate(cell)})")
    bands = find_bands(cell, 4.5)
    print("bands:", "  ".join(f"({b.lo:.4f}, {b.hi:.4f})" for b in bands))
    print("transparency markers:", [round(x, 4) for x in transparency_frequencies(cell, 4.5)])

    for k in (3, 4, 5):
        rs = find_resonances(cell, k, Window(0.0, 4.5, default_im_floor(cell)))
        print(f"k={k}: {len(rs)} resonances")
        for r in rs:
            print(f"    {r.lam.real:+.6f} {r.lam.imag:+.6f}i   band {r.band_index}")
print()

cell = CELLS["equal transit times"]
bands = find_bands(cell, 4.0)

print("=" * 64)
print("Newton count vs argument-principle count (k = 5):")
for band in bands[:2]:
    newton = [r for r in find_resonances(cell, 5, Window(0.0, 4.0, default_im_floor(cell)))
              if r.band_index == band.index]
    contour = audit_count(cell, 5, band)
    print(f"  band {band.index}: newton {len(newton)}, contour {contour}")
print()

print("Frequency periodicity of the resonance set (equal transit times):")
T = spectral_period(cell)
first = find_resonances(cell, 4, Window(0.0, T, -1.25))
second = find_resonances(cell, 4, Window(T, 2.0 * T, -1.25))
print(f"  period T = {T:.6f}; {len(first)} resonances per period window")
worst = max(min(abs(a.lam + T - b.lam) for b in second) for a in first)
print(f"  max |translate(window 1) - window 2| = {worst:.2e}")
print()

print("One-cell slab has a closed form (constant depth):")
for r in resonances_k1(cell, 8.0):
    print(f"    {r.lam.real:+.6f} {r.lam.imag:+.6f}i")
print()

print("Approach to the real axis as the slab grows (first band):")
for row in convergence_study(cell, bands[0], [4, 8, 16, 32]):
    print(f"  k={row.k:3d}: {row.count:3d} resonances, shallowest Im = {row.max_im:.6f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    fig, axes = plt.subplots(3, 1, figsize=(8, 9), sharex=True)
    for ax, (label, cell) in zip(axes, CELLS.items()):
        bands = find_bands(cell, 4.5)
        for b in bands:
            ax.axvspan(b.lo, b.hi, alpha=0.15, color="tab:green")
        for lam0 in transparency_frequencies(cell, 4.5):
            ax.plot([lam0], [0.0], "o", mfc="none", color="k", ms=6)
        for k, marker in ((3, "x"), (4, "+"), (5, ".")):
            rs = find_resonances(cell, k, Window(0.0, 4.5, default_im_floor(cell)))
            ax.plot([r.lam.real for r in rs], [r.lam.imag for r in rs],
                    marker, ls="none", label=f"k={k}")
        ax.set_title(label)
        ax.set_ylabel("Im lambda")
        ax.legend(loc="lower right", fontsize=8)
    axes[-1].set_xlabel("Re lambda")
    fig.tight_layout()
    fig.savefig("demo_resonances.png", dpi=120)
    print("\nwrote demo_resonances.png")
