"""Closed-form SE and EE for the default hardware model.

Prints EE against the number of selected antennas at 1 W, then the
EE-SE curve for a fixed antenna count, showing the rise-then-fall shape.
"""

import numpy as np

from mimo_tradeoff import PowerModel, SystemConfig, ee_se_regimes, evaluate_point

cfg = SystemConfig(K=8, M_t=64, N=16, rho_d=1.0)
pm = PowerModel()
print(f"Q1 = {pm.q1 * 1e3:.1f} mW, Q2 = {pm.q2 * 1e3:.1f} mW per antenna")

print("\n  N      SE     EE [Mbit/J]")
for n in (8, 10, 12, 16, 24, 32, 48, 64):
    p = evaluate_point(cfg, pm, n=n)
    print(f"{n:3d} {p.se:7.3f} {p.ee / 1e6:10.2f}")

r = ee_se_regimes(cfg, pm, se_grid=4000)
print(f"\nEE peaks at SE = {r.se_peak:.2f} bit/s/Hz (rho_d = {r.rho_peak:.3f} W),"
      f" {r.ee_peak / 1e6:.1f} Mbit/J")
for se in np.linspace(r.se_min, r.se_max, 8):
    i = int(np.argmin(np.abs(r.se - se)))
    print(f"  SE {r.se[i]:6.2f} -> EE {r.ee[i] / 1e6:7.2f} Mbit/J")
