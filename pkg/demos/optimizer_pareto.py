"""Energy-efficient operating point and the SE-EE Pareto front."""

from mimo_tradeoff import (PowerModel, SystemConfig, joint_optimize, optimal_antennas,
                           optimal_power, pareto_front)

pm = PowerModel()
cfg = SystemConfig(K=8, M_t=64, N=16, rho_d=1.0)

opt = optimal_power(cfg, pm)
print(f"N=16: best rho_d = {opt.rho_star:.4f} W, EE {opt.ee_star / 1e6:.2f} Mbit/J"
      f" (boundary: {opt.boundary})")
n, ee = optimal_antennas(cfg, pm, 1.0)
print(f"rho_d=1 W: best N = {n}, EE {ee / 1e6:.2f} Mbit/J")

best = joint_optimize(cfg, pm)
print(f"joint: N={best.n}, rho_d={best.rho_d:.4f} W, SE {best.se:.2f}, EE {best.ee / 1e6:.2f} Mbit/J")

front = pareto_front(cfg, pm, rho_grid=200)
print(f"\nPareto front has {len(front)} points; a few of them:")
step = max(1, len(front) // 8)
for p in front.points[::step]:
    print(f"  N={p.n:3d} rho_d={p.rho_d:7.3f} W  SE {p.se:6.2f}  EE {p.ee / 1e6:7.2f} Mbit/J")

# zero circuit power removes the penalty for more antennas
print("\nno circuit power: best N =", optimal_antennas(cfg, PowerModel.zero(), 1.0)[0])
