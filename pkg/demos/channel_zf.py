"""One Rayleigh channel: ZF precoding, norm bounds and antenna selection."""

import numpy as np

from mimo_tradeoff import (generate_channel, instantaneous_capacity, norm_inverse_bounds,
                           select_antennas, selected_capacity, verify_received_signal,
                           zf_precoder)

h = generate_channel(42, 4, 32)
pre = zf_precoder(h)
print("max |HV - I| =", np.max(np.abs(h.entries @ pre.entries - np.eye(4))))

b = norm_inverse_bounds(h)
print(f"1/||V||^2: exact {b.exact:.3f} <= harmonic {b.harmonic:.3f} <= bound {b.bound:.3f}")

sel = select_antennas(h, 8)
print("strongest 8 antennas:", sel.indices.tolist())
print(f"capacity, all 32 antennas: {instantaneous_capacity(h, 1.0):.3f} bit/s/Hz")
print(f"capacity, ZF on selected 8: {instantaneous_capacity(h, 1.0, n=8):.3f} bit/s/Hz")
print(f"gain-sum capacity, selected 8: {selected_capacity(h, 8, 1.0):.3f} bit/s/Hz")

# interference is nulled: each user receives only its own symbol
x = np.array([1, -1, 1j, -1j])
y = verify_received_signal(h, 1.0, x, np.zeros(4), n=8)
print("received / sent:", np.round(y / x, 6))
