"""The device as a nonreciprocal optical transistor.

Switching the pump on opens the forward channel from near zero to above
80 percent, so a weak pump gates a much stronger signal.  The gain
G = (P_in / P_p) (T12_on - T12_off) grows linearly with signal flux; this
script locates the unit- and hundredfold-gain thresholds for both regimes
and prints a small gain map over detuning.
"""

import numpy as np

from squeezering import PumpSpec, gain_map, mrs_params, nms_params, transistor_gain

for name, params in (("NMS", nms_params()), ("MRS", mrs_params())):
    pump = PumpSpec(g=1e-3, kappa_p=2 * params.kappa_a,
                    kappa_ex2_p=2 * params.kappa_ex2, omega_p=1.0)
    slope = transistor_gain(params, pump, 1.0)
    print(f"{name}: G per unit signal flux = {slope:.3e}")
    print(f"  G = 1   at |alpha_in|^2 = {1 / slope:.3e} kappa_a")
    print(f"  G = 100 at |alpha_in|^2 = {100 / slope:.3e} kappa_a")

    deltas = np.round(np.linspace(params.Delta_a - 0.4, params.Delta_a + 0.4, 5), 3)
    g = gain_map(params, pump, [1 / slope], deltas)
    print("  gain at the unit-gain flux versus detuning:")
    for d, row in zip(deltas, g):
        print(f"    Delta_a = {d:+.3f}: G = {row[0]:.3f}")
    print()
