"""Laboratory pump budget for a thin-film lithium niobate implementation.

The squeezing strength comes from the mean field of a second-harmonic pump
mode: Omega_p = 2 g |<c>_ss|.  With chip-scale numbers (g/2pi = 2.35 MHz,
signal linewidth kappa_a/2pi = 2.42 GHz, pump-mode rates twice the signal
rates, resonant pump at 386.8 THz), milliwatt powers reach the operating
strengths used throughout the other demos.
"""

from squeezering import ln_chip_pump, pump_power, pump_strength
from squeezering.device import LN_KAPPA_A

print("power needed for a given squeezing strength (resonant pump):")
print(f"{'Omega_p/kappa_a':>16} {'P_p (mW)':>10}")
for units in (2.0, 5.0, 10.0, 13.0, 16.0):
    watts = pump_power(units * LN_KAPPA_A, ln_chip_pump())
    print(f"{units:16.1f} {watts * 1e3:10.2f}")

print("\nstrength produced by a given power (mean-field mapping):")
print(f"{'P_p (mW)':>9} {'Omega_p/kappa_a':>16} {'theta_p':>8}")
for mw in (1.0, 5.0, 16.6, 28.0, 50.0):
    omega, theta = pump_strength(ln_chip_pump(P_p=mw * 1e-3))
    print(f"{mw:9.1f} {omega / LN_KAPPA_A:16.3f} {theta:8.3f}")

spec = ln_chip_pump(P_p=16.6e-3)
omega, _ = pump_strength(spec)
print(f"\nround trip: 16.6 mW -> Omega_p = {omega / LN_KAPPA_A:.4f} kappa_a -> "
      f"{pump_power(omega, spec) * 1e3:.2f} mW")
