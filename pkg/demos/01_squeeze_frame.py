"""How the pump reshapes the device: squeezing transformation quantities.

The pump ratio beta = Omega_p / Delta_p_b sets the squeezing parameter
r_p = ln((1+beta)/(1-beta))/4.  As beta -> 1 the inter-resonator coupling
J_s = cosh(r_p) J grows exponentially while the pump-frame detuning of the
squeezed mode collapses as Delta_p_b sqrt(1-beta^2).  This script tabulates
the transformation across beta and shows the rotating-wave margin that
bounds the model's validity.
"""

import numpy as np

from squeezering import nms_params, squeeze_frame

p = nms_params()
print(f"device: J = {p.J} kappa_a, Delta_p_b = {p.Delta_p_b} kappa_a\n")
print(f"{'beta':>6} {'r_p':>8} {'J_s':>8} {'Delta_p_bs':>11} {'N_p':>8} {'rwa margin':>11}")
for beta in (0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.9708738, 0.99):
    f = squeeze_frame(p.replace(Omega_p=beta * p.Delta_p_b))
    flag = "  <- RWA flag" if f.rwa_flag else ""
    print(f"{f.beta:6.3f} {f.r_p:8.4f} {f.J_s:8.4f} {f.Delta_p_bs:11.4f} "
          f"{f.N_p:8.4f} {f.rwa_margin:11.2f}{flag}")

f_op = squeeze_frame(p)
print(f"\noperating point (Omega_p = {p.Omega_p}):")
print(f"  r_p = {f_op.r_p:.4f}, J_s = {f_op.J_s:.4f} kappa_a "
      f"({f_op.J_s / p.J:.2f}x bare), Delta_b_s = {f_op.Delta_b_s:.4f} kappa_a")
print(f"  pump-noise moments: N_p = {f_op.N_p:.4f}, |M_p| = {abs(f_op.M_p):.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    betas = np.linspace(0, 0.995, 300)
    frames = [squeeze_frame(p.replace(Omega_p=b * p.Delta_p_b)) for b in betas]
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.2))
    axes[0].plot(betas, [f.r_p for f in frames])
    axes[0].set(xlabel="beta", ylabel="r_p")
    axes[1].plot(betas, [f.Delta_p_bs for f in frames])
    axes[1].set(xlabel="beta", ylabel="squeezed-mode pump detuning")
    axes[2].semilogy([f.r_p for f in frames], [f.J_s for f in frames])
    axes[2].set(xlabel="r_p", ylabel="J_s (log)")
    fig.tight_layout()
    fig.savefig("squeeze_frame.png", dpi=150)
    print("\nwrote squeeze_frame.png")
except ImportError:
    pass
