"""Residual sweeps for the kernel's derivative identity.

Covers every reduction with parameters satisfying its gate, reports the
worst central-difference residual over each sweep window, then shows the
second-order step convergence on the general case.
"""
import numpy as np

from pathway_entropy import OdeCase, OdeReduction, PathwayParams, residual_sweep

CASES = [
    ("general, power tail",
     OdeCase(PathwayParams(alpha=1.5, gamma=2.0, delta=1.5, s=0.7,
                           beta_exp=1.2))),
    ("general, finite support",
     OdeCase(PathwayParams(alpha=0.5, gamma=1.8, delta=2.0, s=1.3,
                           beta_exp=0.9))),
    ("reduced_beta  (delta tied to gamma, alpha)",
     OdeCase(PathwayParams(alpha=1.5, gamma=3.0, delta=0.5, s=1.0,
                           beta_exp=2.0),
             OdeReduction.REDUCED_BETA)),
    ("reduced_beta1 (unit exponent)",
     OdeCase(PathwayParams(alpha=1.5, gamma=3.0, delta=1.0, s=1.0),
             OdeReduction.REDUCED_BETA1)),
    ("tsallis_eta   (linear argument)",
     OdeCase(PathwayParams(alpha=1.5, gamma=1.0, delta=1.0, s=1.0,
                           beta_exp=2.0),
             OdeReduction.TSALLIS_ETA)),
    ("tsallis_alpha (plain q-exponential)",
     OdeCase(PathwayParams(alpha=2.0, gamma=1.0, delta=1.0, s=1.0),
             OdeReduction.TSALLIS_ALPHA)),
]


def main() -> int:
    for label, case in CASES:
        report = residual_sweep(case, n_points=41, h=1e-5)
        print(f"{label:44s} max residual {report.max_residual:.3e} "
              f"at x = {report.argmax:.4f}")

    print()
    print("step convergence, general power-tail case:")
    case = CASES[0][1]
    prev = None
    for h in (1e-3, 1e-4, 1e-5):
        report = residual_sweep(case, n_points=41, h=h)
        ratio = "" if prev is None else f"   ratio {prev / report.max_residual:8.1f}"
        print(f"    h = {h:.0e}   max residual {report.max_residual:.6e}{ratio}")
        prev = report.max_residual
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
