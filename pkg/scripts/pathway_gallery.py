"""Tabulate every named special case of the kernel family.

Emits one CSV per case into the chosen directory (default gallery/),
each with x, density, cdf columns over a case-appropriate grid, plus a
summary line with the normalizing constant per case.
"""
import argparse
from pathlib import Path

import numpy as np

from pathway_entropy import (
    SPECIAL_CASE_NAMES,
    cdf,
    density,
    normalizing_constant,
    special_case,
    support,
)


def grid_for(params) -> np.ndarray:
    interval = support(params)
    if np.isfinite(interval.upper):
        return np.linspace(0.0, interval.upper, 101)
    # cover the bulk of an unbounded case: walk out until the cdf saturates
    upper = 1.0
    while cdf(params, upper) < 0.999 and upper < 1e6:
        upper *= 2.0
    return np.linspace(0.0, upper, 101)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="gallery", help="output directory")
    args = parser.parse_args()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    for name in SPECIAL_CASE_NAMES:
        params = special_case(name)
        constant = normalizing_constant(params)
        xs = grid_for(params)
        dens = density(params, xs)
        cums = np.array([cdf(params, x) for x in xs])
        path = out_dir / f"{name}.csv"
        rows = "\n".join("%.17g,%.17g,%.17g" % (x, d, c)
                         for x, d, c in zip(xs, dens, cums))
        path.write_text("x,density,cdf\n" + rows + "\n")
        print(f"{name:24s} c = {constant:.12g}   -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
