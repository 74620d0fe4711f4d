#!/usr/bin/env python3
"""Grid-refinement study of the natural-equation residuals.

Sweeps the step size on the two closed-form example surfaces and prints the
maximum residual of each equation together with the observed convergence
order between consecutive steps (central stencils should give order 2).
"""

import argparse
import math

from minlorentz.nullcurve import enneper_curve
from minlorentz.pdeverify import verify_surface
from minlorentz.surface import MinimalSurface

SURFACES = {
    "m1": (lambda: MinimalSurface.make(enneper_curve(2, 1, 1, (0.1, 1.5)),
                                       enneper_curve(1, 2, 1, (-0.6, 0.6))),
           (0.45, 0.55, 0.45, 0.55)),
    "m3": (lambda: MinimalSurface.make(enneper_curve(2, 1, 1, (0.2, 2.9)),
                                       enneper_curve(1, -2, 1, (0.3, 1.8))),
           (0.95, 1.05, -0.05, 0.05)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", default="4e-3,2e-3,1e-3,5e-4",
                    help="comma-separated h values, coarse to fine")
    args = ap.parse_args()
    hs = [float(x) for x in args.steps.split(",")]

    for name, (make, region) in SURFACES.items():
        S = make()
        print(f"\n{name}  region={region}")
        print(f"{'h':>10} {'r1_max':>12} {'r2_max':>12} "
              f"{'order(r1)':>10} {'order(r2)':>10}")
        prev = None
        for h in hs:
            _, rep = verify_surface(S, region, h, tol=math.inf)
            if prev is None:
                o1 = o2 = float("nan")
            else:
                ph, p1, p2 = prev
                o1 = math.log(p1 / rep.r1_max) / math.log(ph / h)
                o2 = math.log(p2 / rep.r2_max) / math.log(ph / h)
            print(f"{h:10.1e} {rep.r1_max:12.4e} {rep.r2_max:12.4e} "
                  f"{o1:10.3f} {o2:10.3f}")
            prev = (h, rep.r1_max, rep.r2_max)


if __name__ == "__main__":
    main()
