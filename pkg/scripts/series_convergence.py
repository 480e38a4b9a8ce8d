"""How many terms the adaptive series need as the label moves away from the origin.

Emits CSV: radius, genfun terms and error, Iwata terms and error.

    python3 scripts/series_convergence.py --beta 1 --m 2 --xi 0.5 > conv.csv
"""

import argparse
import csv
import sys

import numpy as np

from landau_cs.coherent import GenFunParams, genfun_lhs, genfun_rhs, iwata_state, perelomov_state
from landau_cs.landau import LandauParams, PlaneLabel
from landau_cs.series import TruncationPolicy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", type=float, default=1.0)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--xi", type=float, default=0.5)
    ap.add_argument("--rmax", type=float, default=8.0)
    ap.add_argument("--steps", type=int, default=33)
    ap.add_argument("--angle", type=float, default=0.6, help="polar angle of the label, radians")
    args = ap.parse_args()

    pol = TruncationPolicy.from_env()
    p = LandauParams(args.beta, args.m)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["radius", "genfun_terms", "genfun_err", "iwata_terms", "iwata_err"])
    for r in np.linspace(0.0, args.rmax, args.steps):
        x, y = r * np.cos(args.angle), r * np.sin(args.angle)
        g = GenFunParams(args.beta, args.m, x, y, args.xi)
        gl = genfun_lhs(g, pol)
        rhs = genfun_rhs(g)
        label = PlaneLabel(x, y)
        iw = iwata_state(p, label, args.xi, pol)
        ref = perelomov_state(p, label, args.xi)
        w.writerow([
            f"{r:.6g}",
            gl.terms_used,
            f"{abs(gl.value - rhs) / max(1.0, abs(rhs)):.3e}",
            iw.terms_used,
            f"{abs(iw.value - ref):.3e}",
        ])


if __name__ == "__main__":
    main()
