"""Frequency of low p-rank genus-2 curves against q, and the fitted codimension.

    python scripts/codim_slope.py --p 3 --nmax 3 --samples 100000
"""
import argparse
import os

from pcurves.explorer import census, slope_fit
from pcurves.ffpoly import FieldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--samples", type=int, default=10**5)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out-dir", default=None)
    args = ap.parse_args()

    cs = []
    for n in range(1, args.nmax + 1):
        spec = FieldSpec(args.p, n)
        if spec.q ** (2 * args.g + 2) <= 10**8:
            c = census(args.g, spec, exhaustive=True, with_aut=False)
        else:
            c = census(args.g, spec, sample_budget=args.samples, seed=args.seed, with_aut=False)
        cs.append(c)
        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            with open(os.path.join(args.out_dir, f"census_g{args.g}_q{spec.q}.csv"), "w") as fh:
                fh.write(c.to_csv())
        freqs = "  ".join(f"f<={f}: {c.prank_at_most(f) / c.total:.5f}" for f in range(args.g))
        print(f"q={spec.q:<6} {c.mode:<10} N={c.total:<8} {freqs}")
    for f in range(args.g):
        try:
            fit = slope_fit(cs, f)
        except ValueError as e:
            print(f"f={f}: {e}")
            continue
        print(f"f={f}: codimension {fit.codimension:.3f} (expected {args.g - f}), rms residual {fit.residual:.4f}")


if __name__ == "__main__":
    main()
