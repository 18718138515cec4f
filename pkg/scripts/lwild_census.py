"""Count reduced automorphisms of order p on random hyperelliptic curves.

When p divides neither 2g+1 nor 2g+2 no curve should have one.

    python scripts/lwild_census.py --p 3 --n 3 --g 3 --samples 10000
"""
import argparse

from pcurves.explorer import census
from pcurves.ffpoly import FieldSpec
from pcurves.stratdim import dim_hyperell_order_p


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--g", type=int, default=3)
    ap.add_argument("--samples", type=int, default=10**4)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    spec = FieldSpec(args.p, args.n)
    c = census(args.g, spec, sample_budget=args.samples, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(c.to_csv())
    orders = {}
    for r in c.rows:
        orders[r.aut_order] = orders.get(r.aut_order, 0) + r.count
    print("reduced group order histogram:", dict(sorted(orders.items())))
    hits = sum(k for o, k in orders.items() if o % args.p == 0)
    r = dim_hyperell_order_p(args.g, args.p)
    locus = f"empty ({r.empty_reason})" if r.empty else f"dimension {r.dimension}"
    print(f"order-{args.p} locus for g={args.g}: {locus}; curves with an order-{args.p} element: {hits}/{c.total}")


if __name__ == "__main__":
    main()
