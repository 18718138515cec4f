"""Find and re-verify witness curves with trivial reduced automorphism group.

    python scripts/witness_table.py --p 3 5 --g 3 --out-dir runs/witnesses
"""
import argparse
import os

from pcurves.explorer import SearchConfig, find_witness, verify_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--g", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--budget", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out-dir", default=None)
    args = ap.parse_args()

    print(f"{'p':>3} {'f':>3} {'field':>8} {'index':>8}  verified  curve")
    for p in args.p:
        for f in range(args.g + 1):
            cfg = SearchConfig(p=p, g=args.g, target_f=f, n_max=args.nmax,
                               sample_budget=args.budget, master_seed=args.seed)
            out = find_witness(cfg)
            if args.out_dir:
                os.makedirs(args.out_dir, exist_ok=True)
                with open(os.path.join(args.out_dir, f"witness_p{p}_g{args.g}_f{f}.json"), "w") as fh:
                    fh.write(out.to_json(cfg))
            w = out.witness
            if w is None:
                print(f"{p:>3} {f:>3} {'-':>8} {'-':>8}  exhausted (inconclusive)")
                continue
            v = verify_witness(w)
            field = f"F_{p}^{w.n}"
            print(f"{p:>3} {f:>3} {field:>8} {w.index:>8}  {str(v.ok):<8}  f = {w.curve['f']}")


if __name__ == "__main__":
    main()
