"""Dimension audit of automorphism loci against the p-rank strata.

    python scripts/audit_table.py --g 3 8 --p 2 3 5 7
"""
import argparse
import json

from pcurves.stratdim import format_audit_table, theorem_audit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=int, nargs=2, default=[3, 8], metavar=("LO", "HI"))
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--full", action="store_true", help="print every case, not just the non-strict ones")
    ap.add_argument("--json", default=None, help="write every report to this file")
    args = ap.parse_args()

    reports = []
    for g in range(args.g[0], args.g[1] + 1):
        for f in range(g + 1):
            for p in args.p:
                rep = theorem_audit(g, f, p)
                reports.append(rep.as_dict())
                if args.full:
                    print(format_audit_table(rep))
                    print()
                    continue
                for c in rep.non_strict():
                    note = f"  [{c.resolved_by}]" if c.resolved_by else ""
                    print(f"g={g} f={f} p={p} {c.space} ell={c.ell}: bound {c.max_bound} vs {c.stratum_dim} "
                          f"-> {c.verdict}{note}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
