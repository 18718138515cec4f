"""Command line entry point: ``pcurves <command> ...``; every command prints JSON."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import stratdim
from .constructs import Z4FamilyParams, fiber_direct_prank, fiber_product, z4_family
from .curves import CurveError, make_hyperelliptic
from .explorer import (
    EXIT_EXHAUSTED,
    EXIT_INVALID,
    EXIT_OK,
    ConfigError,
    SearchConfig,
    census,
    find_witness,
)
from .ffpoly import EnvelopeError, FieldSpec, parse_poly
from .hyperaut import classify_involutions, full_aut_order, reduced_aut, structure_tag
from .prank import prank


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve(args):
    spec = FieldSpec(args.p, args.n)
    return make_hyperelliptic(spec, parse_poly(args.f, spec))


def cmd_prank(args) -> int:
    C = _curve(args)
    r = prank(C, verify=True)
    _emit({"genus": r.genus, "p_rank": r.f, "method": r.method, "verified": r.verified})
    return EXIT_OK


def cmd_aut(args) -> int:
    C = _curve(args)
    G = reduced_aut(C)
    _emit({
        "reduced_order": G.order,
        "structure": structure_tag(G),
        "involution_classes": classify_involutions(C, G).tags(),
        "full_aut_order": full_aut_order(G),
    })
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = FieldSpec(args.p, args.n)
    if args.kind == "z4":
        lams = [spec.from_code(int(t)) for t in args.lambdas.split(",") if t.strip()]
        params = Z4FamilyParams(spec, tuple(lams))
        if params.genus != args.g:
            raise ConfigError(f"genus {args.g} needs {args.g - 1} lambdas, got {len(lams)}")
        C = z4_family(params)
        G = reduced_aut(C)
        _emit({
            "curve": C.to_record(),
            "p_rank": prank(C).f,
            "involution_classes": classify_involutions(C, G).tags(),
        })
        return EXIT_OK
    K = fiber_product(parse_poly(args.f1, spec), parse_poly(args.f2, spec), spec, args.mode)
    _emit({
        "quotients": [K.psi1.to_record(), K.psi2.to_record(), None if K.c3 is None else K.c3.to_record()],
        "genera": list(K.genera),
        "total_genus": K.total_genus,
        "quotient_pranks": list(K.pranks),
        "predicted_prank": K.predicted_prank,
        "direct_prank": fiber_direct_prank(K),
        "mode": K.mode,
    })
    return EXIT_OK


def _dim_result(res) -> dict:
    if isinstance(res, int):
        return {"dimension": res}
    return asdict(res)


def cmd_dims(args) -> int:
    F = args.formula
    if F == "audit":
        rep = stratdim.theorem_audit(args.g, args.f, args.p)
        if args.format == "table":
            sys.stdout.write(stratdim.format_audit_table(rep) + "\n")
        else:
            _emit(rep.as_dict())
        return EXIT_OK
    if F == "M":
        out = stratdim.dim_M(args.g, args.f)
    elif F == "H":
        out = stratdim.dim_H(args.g, args.f)
    elif F == "order-p":
        out = stratdim.dim_hyperell_order_p(args.g, args.p)
    elif F == "order-ell":
        out = stratdim.dim_hyperell_order_ell(args.g, args.ell, args.p)
    elif F == "H4iota":
        out = stratdim.dim_H4iota(args.g)
    elif F == "AS":
        out = stratdim.dim_AS(args.p, args.g, args.f)
    elif F == "local":
        out = stratdim.local_def_dim(args.p, args.j)
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(F)
    _emit(_dim_result(out))
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = SearchConfig(
        p=args.p,
        g=args.g,
        target_f=None if args.f == "any" else int(args.f),
        n_max=args.nmax,
        sample_budget=args.budget,
        master_seed=args.seed,
        aut_constraint=args.aut,
        parallelism=args.workers,
    )
    outcome = find_witness(cfg)
    _emit(json.loads(outcome.to_json(cfg)), args.out)
    return outcome.exit_code


def cmd_census(args) -> int:
    spec = FieldSpec(args.p, args.n)
    if not args.exhaustive and args.budget is None:
        raise ConfigError("census needs --exhaustive or --budget")
    c = census(args.g, spec, sample_budget=args.budget, exhaustive=args.exhaustive, seed=args.seed,
               with_aut=not args.no_aut, workers=args.workers)
    text = c.to_json() if (args.format == "json") else c.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcurves", description="p-ranks and automorphisms of curves over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    def field_args(sp, poly=True):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, default=1, help="extension degree of the base field")
        if poly:
            sp.add_argument("--f", required=True, help='polynomial, e.g. "x^5+1" or "[0,1]*x^3+x"')

    sp = sub.add_parser("prank", help="p-rank of y^2 = f(x), cross-checked by point counts")
    field_args(sp)
    sp.set_defaults(func=cmd_prank)

    sp = sub.add_parser("aut", help="reduced automorphism group of y^2 = f(x)")
    field_args(sp)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("construct", help="explicit families")
    csub = sp.add_subparsers(dest="kind", required=True)
    z = csub.add_parser("z4", help="y^2 = x(x^2-1) prod (x^2 - lambda_i^2)")
    field_args(z, poly=False)
    z.add_argument("--g", type=int, required=True)
    z.add_argument("--lambdas", required=True, help="comma separated element codes")
    z.set_defaults(func=cmd_construct)
    fb = csub.add_parser("fiber", help="Klein-four fibre product of two double covers")
    field_args(fb, poly=False)
    fb.add_argument("--f1", required=True)
    fb.add_argument("--f2", required=True)
    fb.add_argument("--mode", choices=["even", "odd", "t1"], default=None)
    fb.set_defaults(func=cmd_construct)

    sp = sub.add_parser("dims", help="stratum and locus dimensions")
    sp.add_argument("formula", choices=["M", "H", "order-p", "order-ell", "H4iota", "AS", "local", "audit"])
    sp.add_argument("--g", type=int)
    sp.add_argument("--f", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--j", type=int, help="ramification jump")
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("search", help="witness curve with given p-rank and automorphism constraint")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--f", default="any", help='target p-rank or "any"')
    sp.add_argument("--nmax", type=int, default=1)
    sp.add_argument("--budget", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--aut", default="trivial-reduced", help="trivial-reduced | z4 | contains-order-<l> | any")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("census", help="(p-rank, reduced group order) counts")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--g", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--budget", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-aut", action="store_true", help="skip automorphism groups")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_census)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CurveError, EnvelopeError, ValueError, TypeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
