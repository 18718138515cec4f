"""Witness search and p-rank / automorphism censuses over finite fields.

Candidates are generated in fixed-size blocks.  Block b of extension degree
n draws from ``SeedSequence([seed, n, b])`` (or walks the natural order of
the whole space when it fits in the budget), so results depend only on the
configuration, never on how many worker processes evaluate the blocks.
"""
from __future__ import annotations

import csv
import io
import json
import math
import multiprocessing
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import config
from .curves import HyperellipticCurve, curve_from_record, make_hyperelliptic
from .ffpoly import EnvelopeError, FieldSpec, Poly
from .hyperaut import classify_involutions, has_order_ell, reduced_aut, structure_tag
from .prank import prank, zeta_prank
from .tables import MAX_TABLE_SIZE

BLOCK = 512
MAX_REJECTIONS = 10_000
EXHAUSTIVE_CENSUS_LIMIT = 10**8

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_EXHAUSTED = 3


class ConfigError(ValueError):
    """Invalid search or census configuration."""


class BudgetExhausted(RuntimeError):
    """Rejection sampling or search ran out of budget."""


# ---------------------------------------------------------------------------
# candidate streams


def random_curve(g: int, spec: FieldSpec, rng: np.random.Generator) -> HyperellipticCurve:
    """Uniform monic squarefree y^2 = f, deg f = 2g+1, by rejection."""
    if spec.p == 2:
        raise ConfigError("characteristic 2 needs the Artin-Schreier model")
    if g < 1:
        raise ConfigError("genus must be positive")
    for _ in range(MAX_REJECTIONS):
        codes = [int(c) for c in rng.integers(0, spec.q, size=2 * g + 1)] + [1]
        f = Poly.from_codes(spec, codes)
        if f.flint.is_squarefree():
            return make_hyperelliptic(spec, f)
    raise BudgetExhausted("rejection sampling found no squarefree model")


def _block_rng(seed: int, n: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, n, block]))


def _natural_polys(spec: FieldSpec, deg: int, start: int, stop: int, depressed: bool = False):
    """Monic polynomials of degree deg with index in [start, stop) in natural order.

    Index k encodes the lower coefficients as base-q digits (constant term
    least significant).  With depressed, the x^(deg-1) coefficient is 0.
    """
    q = spec.q
    free = deg - 1 if depressed else deg
    for k in range(start, stop):
        digits = []
        r = k
        for _ in range(free):
            r, d = divmod(r, q)
            digits.append(d)
        if depressed:
            digits.append(0)
        yield Poly.from_codes(spec, digits + [1])


def _block_candidates(spec: FieldSpec, g: int, seed: int, n: int, block: int, exhaustive: bool,
                      total: int, depressed: bool = False):
    """Squarefree curves of block ``block``; yields (index, curve)."""
    start = block * BLOCK
    stop = min(start + BLOCK, total)
    if exhaustive:
        for k, f in zip(range(start, stop), _natural_polys(spec, 2 * g + 1, start, stop, depressed)):
            if f.flint.is_squarefree():
                yield k, make_hyperelliptic(spec, f)
        return
    rng = _block_rng(seed, n, block)
    for k in range(start, stop):
        yield k, random_curve(g, spec, rng)


def _map_blocks(fn, args: list, workers: int):
    """Ordered map, optionally over a process pool."""
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as ex:
        return list(ex.map(fn, args))


# ---------------------------------------------------------------------------
# witness search


@dataclass
class SearchConfig:
    p: int
    g: int
    target_f: Optional[int]  # None means any p-rank
    n_max: int = 1
    sample_budget: int = 10_000  # candidates per extension degree
    master_seed: int = 0
    aut_constraint: str = "trivial-reduced"  # trivial-reduced | z4 | contains-order-<l> | any
    parallelism: Optional[int] = None  # None reads PCURVES_WORKERS

    def validate(self) -> None:
        from .ffpoly import is_prime

        if not is_prime(self.p) or self.p == 2:
            raise ConfigError("p must be an odd prime")
        if self.g < 2:
            raise ConfigError("genus must be at least 2")
        if self.target_f is not None and not 0 <= self.target_f <= self.g:
            raise ConfigError(f"target p-rank {self.target_f} outside [0, {self.g}]")
        if self.n_max < 1 or self.sample_budget < 1:
            raise ConfigError("n_max and sample_budget must be positive")
        if self.master_seed < 0 or self.master_seed >= 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        _aut_check(self.aut_constraint)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("parallelism")
        return d


def _aut_check(constraint: str):
    """Predicate (curve, group) -> bool for an aut constraint string."""
    if constraint == "any":
        return lambda C, G: True
    if constraint == "trivial-reduced":
        return lambda C, G: G.order == 1
    if constraint == "z4":
        return lambda C, G: "z4" in classify_involutions(C, G).tags()
    m = re.fullmatch(r"contains-order-(\d+)", constraint)
    if m and int(m.group(1)) >= 2:
        ell = int(m.group(1))
        return lambda C, G: has_order_ell(C, ell, G)
    raise ConfigError(f"unsupported aut constraint {constraint!r}")


@dataclass
class WitnessRecord:
    curve: dict
    p_rank: int
    reduced_aut_order: int
    structure: str
    certificate: dict
    n: int
    index: int
    examined: int
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "WitnessRecord":
        return cls(**json.loads(text))


@dataclass
class SearchOutcome:
    witness: Optional[WitnessRecord]
    examined: dict  # n -> candidates drawn
    skipped: dict  # n -> reason

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.witness else EXIT_EXHAUSTED

    def to_json(self, cfg: SearchConfig) -> str:
        out = {
            "config": cfg.echo(),
            "status": "found" if self.witness else "exhausted",
            "examined": {str(k): v for k, v in self.examined.items()},
            "skipped": {str(k): v for k, v in self.skipped.items()},
            "witness": asdict(self.witness) if self.witness else None,
        }
        return json.dumps(out, sort_keys=True, indent=2) + "\n"


def _accepts(C: HyperellipticCurve, cfg_t):
    target_f, aut_constraint = cfg_t
    f = prank(C).f
    if target_f is not None and f != target_f:
        return None
    G = reduced_aut(C)
    if not _aut_check(aut_constraint)(C, G):
        return None
    return f, G


def _search_block(args):
    spec, g, seed, n, block, exhaustive, total, cfg_t = args
    for k, C in _block_candidates(spec, g, seed, n, block, exhaustive, total):
        hit = _accepts(C, cfg_t)
        if hit is not None:
            f, G = hit
            return (k, C.to_record(), f, G.order, structure_tag(G))
    return None


def find_witness(cfg: SearchConfig) -> SearchOutcome:
    """First candidate (by index) with the target p-rank and trivial reduced group.

    Extension degrees n = 1..n_max are tried in turn.  A degree whose
    curves are beyond the independent point-count check is skipped, since
    its witnesses could not be re-verified.
    """
    cfg.validate()
    workers = cfg.parallelism or config.worker_count()
    examined, skipped = {}, {}
    cfg_t = (cfg.target_f, cfg.aut_constraint)
    for n in range(1, cfg.n_max + 1):
        spec = FieldSpec(cfg.p, n)
        if spec.q**cfg.g > MAX_TABLE_SIZE:
            skipped[n] = "beyond the point-count verification envelope"
            continue
        space = spec.q ** (2 * cfg.g + 1)
        exhaustive = space <= cfg.sample_budget
        total = space if exhaustive else cfg.sample_budget
        nblocks = -(-total // BLOCK)
        hit = None
        b = 0
        while b < nblocks and hit is None:
            batch = list(range(b, min(b + max(workers, 1), nblocks)))
            args = [(spec, cfg.g, cfg.master_seed, n, blk, exhaustive, total, cfg_t) for blk in batch]
            for res in _map_blocks(_search_block, args, workers):
                if res is not None:
                    hit = res
                    break
            b = batch[-1] + 1
        if hit is None:
            examined[n] = total
            continue
        k, rec, f, order, tag = hit
        examined[n] = k + 1
        w = WitnessRecord(
            curve=rec,
            p_rank=f,
            reduced_aut_order=order,
            structure=tag,
            certificate={"p_rank": "cartier", "aut": "branch-locus stabilizer over the splitting field",
                         "mode": "exhaustive" if exhaustive else "sampled"},
            n=n,
            index=k,
            examined=sum(examined.values()),
            config=cfg.echo(),
        )
        return SearchOutcome(w, examined, skipped)
    return SearchOutcome(None, examined, skipped)


@dataclass
class Verification:
    ok: bool
    p_rank_cartier: int
    p_rank_zeta: Optional[int]
    reduced_aut_order: int
    reasons: list


def verify_witness(w: WitnessRecord) -> Verification:
    """Recompute both invariants from the stored curve record alone."""
    C = curve_from_record(w.curve)
    reasons = []
    pc = prank(C).f
    try:
        pz = zeta_prank(C).f
    except EnvelopeError:
        pz = None
        reasons.append("zeta oracle outside its envelope")
    G = reduced_aut(C)
    if pc != w.p_rank:
        reasons.append(f"Cartier p-rank {pc} != stored {w.p_rank}")
    if pz is not None and pz != w.p_rank:
        reasons.append(f"zeta p-rank {pz} != stored {w.p_rank}")
    if G.order != w.reduced_aut_order:
        reasons.append(f"reduced group order {G.order} != stored {w.reduced_aut_order}")
    if structure_tag(G) != w.structure:
        reasons.append("structure tag changed")
    ok = not reasons
    return Verification(ok, pc, pz, G.order, reasons)


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusRow:
    q: int
    g: int
    p_rank: int
    aut_order: Optional[int]  # None when automorphisms were not computed
    count: int
    total: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.count, self.total)


@dataclass
class Census:
    q: int
    g: int
    rows: list
    total: int
    mode: str  # exhaustive | sampled
    config: dict

    def prank_at_most(self, f: int) -> int:
        return sum(r.count for r in self.rows if r.p_rank <= f)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# config: " + json.dumps(self.config, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "g", "p_rank", "aut_order", "count", "frequency_num", "frequency_den"])
        for r in self.rows:
            fr = r.frequency
            w.writerow([r.q, r.g, r.p_rank, "" if r.aut_order is None else r.aut_order, r.count,
                        fr.numerator, fr.denominator])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = []
        for r in self.rows:
            fr = r.frequency
            rows.append({"q": r.q, "g": r.g, "p_rank": r.p_rank, "aut_order": r.aut_order,
                         "count": r.count, "frequency_num": fr.numerator, "frequency_den": fr.denominator})
        return json.dumps({"config": self.config, "total": self.total, "mode": self.mode, "rows": rows},
                          sort_keys=True, indent=2) + "\n"


def _census_block(args):
    spec, g, seed, block, exhaustive, total, with_aut, depressed = args
    cells = Counter()
    for _, C in _block_candidates(spec, g, seed, 0, block, exhaustive, total, depressed):
        f = prank(C).f
        a = reduced_aut(C).order if with_aut else None
        cells[(f, a)] += 1
    return sorted(cells.items(), key=lambda t: (t[0][0], -1 if t[0][1] is None else t[0][1]))


def census(g: int, spec: FieldSpec, sample_budget: Optional[int] = None, exhaustive: bool = False,
           seed: int = 0, with_aut: bool = True, workers: Optional[int] = None) -> Census:
    """Exact counts of (p-rank, reduced group order) over monic squarefree models.

    Exhaustive mode walks all monic f of degree 2g+1.  When p does not
    divide 2g+1 a translation removes the x^(2g) term without changing
    the curve, so only those depressed models are walked, each weighted q.
    """
    if spec.p == 2:
        raise ConfigError("characteristic 2 needs the Artin-Schreier model")
    workers = workers or config.worker_count()
    cfg = {"q": spec.q, "p": spec.p, "n": spec.n, "g": g, "seed": seed, "with_aut": with_aut,
           "mode": "exhaustive" if exhaustive else "sampled", "budget": sample_budget}
    if exhaustive:
        if spec.q ** (2 * g + 2) > EXHAUSTIVE_CENSUS_LIMIT:
            raise EnvelopeError("exhaustive census limited to q^(2g+2) <= 10^8")
        depressed = (2 * g + 1) % spec.p != 0
        total = spec.q ** (2 * g if depressed else 2 * g + 1)
        weight = spec.q if depressed else 1
    else:
        if sample_budget is None or sample_budget < 0:
            raise ConfigError("sampled census needs a nonnegative budget")
        depressed, total, weight = False, sample_budget, 1
    nblocks = -(-total // BLOCK)
    args = [(spec, g, seed, b, exhaustive, total, with_aut, depressed) for b in range(nblocks)]
    cells = Counter()
    for part in _map_blocks(_census_block, args, workers):
        for key, c in part:
            cells[key] += c * weight
    n_models = sum(cells.values())
    rows = [CensusRow(spec.q, g, f, a, c, n_models)
            for (f, a), c in sorted(cells.items(), key=lambda t: (t[0][0], -1 if t[0][1] is None else t[0][1]))]
    return Census(spec.q, g, rows, n_models, cfg["mode"], cfg)


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    codimension: float
    residual: float
    points: tuple  # ((q, frequency), ...)


def slope_fit(censuses: Sequence[Census], f: int) -> SlopeFit:
    """Least-squares slope of log frequency(p-rank <= f) against log q."""
    qs = sorted({c.q for c in censuses})
    if len(qs) < 2:
        raise ValueError("need censuses over at least two field sizes")
    xs, ys, pts = [], [], []
    for c in sorted(censuses, key=lambda c: c.q):
        k = c.prank_at_most(f)
        if k == 0 or c.total == 0:
            raise ValueError(f"no curves of p-rank <= {f} over F_{c.q}; only a lower bound on the codimension")
        fr = k / c.total
        xs.append(math.log(c.q))
        ys.append(math.log(fr))
        pts.append((c.q, fr))
    slope, icept = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((np.polyval([slope, icept], xs) - ys) ** 2)))
    return SlopeFit(float(slope), float(-slope), resid, tuple(pts))
