"""Integer dimension formulas for p-rank strata and automorphism loci,
and an audit that replays the dimension comparisons case by case."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Union


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def primes_upto(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if _is_prime(k)]


def _check_gf(g: int, f: int) -> None:
    if g < 2:
        raise ValueError(f"genus {g} < 2")
    if not 0 <= f <= g:
        raise ValueError(f"p-rank {f} outside [0, {g}]")


def dim_M(g: int, f: int) -> int:
    """Dimension of every component of the p-rank <= f stratum of M_g."""
    _check_gf(g, f)
    return 2 * g - 3 + f


def dim_H(g: int, f: int) -> int:
    """Same for the hyperelliptic locus H_g."""
    _check_gf(g, f)
    return g - 1 + f


@dataclass(frozen=True)
class StratumDimResult:
    dimension: Optional[int]  # None means empty
    formula_id: str
    side_data: dict = field(default_factory=dict)
    empty_reason: Optional[str] = None
    exact: bool = True  # False when the value is only an upper bound

    @property
    def empty(self) -> bool:
        return self.dimension is None


@dataclass(frozen=True)
class CoverDatum:
    """Numerical data of a Z/ell cover C -> Y (wild when ell == p)."""

    ell: int
    p: int
    g: int
    g_Y: int
    f_Y: int = 0
    jumps: tuple = ()
    branch_count: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(self.jumps))
        if not 0 <= self.f_Y <= self.g_Y:
            raise ValueError("need 0 <= f_Y <= g_Y")
        if self.wild:
            for j in self.jumps:
                if j < 1 or j % self.p == 0:
                    raise ValueError(f"jump {j} must be positive and prime to p")
            if self.branch_count is None:
                object.__setattr__(self, "branch_count", len(self.jumps))
            elif self.branch_count != len(self.jumps):
                raise ValueError("branch_count disagrees with the jump list")
        elif self.branch_count is None:
            num = 2 * (self.g - self.ell * self.g_Y)
            if num % (self.ell - 1):
                raise ValueError("|B| = 2(g - ell g_Y)/(ell - 1) + 2 is not an integer")
            b = num // (self.ell - 1) + 2
            if b < 0:
                raise ValueError("negative branch count")
            object.__setattr__(self, "branch_count", b)

    @property
    def wild(self) -> bool:
        return self.ell == self.p

    def as_dict(self) -> dict:
        d = asdict(self)
        d["jumps"] = list(self.jumps)
        return d


def lemmadim_bound(d: CoverDatum) -> int:
    """Upper bound on the dimension of a locus of Z/ell covers with datum d."""
    num = 2 * (d.g - d.g_Y)
    if num % (d.ell - 1):
        raise ValueError("2(g - g_Y) is not divisible by ell - 1: no such cover")
    bound = num // (d.ell - 1) + d.f_Y - 1
    if d.wild:
        bound -= sum(j // d.p for j in d.jumps)
    return bound


def local_def_dim(p: int, j: int) -> int:
    """Dimension of local deformations of a Z/p germ with jump j."""
    if j < 1 or j % p == 0:
        raise ValueError(f"jump {j} must be positive and prime to {p}")
    return j - j // p


def dim_hyperell_order_p(g: int, p: int) -> StratumDimResult:
    """Hyperelliptic curves with an automorphism of order p = char."""
    if p < 3 or not _is_prime(p):
        raise ValueError("needs an odd prime p")
    if g < 2:
        raise ValueError("genus must be at least 2")
    if (2 * g + 2) % p and (2 * g + 1) % p:
        return StratumDimResult(None, "order-p", {"g": g, "p": p}, "divisibility")
    d = (2 * g + 2) // p - 2
    if d < 0:
        return StratumDimResult(None, "order-p", {"g": g, "p": p, "raw": d}, "negative")
    return StratumDimResult(d, "order-p", {"g": g, "p": p})


def dim_hyperell_order_ell(g: int, ell: int, p: Optional[int] = None) -> StratumDimResult:
    """Hyperelliptic curves with a non-hyperelliptic automorphism of prime order ell != p.

    Nonempty iff ell | 2g+2-i for some i in {0,1,2}; the smallest such i
    gives the (largest) dimension -1 + (2g+2-i)/ell.
    """
    if not _is_prime(ell):
        raise ValueError("ell must be prime")
    if p is not None and ell == p:
        raise ValueError("ell equals the characteristic; use dim_hyperell_order_p")
    valid = [i for i in (0, 1, 2) if (2 * g + 2 - i) % ell == 0]
    if not valid:
        return StratumDimResult(None, "order-ell", {"g": g, "ell": ell, "valid_i": []}, "divisibility")
    i = valid[0]
    return StratumDimResult(-1 + (2 * g + 2 - i) // ell, "order-ell", {"g": g, "ell": ell, "i": i, "valid_i": valid})


def dim_H4iota(g: int) -> int:
    """Hyperelliptic curves with sigma of order 4 squaring to the involution."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    return g - 1


def dim_AS(p: int, g: int, f: Optional[int] = None) -> StratumDimResult:
    """Artin-Schreier curves of genus g (and p-rank f when p = 2)."""
    if g < 1:
        raise ValueError("genus must be positive")
    if p == 2:
        if f is None:
            raise ValueError("p = 2 needs the p-rank")
        return StratumDimResult(g - 1 + f, "artin-schreier", {"p": 2, "g": g, "f": f})
    if (2 * g) % (p - 1):
        return StratumDimResult(None, "artin-schreier", {"p": p, "g": g}, "divisibility")
    d = 2 * g // (p - 1)
    return StratumDimResult(d - 1, "artin-schreier", {"p": p, "g": g, "d": d}, exact=False)


def rh_check(d: CoverDatum) -> bool:
    lhs = 2 * d.g - 2
    if d.wild:
        return lhs == d.p * (2 * d.g_Y - 2) + sum(j + 1 for j in d.jumps) * (d.p - 1)
    return lhs == d.ell * (2 * d.g_Y - 2) + d.branch_count * (d.ell - 1)


def ds_check(p: int, f: int, f_Y: int, branch_count: int) -> bool:
    return f - 1 == p * (f_Y - 1) + branch_count * (p - 1)


# ---------------------------------------------------------------------------
# audit

STRICT = "strict"
TIGHT = "tight"
NEEDS_EXTRA = "tight-needs-extra-argument"

_EXTRA = {
    ("M", 2): "the order-two covers of a fixed elliptic curve form an irreducible family "
    "containing a fibre-product cover of larger p-rank",
    ("H", 2, 0): "the p-rank-zero part of the order-two locus has dimension below g-1",
    ("H", 2, 1): "the order-two locus is irreducible and contains a curve of p-rank at least two",
    ("H", "4i", 0): "the generic member of the Z/4 family has positive p-rank",
}


@dataclass
class AuditCase:
    space: str  # "M" or "H"
    ell: Union[int, str]
    max_bound: Optional[int]
    stratum_dim: int
    verdict: str
    witness_datum: dict
    exact: bool
    resolved_by: Optional[str] = None

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class AuditReport:
    g: int
    f: int
    p: int
    cases: list
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "config": {"g": self.g, "f": self.f, "p": self.p},
            "cases": [c.as_dict() for c in self.cases],
            "notes": list(self.notes),
        }

    def non_strict(self) -> list:
        return [c for c in self.cases if c.verdict != STRICT]


def _verdict(bound: Optional[int], stratum: int, exact: bool) -> str:
    if bound is None or bound < stratum:
        return STRICT
    if bound == stratum and exact:
        return TIGHT
    return NEEDS_EXTRA


def _jump_multisets(R: int, p: int, max_part: Optional[int] = None):
    """Multisets of jumps j (p does not divide j) with sum(j + 1) = R, nonincreasing."""
    if R == 0:
        yield ()
        return
    top = R - 1 if max_part is None else min(max_part, R - 1)
    for j in range(top, 0, -1):
        if j % p == 0:
            continue
        for rest in _jump_multisets(R - j - 1, p, j):
            yield (j,) + rest


def _tame_candidates(g: int, f: int, ell: int, p: int):
    """(bound, datum dict, exact) for Z/ell covers, ell != p, inside M_{g,f}."""
    out = []
    for g_Y in range(0, (g + ell - 1) // ell + 1):
        num = 2 * (g - ell * g_Y)
        if num % (ell - 1):
            continue
        B = num // (ell - 1) + 2
        if B < 0 or (g_Y == 0 and B < 3) or (g_Y == 1 and B < 1):
            continue
        if ell == 2 and g_Y == 0:
            # the curve is hyperelliptic: its whole stratum bounds the locus
            out.append((dim_H(g, f), {"g_Y": 0, "f_Y": 0, "branch_count": B, "hyperelliptic": True}, False))
            continue
        for f_Y in range(0, min(g_Y, f) + 1):
            d = CoverDatum(ell, p, g, g_Y, f_Y, branch_count=B)
            if not rh_check(d):
                raise AssertionError("tame enumerator produced a datum violating Riemann-Hurwitz")
            out.append((lemmadim_bound(d), {"g_Y": g_Y, "f_Y": f_Y, "branch_count": B}, False))
    return out


def _wild_candidates(g: int, f: int, p: int):
    """(bound, datum dict, exact) for Z/p covers inside M_{g,f}."""
    out = []
    # quotient of genus 0: Artin-Schreier curves
    r = dim_AS(p, g, f)
    if not r.empty:
        out.append((r.dimension, {"g_Y": 0, "artin_schreier": True, **r.side_data}, False))
    limit = 2 * (g + p) // (p - 1)
    for g_Y in range(1, (g + p - 1) // p + 1):
        num = 2 * (g - p * g_Y)
        if num % (p - 1):
            continue
        R = num // (p - 1) + 2  # sum over B of (j_b + 1)
        if R < 0 or R > limit:
            continue
        for jumps in _jump_multisets(R, p):
            B = len(jumps)
            if g_Y == 1 and B == 0:
                continue
            for f_Y in range(0, g_Y + 1):
                f_C = p * (f_Y - 1) + B * (p - 1) + 1
                if not 0 <= f_C <= f:
                    continue
                d = CoverDatum(p, p, g, g_Y, f_Y, jumps)
                if not rh_check(d) or not ds_check(p, f_C, f_Y, B):
                    raise AssertionError("wild enumerator produced an inconsistent datum")
                out.append((lemmadim_bound(d), {"g_Y": g_Y, "f_Y": f_Y, "jumps": list(jumps), "f_C": f_C}, False))
    return out


def _best(cands):
    """Candidate with the largest bound (first in enumeration order on ties)."""
    best = None
    for c in cands:
        if best is None or c[0] > best[0]:
            best = c
    return best


def theorem_audit(g: int, f: int, p: int) -> AuditReport:
    """Compare every automorphism-locus bound with the stratum dimension."""
    if g < 3:
        raise ValueError("the audit needs g >= 3")
    if not 0 <= f <= g:
        raise ValueError("need 0 <= f <= g")
    if not _is_prime(p):
        raise ValueError("p must be prime")
    cases = []
    notes = []
    ells = sorted(set(primes_upto(2 * g + 1)) | {p})

    sM = dim_M(g, f)
    for ell in ells:
        cands = _wild_candidates(g, f, p) if ell == p else _tame_candidates(g, f, ell, p)
        best = _best(cands)
        if best is None:
            cases.append(AuditCase("M", ell, None, sM, STRICT, {}, True))
            continue
        bound, datum, exact = best
        verdict = _verdict(bound, sM, exact)
        resolved = None
        if verdict != STRICT:
            # several data may reach the bound; record every one of them
            hits = [c[1] for c in cands if c[0] >= sM]
            datum = dict(datum, all_reaching=hits)
            if ell == 2 and ell != p and all(h.get("g_Y") == 1 and h.get("f_Y") == f for h in hits):
                resolved = _EXTRA[("M", 2)]
        cases.append(AuditCase("M", ell, bound, sM, verdict, datum, exact, resolved))

    sH = dim_H(g, f)
    if p == 2:
        notes.append("characteristic 2: no hyperelliptic case analysis; hyperelliptic curves are "
                     "Artin-Schreier curves and the generic automorphism group is settled directly")
    else:
        for ell in ells:
            if ell == p:
                r = dim_hyperell_order_p(g, p)
            else:
                r = dim_hyperell_order_ell(g, ell, p)
            verdict = _verdict(r.dimension, sH, r.exact)
            resolved = _EXTRA.get(("H", ell, f)) if verdict != STRICT else None
            datum = dict(r.side_data)
            if r.empty:
                datum["empty_reason"] = r.empty_reason
            cases.append(AuditCase("H", ell, r.dimension, sH, verdict, datum, r.exact, resolved))
        d4 = dim_H4iota(g)
        verdict = _verdict(d4, sH, True)
        resolved = _EXTRA.get(("H", "4i", f)) if verdict != STRICT else None
        cases.append(AuditCase("H", "4i", d4, sH, verdict, {"g": g}, True, resolved))
    return AuditReport(g, f, p, cases, notes)


def format_audit_table(rep: AuditReport) -> str:
    head = f"audit g={rep.g} f={rep.f} p={rep.p}"
    lines = [head, f"{'space':<6}{'ell':<6}{'bound':>7}{'stratum':>9}  verdict"]
    for c in rep.cases:
        b = "empty" if c.max_bound is None else str(c.max_bound)
        lines.append(f"{c.space:<6}{str(c.ell):<6}{b:>7}{c.stratum_dim:>9}  {c.verdict}")
    for n in rep.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)
