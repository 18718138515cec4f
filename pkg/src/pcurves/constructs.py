"""Explicit curve families: Klein-four fibre products, the Z/4 family,
Artin-Schreier covers with prescribed jumps, and nodal p-rank bookkeeping."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .curves import (
    INF,
    ArtinSchreierCover,
    CurveError,
    HyperellipticCurve,
    as_from_parts,
    genus_from_jumps,
    make_hyperelliptic,
    place_key,
)
from .ffpoly import EnvelopeError, FieldElement, FieldSpec, Poly, embed
from .prank import l_polynomial_from_counts, prank, prank_from_l
from .tables import MAX_TABLE_SIZE, poly_logs, tables_for

FIBER_MODES = ("even", "odd", "t1")


# ---------------------------------------------------------------------------
# Klein-four covers


@dataclass(frozen=True, eq=False)
class KleinFourCover:
    """Fibre product of y1^2 = f1 and y2^2 = f2, described by its three quotients."""

    spec: FieldSpec
    psi1: HyperellipticCurve
    psi2: HyperellipticCurve
    f3: Poly  # squarefree part of f1*f2
    c3: Optional[HyperellipticCurve]  # None when the third quotient has genus 0
    pranks: tuple[int, int, int]
    branch_sizes: tuple[int, int, int]  # |B1|, |B2|, |B1 delta B2|
    shared: int  # |B1 cap B2|
    mode: Optional[str] = None

    @property
    def genera(self) -> tuple[int, int, int]:
        return (self.psi1.genus, self.psi2.genus, 0 if self.c3 is None else self.c3.genus)

    @property
    def total_genus(self) -> int:
        return sum(self.genera)

    @property
    def predicted_prank(self) -> int:
        return sum(self.pranks)


def _branch_size(f: Poly) -> int:
    """Number of geometric branch points of y^2 = f (f squarefree)."""
    return f.degree + (f.degree % 2)


def fiber_product(f1: Poly, f2: Poly, spec: Optional[FieldSpec] = None, mode: Optional[str] = None) -> KleinFourCover:
    """Klein-four cover with quotients y^2 = f1, y^2 = f2, y^2 = f1 f2 / gcd^2.

    ``mode`` enforces a branch-locus relation:
      even: |B1| = |B2| and the loci differ in a single point each way;
      odd:  B2 inside B1 with |B1| - |B2| = 2;
      t1:   y^2 = f1 has genus 1 and the loci share 2 points when the
            total genus is odd, 3 when it is even.
    """
    spec = spec or f1.spec
    f1, f2 = embed(f1, spec), embed(f2, spec)
    psi1 = make_hyperelliptic(spec, f1)
    psi2 = make_hyperelliptic(spec, f2)
    h = f1.gcd(f2)
    f3 = (f1 * f2) // (h * h)
    # infinity is a common branch point iff both degrees are odd
    shared = h.degree + (1 if f1.degree % 2 and f2.degree % 2 else 0)
    b1, b2 = _branch_size(f1), _branch_size(f2)
    b3 = b1 + b2 - 2 * shared
    if b3 != (_branch_size(f3) if f3.degree > 0 else 0):
        raise AssertionError("branch-locus bookkeeping failed")
    if b3 == 0:
        raise CurveError("f1 f2 is a square: the fibre product degenerates")
    c3 = make_hyperelliptic(spec, f3) if b3 > 2 else None
    if mode is not None:
        _check_mode(mode, b1, b2, b3, shared, psi1.genus, psi2.genus)
    pr = (
        prank(psi1).f,
        prank(psi2).f,
        0 if c3 is None else prank(c3).f,
    )
    return KleinFourCover(spec, psi1, psi2, f3, c3, pr, (b1, b2, b3), shared, mode)


def _check_mode(mode, b1, b2, b3, shared, g1, g2):
    if mode == "even":
        ok = b1 == b2 and b3 == 2
    elif mode == "odd":
        ok = shared == b2 and b1 - b2 == 2
    elif mode == "t1":
        g = 1 + g2 + (b3 - 2) // 2
        ok = g1 == 1 and shared == (2 if g % 2 else 3)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected one of {FIBER_MODES}")
    if not ok:
        raise CurveError(f"branch loci do not satisfy mode {mode!r}")


def _local_points(v1: FieldElement, v2: FieldElement, d1, d2) -> int:
    """Points of the normalised fibre product over one rational x.

    v_i = f_i(x); d_i = f_i'(x) (only used at a common root).
    """
    z1, z2 = v1.is_zero(), v2.is_zero()
    if not z1 and not z2:
        return (1 + _chi(v1)) * (1 + _chi(v2))
    if z1 and not z2:
        return 1 + _chi(v2)
    if z2 and not z1:
        return 1 + _chi(v1)
    return 1 + _chi(d1 * d2)


def _chi(v: FieldElement) -> int:
    if v.is_zero():
        return 0
    return 1 if v.is_square() else -1


def _at_infinity(f: Poly) -> Poly:
    """u^(2 ceil(deg/2)) f(1/u): the model near x = infinity."""
    D = f.degree + (f.degree % 2)
    cs = list(f.coeffs) + [f.spec.zero()] * (D - f.degree)
    return Poly(f.spec, list(reversed(cs)))


def fiber_count(K: KleinFourCover, m: int = 1) -> int:
    """Points over F_{q^m} of the smooth Klein-four cover, by direct enumeration."""
    spec = K.spec
    if spec.q**m > MAX_TABLE_SIZE:
        raise EnvelopeError("fibre-product count outside the envelope")
    big = spec if m == 1 else spec.extension(m)
    T = tables_for(big)
    f1, f2 = embed(K.psi1.f, big), embed(K.psi2.f, big)
    l1, l2 = poly_logs(T, f1), poly_logs(T, f2)
    z = T.zero_log
    total = 0
    for xs in T.x_chunks():
        v1 = T.horner(l1, xs)
        v2 = T.horner(l2, xs)
        c1, c2 = T.chi(v1), T.chi(v2)
        n1, n2 = v1 != z, v2 != z
        both = n1 & n2
        total += int(((1 + c1) * (1 + c2))[both].sum())
        total += int((1 + c2)[~n1 & n2].sum())
        total += int((1 + c1)[n1 & ~n2].sum())
    d1, d2 = f1.derivative(), f2.derivative()
    for x0 in f1.gcd(f2).roots():
        total += 1 + _chi(d1(x0) * d2(x0))
    F1, F2 = _at_infinity(f1), _at_infinity(f2)
    zero = big.zero()
    total += _local_points(F1(zero), F2(zero), F1.derivative()(zero), F2.derivative()(zero))
    return total


def fiber_direct_prank(K: KleinFourCover) -> int:
    """p-rank of the total curve from its own point counts (not the quotients)."""
    g = K.total_genus
    q = K.spec.q
    if q**g > MAX_TABLE_SIZE:
        raise EnvelopeError("total genus too large for the direct count")
    counts = [fiber_count(K, m) for m in range(1, g + 1)]
    return prank_from_l(l_polynomial_from_counts(counts, q, g), K.spec.p)


# ---------------------------------------------------------------------------
# Z/4 family  y^2 = x (x^2 - 1) prod (x^2 - lambda_i^2)


@dataclass(frozen=True)
class Z4FamilyParams:
    spec: FieldSpec
    lambdas: tuple

    def __post_init__(self):
        if self.spec.p == 2:
            raise CurveError("the Z/4 family needs odd characteristic")
        lams = tuple(self.spec(l) for l in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        reason = z4_collision(lams)
        if reason:
            raise CurveError(reason)

    @property
    def genus(self) -> int:
        return len(self.lambdas) + 1


def z4_collision(lams: Sequence[FieldElement]) -> Optional[str]:
    """Why a lambda tuple is inadmissible, or None."""
    for i, a in enumerate(lams):
        if a.is_zero():
            return "lambda must be nonzero"
        if a == 1 or a == -1:
            return "lambda must differ from +-1"
        for b in lams[:i]:
            if a == b or a == -b:
                return "lambdas must satisfy lambda_i != +-lambda_j"
    return None


def z4_polynomial(spec: FieldSpec, lambdas) -> Poly:
    x = Poly.x(spec)
    f = x * (x * x - 1)
    for lam in lambdas:
        lam = spec(lam)
        f = f * (x * x - lam * lam)
    return f


def z4_family(params: Z4FamilyParams) -> HyperellipticCurve:
    return make_hyperelliptic(params.spec, z4_polynomial(params.spec, params.lambdas))


@dataclass(frozen=True)
class Z4Survey:
    spec: FieldSpec
    genus: int
    histogram: dict  # p-rank -> count
    samples: int

    @property
    def any_positive(self) -> bool:
        return any(f > 0 and c > 0 for f, c in self.histogram.items())


def _admissible_count(spec: FieldSpec) -> int:
    """Number of +- pairs available for lambda."""
    return (spec.q - 3) // 2


def z4_tuples(spec: FieldSpec, g: int, sample_count: Optional[int] = None, seed: int = 0):
    """Admissible lambda tuples: all of them (ordered) or a uniform sample."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if _admissible_count(spec) < g - 1:
        raise CurveError(f"{spec!r} is too small for an admissible tuple of length {g - 1}")
    if sample_count is None:
        for codes in itertools.product(range(spec.q), repeat=g - 1):
            lams = [spec.from_code(c) for c in codes]
            if z4_collision(lams) is None:
                yield tuple(lams)
        return
    rng = np.random.default_rng(seed)
    made = 0
    while made < sample_count:
        codes = rng.integers(0, spec.q, size=g - 1)
        lams = [spec.from_code(int(c)) for c in codes]
        if z4_collision(lams) is None:
            made += 1
            yield tuple(lams)


def z4_prank_survey(spec: FieldSpec, g: int, sample_count: Optional[int], seed: int = 0) -> Z4Survey:
    """p-rank histogram over the family; sample_count None means exhaustive."""
    hist: Counter = Counter()
    n = 0
    if sample_count == 0:
        return Z4Survey(spec, g, {}, 0)
    for lams in z4_tuples(spec, g, sample_count, seed):
        C = z4_family(Z4FamilyParams(spec, lams))
        hist[prank(C).f] += 1
        n += 1
    return Z4Survey(spec, g, dict(sorted(hist.items())), n)


# ---------------------------------------------------------------------------
# nodal bookkeeping


@dataclass(frozen=True)
class NodalRecord:
    """Two components meeting in one ordinary double point."""

    components: tuple  # ((genus, p_rank), (genus, p_rank))
    curves: tuple = ()

    @property
    def genus(self) -> int:
        return sum(c[0] for c in self.components)


def nodal_prank(rec: NodalRecord) -> int:
    return sum(c[1] for c in rec.components)


def z4_degeneration(params: Z4FamilyParams) -> NodalRecord:
    """Components of the limit as lambda_1, lambda_2 -> 0.

    Y1: y^2 = x (x^2 - l1^2)(x^2 - l2^2) (genus 2) and
    Y2: y^2 = x (x^2 - 1) prod_{i>=3} (x^2 - l_i^2) (genus g - 2).
    """
    lams = params.lambdas
    if len(lams) < 2:
        raise ValueError("the degeneration needs genus at least 3")
    spec = params.spec
    x = Poly.x(spec)
    y1 = x * (x * x - lams[0] * lams[0]) * (x * x - lams[1] * lams[1])
    Y1 = make_hyperelliptic(spec, y1)
    Y2 = make_hyperelliptic(spec, z4_polynomial(spec, lams[2:]))
    comps = ((Y1.genus, prank(Y1).f), (Y2.genus, prank(Y2).f))
    return NodalRecord(comps, (Y1, Y2))


# ---------------------------------------------------------------------------
# Artin-Schreier covers with prescribed jumps


def as_construct(p: int, branch_data, spec: Optional[FieldSpec] = None) -> ArtinSchreierCover:
    """y^p - y = sum_b u_b^(j_b), u_b = x at infinity, 1/(x - b) otherwise.

    branch_data: iterable of (place, jump) with place INF or a field element
    (or integer code) of spec.
    """
    spec = spec or FieldSpec(p)
    if spec.p != p:
        raise ValueError("characteristic mismatch")
    parts = {}
    for place, j in branch_data:
        if j < 1 or j % p == 0:
            raise CurveError(f"jump {j} must be positive and prime to {p}")
        b = INF if place is INF else (place if isinstance(place, FieldElement) else spec.from_code(int(place)))
        if b in parts:
            raise CurveError("repeated branch place")
        parts[b] = [spec.zero()] * (j - 1) + [spec.one()]
    if not parts:
        raise CurveError("empty branch data")
    return as_from_parts(spec, parts)


def as_jumps_for(p: int, g: int, f: int = 0) -> list[int]:
    """Jumps for a cover of the line with genus g and p-rank f, or CurveError."""
    if (2 * g) % (p - 1):
        raise CurveError(f"no Artin-Schreier curve of genus {g} in characteristic {p}: (p-1) must divide 2g")
    if f % (p - 1):
        raise CurveError(f"p-rank {f} is not a multiple of p-1")
    nb = f // (p - 1) + 1
    total = 2 * g // (p - 1) + 2  # sum of (j_b + 1)
    extra = total - 2 * nb
    if extra < 0:
        raise CurveError("p-rank too large for the genus")

    def fill(k, left):
        if k == 1:
            j = 1 + left
            return [j] if j % p else None
        for add in range(left, -1, -1):
            j = 1 + add
            if j % p == 0:
                continue
            rest = fill(k - 1, left - add)
            if rest is not None:
                return [j] + rest
        return None

    jumps = fill(nb, extra)
    if jumps is None:
        raise CurveError(f"no jump multiset realises genus {g} with {nb} branch points")
    if genus_from_jumps(p, jumps) != g:
        raise AssertionError("jump search bookkeeping failed")
    return jumps


def as_curve_of_genus(spec: FieldSpec, g: int, f: int = 0) -> ArtinSchreierCover:
    """An Artin-Schreier curve of genus g and p-rank f with rational branch places."""
    jumps = as_jumps_for(spec.p, g, f)
    if len(jumps) - 1 > spec.q:
        raise CurveError("not enough rational places for the branch locus")
    places = [INF] + [spec.from_code(c) for c in range(len(jumps) - 1)]
    return as_construct(spec.p, list(zip(places, jumps)), spec)
