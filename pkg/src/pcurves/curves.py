"""Hyperelliptic and Artin-Schreier curve models over finite fields."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from . import config
from .ffpoly import (
    EnvelopeError,
    FieldElement,
    FieldSpec,
    Poly,
    embed,
    splitting_field,
    squarefree,
)
from .tables import MAX_TABLE_SIZE, char_sum, tables_for, trace_zero_count


class _Infinity:
    """The point at infinity of the projective line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Place = Union[FieldElement, _Infinity]


def place_key(b: Place):
    """Sort key: finite places by code, infinity last."""
    return (1, 0) if b is INF else (0, int(b))


class CurveError(ValueError):
    """Invalid curve data."""


# ---------------------------------------------------------------------------
# hyperelliptic


@dataclass(frozen=True, eq=False)
class HyperellipticCurve:
    """y^2 = f(x) over spec, p odd, f squarefree of degree 2g+1 or 2g+2."""

    spec: FieldSpec
    f: Poly
    genus: int

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def odd(self) -> bool:
        return self.f.degree % 2 == 1

    @functools.cached_property
    def splitting(self) -> tuple[FieldSpec, list[FieldElement]]:
        return splitting_field(self.f)

    @property
    def branch_locus(self) -> tuple[FieldSpec, tuple[Place, ...]]:
        """Splitting field of f and the 2g+2 branch points (infinity last)."""
        big, roots = self.splitting
        pts: list[Place] = list(roots)
        if self.odd:
            pts.append(INF)
        return big, tuple(pts)

    def to_record(self) -> dict:
        return {
            "p": self.spec.p,
            "n": self.spec.n,
            "modulus": list(self.spec.modulus),
            "model": "hyperelliptic",
            "f": poly_to_json(self.f),
            "genus": self.genus,
        }

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f} over {self.spec!r}, g={self.genus})"


def make_hyperelliptic(spec: FieldSpec, f: Poly) -> HyperellipticCurve:
    if spec.p == 2:
        raise CurveError("characteristic 2: use the Artin-Schreier model")
    if f.spec != spec:
        f = embed(f, spec)
    if f.degree < 3:
        raise CurveError(f"degree {f.degree} < 3 gives no curve of positive genus")
    if not squarefree(f):
        raise CurveError(f"{f} is not squarefree")
    g = (f.degree - 1) // 2
    C = HyperellipticCurve(spec, f, g)
    if config.debug_enabled() and spec.q <= MAX_TABLE_SIZE:
        _weil_check(C)
    return C


def _weil_check(C) -> None:
    N = count_points(C, 1)
    q = C.spec.q
    if (N - q - 1) ** 2 > 4 * C.genus**2 * q:
        raise AssertionError(f"Weil bound violated by {C!r}: N={N}")


def transform_model(f: Poly, a, b, c, d, D: int) -> Poly:
    """(c u + d)^D f((a u + b)/(c u + d)) for D >= deg f."""
    spec = f.spec
    num = Poly(spec, [b, a])
    den = Poly(spec, [d, c])
    if D < f.degree:
        raise ValueError("D must be at least deg f")
    out = Poly(spec)
    coeffs = f.coeffs
    den_pows = [Poly(spec, [1])]
    for _ in range(D):
        den_pows.append(den_pows[-1] * den)
    num_pow = Poly(spec, [1])
    for k, ck in enumerate(coeffs):
        if not ck.is_zero():
            out = out + num_pow * den_pows[D - k] * ck
        num_pow = num_pow * num
    return out


def odd_model(C: HyperellipticCurve) -> HyperellipticCurve:
    """An odd-degree model of C, over the smallest extension where f has a root.

    A root r is sent to infinity by x = r + 1/u; isomorphic over the
    algebraic closure, so geometric invariants are unchanged.
    """
    if C.odd:
        return C
    g0 = C.f.factor()[0][0]
    big = C.spec if g0.degree == 1 else C.spec.extension(g0.degree)
    r = embed(g0, big).roots()[0]
    F = transform_model(embed(C.f, big), r, big.one(), big.one(), big.zero(), C.f.degree)
    return HyperellipticCurve(big, F, C.genus)


def base_change(C: HyperellipticCurve, big: FieldSpec) -> HyperellipticCurve:
    return HyperellipticCurve(big, embed(C.f, big), C.genus)


# ---------------------------------------------------------------------------
# Artin-Schreier


@dataclass(frozen=True)
class RamificationDatum:
    place: Place
    jump: int

    def __post_init__(self):
        if self.jump < 1:
            raise CurveError("jump must be positive")


@dataclass(frozen=True, eq=False)
class ArtinSchreierCover:
    """y^p - y = f(x) with f stored in reduced principal-part form.

    ``parts`` maps each pole to the coefficients (c_1, ..., c_j) of
    sum c_k u^k, where u = x at infinity and u = 1/(x - b) at a finite b.
    """

    spec: FieldSpec
    const: FieldElement
    parts: tuple  # ((place, (c_1, ..., c_j)), ...) sorted by place_key

    def __eq__(self, other):
        return isinstance(other, ArtinSchreierCover) and self.to_record() == other.to_record()

    def __hash__(self):
        return hash(str(self.to_record()))

    @property
    def branch_data(self) -> tuple[RamificationDatum, ...]:
        return tuple(RamificationDatum(b, len(cs)) for b, cs in self.parts)

    @property
    def genus(self) -> int:
        return as_genus(self)

    def rational(self) -> tuple[Poly, Poly]:
        """(numerator, denominator) with the denominator monic."""
        spec = self.spec
        x = Poly.x(spec)
        den = Poly(spec, [1])
        for b, cs in self.parts:
            if b is not INF:
                den = den * (x - b) ** len(cs)
        num = den * self.const
        for b, cs in self.parts:
            if b is INF:
                num = num + den * Poly(spec, [spec.zero(), *cs])
            else:
                rest = den // ((x - b) ** len(cs))
                # c_k (x-b)^{-k} = c_k (x-b)^{j-k} / (x-b)^j
                for k, c in enumerate(cs, start=1):
                    num = num + rest * (x - b) ** (len(cs) - k) * c
        return num, den

    def to_record(self) -> dict:
        num, den = self.rational()
        return {
            "p": self.spec.p,
            "n": self.spec.n,
            "modulus": list(self.spec.modulus),
            "model": "artin-schreier",
            "f": poly_to_json(num),
            "f_den": poly_to_json(den),
            "genus": as_genus(self),
        }

    def __repr__(self):
        num, den = self.rational()
        return f"ArtinSchreierCover(y^p - y = ({num})/({den}) over {self.spec!r})"


def _laurent_at(num: Poly, den: Poly, b: FieldElement, m: int) -> list[FieldElement]:
    """Coefficients s_0..s_{m-1} of num/E expanded at x = b, den = (x-b)^m E."""
    spec = num.spec
    x = Poly.x(spec)
    E = den // ((x - b) ** m)
    shift = x + b
    N = num.compose(shift)
    Es = E.compose(shift)
    e0 = Es[0]
    if e0.is_zero():
        raise AssertionError("multiplicity bookkeeping failed")
    inv0 = e0.inverse()
    s: list[FieldElement] = []
    for i in range(m):
        acc = N[i]
        for k in range(1, i + 1):
            acc = acc - Es[k] * s[i - k]
        s.append(acc * inv0)
    return s


def _principal_parts(num: Poly, den: Poly):
    spec = num.spec
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    g = num.gcd(den)
    num, den = num // g, den // g
    lc = den.leading
    num, den = num * lc.inverse(), den * lc.inverse()
    parts: dict = {}
    for fac, mult in den.factor():
        if fac.degree != 1:
            raise CurveError("poles must be rational over the base field")
        b = -fac[0]
        s = _laurent_at(num, den, b, mult)
        # s_i multiplies (x-b)^{i-m}, i.e. u^{m-i}
        parts[b] = [s[mult - k] for k in range(1, mult + 1)]
    quo, _ = divmod(num, den)
    const = quo[0]
    if quo.degree >= 1:
        parts[INF] = [quo[k] for k in range(1, quo.degree + 1)]
    return const, parts


def _reduce_part(cs: list[FieldElement], p: int) -> list[FieldElement]:
    cs = list(cs)
    for k in range(len(cs), 0, -1):
        c = cs[k - 1]
        if k % p == 0 and not c.is_zero():
            cs[k - 1] = c.spec.zero()
            cs[k // p - 1] = cs[k // p - 1] + c.pth_root()
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def as_reduce(f, spec: FieldSpec) -> ArtinSchreierCover:
    """Reduced Artin-Schreier form of f (a Poly or a (num, den) pair).

    Terms c u^k with p | k are replaced by c^(1/p) u^(k/p), which differs by
    h^p - h.  Raises CurveError if nothing survives (the cover splits).
    """
    if isinstance(f, Poly):
        num, den = f, Poly(spec, [1])
    else:
        num, den = f
    num, den = embed(num, spec), embed(den, spec)
    const, parts = _principal_parts(num, den)
    reduced = []
    for b, cs in parts.items():
        r = _reduce_part(cs, spec.p)
        if r:
            reduced.append((b, tuple(r)))
    if not reduced:
        raise CurveError("function lies in the Artin-Schreier image up to a constant: the cover splits")
    reduced.sort(key=lambda t: place_key(t[0]))
    return ArtinSchreierCover(spec, const, tuple(reduced))


def as_from_parts(spec: FieldSpec, parts: dict, const=0) -> ArtinSchreierCover:
    """Build and reduce a cover from principal parts {place: [c_1..c_j]}."""
    const = spec(const)
    reduced = []
    for b, cs in parts.items():
        cs = [spec(c) for c in cs]
        b = b if b is INF else spec(b)
        r = _reduce_part(cs, spec.p)
        if r:
            reduced.append((b, tuple(r)))
    if not reduced:
        raise CurveError("the cover splits")
    reduced.sort(key=lambda t: place_key(t[0]))
    return ArtinSchreierCover(spec, const, tuple(reduced))


def genus_from_jumps(p: int, jumps: Sequence[int]) -> int:
    if not jumps:
        raise CurveError("empty branch data")
    for j in jumps:
        if j < 1 or j % p == 0:
            raise CurveError(f"jump {j} must be positive and prime to {p}")
    twice = (p - 1) * (sum(j + 1 for j in jumps) - 2)
    if twice < 0 or twice % 2:
        raise CurveError("branch data give no integral genus")
    return twice // 2


def as_genus(cover: ArtinSchreierCover) -> int:
    return genus_from_jumps(cover.spec.p, [d.jump for d in cover.branch_data])


def as_prank(cover: ArtinSchreierCover) -> int:
    B = len(cover.parts)
    if B == 0:
        raise CurveError("empty branch data")
    return (B - 1) * (cover.spec.p - 1)


# ---------------------------------------------------------------------------
# point counting


def count_points(curve, m: int = 1) -> int:
    """Projective points over F_{q^m} (q the field of definition)."""
    spec = curve.spec
    if m < 1:
        raise ValueError("m must be positive")
    if spec.q**m > MAX_TABLE_SIZE:
        raise EnvelopeError(f"counting over a field of size {spec.q}^{m} is outside the envelope")
    big = spec if m == 1 else spec.extension(m)
    T = tables_for(big)
    Q = big.q
    if isinstance(curve, HyperellipticCurve):
        f = embed(curve.f, big)
        N = Q + char_sum(T, f)
        if f.degree % 2:
            N += 1
        else:
            N += 2 if f.leading.is_square() else 0
        return N
    if isinstance(curve, ArtinSchreierCover):
        num, den = curve.rational()
        good, poles = trace_zero_count(T, embed(num, big), embed(den, big))
        N = spec.p * good + poles
        if any(b is INF for b, _ in curve.parts):
            N += 1
        elif embed(curve.const, big).trace() == 0:
            # unramified at infinity, fibre value is the constant
            N += spec.p
        return N
    raise TypeError(f"cannot count points on {type(curve).__name__}")


# ---------------------------------------------------------------------------
# serialization


def _coef_json(c: FieldElement):
    return int(c) if c.spec.n == 1 else list(c.coeffs)


def poly_to_json(f: Poly) -> list:
    return [_coef_json(c) for c in f.coeffs]


def poly_from_json(data: Iterable, spec: FieldSpec) -> Poly:
    return Poly(spec, [spec(c) if isinstance(c, list) else spec(int(c)) for c in data])


def spec_from_record(rec: dict) -> FieldSpec:
    return FieldSpec(rec["p"], rec["n"], rec["modulus"] or None)


def curve_from_record(rec: dict):
    spec = spec_from_record(rec)
    f = poly_from_json(rec["f"], spec)
    if rec["model"] == "hyperelliptic":
        C = make_hyperelliptic(spec, f)
    elif rec["model"] == "artin-schreier":
        den = poly_from_json(rec.get("f_den", [1]), spec)
        C = as_reduce((f, den), spec)
    else:
        raise CurveError(f"unknown model {rec['model']!r}")
    if C.genus != rec["genus"]:
        raise CurveError(f"record genus {rec['genus']} disagrees with computed {C.genus}")
    return C
