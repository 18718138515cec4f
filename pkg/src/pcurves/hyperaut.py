"""Reduced automorphism groups of hyperelliptic curves.

The reduced group is the stabiliser of the branch locus B in PGL_2, computed
over the splitting field of B.  A Moebius map is pinned down by the images
of three points, so we fix a base triple T0 of B and ask, for each ordered
triple T of B, whether the map T0 -> T preserves B.  The test compares
cross-ratio signatures: with M_T the map sending T to (0, inf, 1), the
map T0 -> T preserves B iff M_T(B - T) = M_T0(B - T0) as sets.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from . import config
from .curves import INF, HyperellipticCurve, Place, transform_model
from .ffpoly import FieldElement, FieldSpec, Poly, embed


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """x -> (a x + b)/(c x + d), first nonzero coefficient scaled to 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def normalized(cls, a, b, c, d) -> "MoebiusMap":
        if (a * d - b * c).is_zero():
            raise ValueError("singular Moebius map")
        lead = next(v for v in (a, b, c, d) if not v.is_zero())
        inv = lead.inverse()
        return cls(a * inv, b * inv, c * inv, d * inv)

    @classmethod
    def identity(cls, spec: FieldSpec) -> "MoebiusMap":
        return cls(spec.one(), spec.zero(), spec.zero(), spec.one())

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def key(self) -> tuple[int, int, int, int]:
        return (int(self.a), int(self.b), int(self.c), int(self.d))

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __call__(self, x: Place) -> Place:
        if x is INF:
            return INF if self.c.is_zero() else self.a / self.c
        den = self.c * x + self.d
        if den.is_zero():
            return INF
        return (self.a * x + self.b) / den

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusMap.normalized(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap.normalized(self.d, -self.b, -self.c, self.a)

    def matrix_power_scalar(self, k: int) -> Optional[FieldElement]:
        """s with M^k = s I, or None if M^k is not scalar."""
        a, b, c, d = self.a, self.b, self.c, self.d
        ra, rb, rc, rd = a.spec.one(), a.spec.zero(), a.spec.zero(), a.spec.one()
        for _ in range(k):
            ra, rb, rc, rd = ra * a + rb * c, ra * b + rb * d, rc * a + rd * c, rc * b + rd * d
        if rb.is_zero() and rc.is_zero() and ra == rd:
            return ra
        return None

    def fixed_points(self) -> list[Place]:
        """Fixed points rational over the map's field."""
        a, b, c, d = self.a, self.b, self.c, self.d
        pts: list[Place] = []
        if c.is_zero():
            pts.append(INF)
            if a != d:
                pts.append(b / (d - a))
            return pts
        # c x^2 + (d - a) x - b = 0
        return Poly(self.spec, [-b, d - a, c]).roots()

    def __repr__(self):
        return f"MoebiusMap({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


@dataclass(frozen=True, eq=False)
class AutElement:
    """A reduced automorphism with the permutation it induces on B."""

    map: MoebiusMap
    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        return perm_order(self.perm)


def perm_order(perm) -> int:
    seen = [False] * len(perm)
    out = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        out = out * n // math.gcd(out, n)
    return out


def perm_compose(s, t):
    """s after t."""
    return tuple(s[i] for i in t)


@dataclass(frozen=True, eq=False)
class ReducedAutGroup:
    curve: HyperellipticCurve
    spec: FieldSpec  # splitting field of B
    points: tuple  # B in the order the permutations refer to
    elements: tuple[AutElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def structure(self) -> str:
        return structure_tag(self)

    def order_census(self) -> Counter:
        return Counter(e.order for e in self.elements)


@dataclass(frozen=True)
class LiftClassification:
    """Involutions tagged z4 / klein4, order-p elements tagged wild."""

    entries: tuple  # ((AutElement, tag), ...)

    def tags(self) -> list[str]:
        return [t for _, t in self.entries]


def _homog(b: Place, spec: FieldSpec):
    if b is INF:
        return (spec.ctx.one(), spec.ctx.zero())
    return (b.raw, spec.ctx.one())


def reduced_aut(curve: HyperellipticCurve) -> ReducedAutGroup:
    """Stabiliser of the branch locus in PGL_2 over its splitting field."""
    if curve.spec.p == 2:
        raise ValueError("characteristic 2 is not supported")
    if curve.genus < 2:
        raise ValueError("reduced automorphism groups need genus >= 2")
    spec, B = curve.branch_locus
    n = len(B)
    H = [_homog(b, spec) for b in B]
    # D[i][j] = det(B_i, B_j), Dinv its inverse off the diagonal
    D = [[H[i][0] * H[j][1] - H[i][1] * H[j][0] for j in range(n)] for i in range(n)]
    Dinv = [[None if i == j else D[i][j].inverse() for j in range(n)] for i in range(n)]

    T0 = (0, 1, 2)
    rest0 = [y for y in range(n) if y not in T0]
    K0 = D[2][1] * Dinv[2][0]
    sig0 = [D[y][0] * Dinv[y][1] * K0 for y in rest0]

    found = []
    for c0 in range(n):
        for c1 in range(n):
            if c1 == c0:
                continue
            for c2 in range(n):
                if c2 == c0 or c2 == c1:
                    continue
                K = D[c2][c1] * Dinv[c2][c0]
                perm = [0] * n
                perm[0], perm[1], perm[2] = c0, c1, c2
                ok = True
                for y in range(n):
                    if y == c0 or y == c1 or y == c2:
                        continue
                    v = D[y][c0] * Dinv[y][c1] * K
                    for idx, s in enumerate(sig0):
                        if s == v:
                            perm[rest0[idx]] = y
                            break
                    else:
                        ok = False
                        break
                if ok:
                    found.append(((c0, c1, c2), tuple(perm)))

    def cross_matrix(t):
        (x0, z0), (x1, z1) = H[t[0]], H[t[1]]
        k1 = D[t[2]][t[1]]
        k0 = D[t[2]][t[0]]
        return (k1 * z0, -(k1 * x0), k0 * z1, -(k0 * x1))

    a0, b0, c0_, d0 = cross_matrix(T0)
    elements = []
    for T, perm in found:
        a, b, c, d = cross_matrix(T)
        # adjugate of M_T, then times M_T0
        ia, ib, ic, id_ = d, -b, -c, a
        m = MoebiusMap.normalized(
            FieldElement(spec, ia * a0 + ib * c0_),
            FieldElement(spec, ia * b0 + ib * d0),
            FieldElement(spec, ic * a0 + id_ * c0_),
            FieldElement(spec, ic * b0 + id_ * d0),
        )
        for i, pt in enumerate(B):
            img = m(pt)
            tgt = B[perm[i]]
            if (img is INF) != (tgt is INF) or (img is not INF and img != tgt):
                raise AssertionError("stabiliser map does not permute the branch locus")
        elements.append(AutElement(m, perm))
    elements.sort(key=lambda e: e.map.key())
    G = ReducedAutGroup(curve, spec, B, tuple(elements))
    if config.debug_enabled():
        check_group_axioms(G)
    return G


def check_group_axioms(G: ReducedAutGroup) -> None:
    perms = {e.perm for e in G.elements}
    ident = tuple(range(len(G.points)))
    if ident not in perms:
        raise AssertionError("identity missing")
    for s in perms:
        if tuple(sorted(range(len(s)), key=lambda i: s[i])) not in perms:
            raise AssertionError("not closed under inverses")
        for t in perms:
            if perm_compose(s, t) not in perms:
                raise AssertionError("not closed under composition")


def full_aut_order(G: ReducedAutGroup) -> int:
    return 2 * G.order


def structure_tag(G: ReducedAutGroup) -> str:
    n = G.order
    orders = [e.order for e in G.elements]
    if n == 1:
        return "trivial"
    if n in orders:
        return f"cyclic({n})"
    if n == 4 and all(o in (1, 2) for o in orders):
        return "klein"
    if n % 2 == 0 and n // 2 >= 3:
        m = n // 2
        for e in G.elements:
            if e.order != m:
                continue
            sub = {tuple(range(len(e.perm)))}
            cur = e.perm
            while cur not in sub:
                sub.add(cur)
                cur = perm_compose(e.perm, cur)
            if all(x.order == 2 for x in G.elements if x.perm not in sub):
                return f"dihedral({m})"
    return f"other({n})"


# ---------------------------------------------------------------------------
# lifts


def lift_scalar(curve: HyperellipticCurve, m: MoebiusMap) -> FieldElement:
    """lambda with (cx+d)^(2g+2) f((ax+b)/(cx+d)) = lambda f(x)."""
    f = embed(curve.f, m.spec)
    D = 2 * curve.genus + 2
    F = transform_model(f, m.a, m.b, m.c, m.d, D)
    lam = F.leading / f.leading if F.degree == f.degree else None
    if lam is None or F != f * lam:
        raise AssertionError("map does not preserve the branch locus")
    return lam


def lift_orders(curve: HyperellipticCurve, e: AutElement) -> tuple[int, int]:
    """Orders of the two lifts of e to Aut of the curve."""
    k = e.order
    if k % 2:
        return (k, 2 * k)
    lam = lift_scalar(curve, e.map)
    s = e.map.matrix_power_scalar(k)
    if s is None:
        raise AssertionError("element order disagrees with matrix power")
    sign = lam ** (k // 2) / s ** (curve.genus + 1)
    if sign == 1:
        return (k, k)
    if sign == -1:
        return (2 * k, 2 * k)
    raise AssertionError(f"lift sign {sign!r} is not +-1")


def classify_involutions(curve: HyperellipticCurve, G: Optional[ReducedAutGroup] = None) -> LiftClassification:
    """z4 if both fixed points of an involution are branch points, klein4 if neither."""
    if curve.spec.p == 2:
        raise ValueError("characteristic 2 is not supported")
    if G is None:
        G = reduced_aut(curve)
    p = curve.spec.p
    entries = []
    for e in G.elements:
        k = e.order
        if k == 2:
            inside = sum(1 for i, j in enumerate(e.perm) if i == j)
            if inside == 2:
                tag = "z4"
            elif inside == 0:
                tag = "klein4"
            else:
                raise AssertionError(f"involution fixes {inside} branch points")
            if config.debug_enabled():
                lo = lift_orders(curve, e)
                if (lo[0] == 4) != (tag == "z4"):
                    raise AssertionError("fixed-point rule and explicit lift disagree")
            entries.append((e, tag))
        elif k == p:
            entries.append((e, "wild"))
    return LiftClassification(tuple(entries))


def has_order_ell(curve: HyperellipticCurve, ell: int, G: Optional[ReducedAutGroup] = None) -> bool:
    """Does the curve have a non-hyperelliptic automorphism of order ell?

    Orders are those of lifts to the full group, so a reduced involution
    whose lifts square to the hyperelliptic involution counts for ell = 4.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if ell == 1:
        return True
    if G is None:
        G = reduced_aut(curve)
    for e in G.elements:
        k = e.order
        if k == 1 or ell % k:
            continue
        if ell in lift_orders(curve, e):
            return True
    return False


def has_reduced_order(G: ReducedAutGroup, k: int) -> bool:
    """Does the reduced group contain an element of order exactly k?"""
    return any(e.order == k for e in G.elements)
