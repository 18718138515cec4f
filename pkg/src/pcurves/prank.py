"""p-rank via the Cartier-Manin matrix, with a point-counting oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .curves import (
    ArtinSchreierCover,
    CurveError,
    HyperellipticCurve,
    as_prank,
    count_points,
    odd_model,
)
from .ffpoly import EnvelopeError, Matrix, matrix_rank
from .tables import MAX_TABLE_SIZE


# f^((p-1)/2) is expanded in full; cap its degree
MAX_CARTIER_DEGREE = 1 << 22


class PRankMismatch(AssertionError):
    """The two p-rank routes disagree."""


@dataclass(frozen=True)
class CartierMatrix:
    curve: HyperellipticCurve  # odd-degree model the entries were read from
    A: Matrix

    @property
    def genus(self) -> int:
        return self.curve.genus


@dataclass(frozen=True)
class PRankResult:
    f: int
    method: str  # "cartier" | "zeta-oracle" | "deuring-shafarevich"
    genus: int
    witness: object = None
    verified: Optional[bool] = None


def cartier_matrix(curve: HyperellipticCurve) -> CartierMatrix:
    """A[i][j] = c_{ip-j} (1 <= i, j <= g) for f^((p-1)/2) = sum c_k x^k."""
    p = curve.spec.p
    if p == 2:
        raise CurveError("no Cartier-Manin matrix in characteristic 2; use the Artin-Schreier model")
    if (2 * curve.genus + 1) * (p - 1) // 2 > MAX_CARTIER_DEGREE:
        raise EnvelopeError("f^((p-1)/2) would exceed the supported degree")
    M = odd_model(curve)
    h = M.f ** ((p - 1) // 2)
    g = M.genus
    rows = [[h[i * p - j] for j in range(1, g + 1)] for i in range(1, g + 1)]
    return CartierMatrix(M, Matrix(M.spec, rows))


def semilinear_power(A: Matrix, k: int) -> Matrix:
    """A^(p^(k-1)) ... A^(p) . A, the matrix of the k-th Cartier iterate up to Frobenius.

    With A[i][j] = c_{ip-j} the operator sends a coordinate vector v to
    (A v)^(1/p), so its k-th power is a Frobenius twist of the product above.
    """
    out = A
    for i in range(1, k):
        out = A.frobenius(i) @ out
    return out


def stable_rank(A) -> int:
    """Rank of the g-fold semilinear iterate; equals the p-rank."""
    M = A.A if isinstance(A, CartierMatrix) else A
    g = M.shape[0]
    if g == 0:
        return 0
    return matrix_rank(semilinear_power(M, g))


def l_polynomial(curve) -> list[int]:
    """Integer coefficients a_0..a_{2g} of L(T) = prod (1 - alpha_i T)."""
    g = curve.genus
    q = curve.spec.q
    if g == 0:
        return [1]
    if q**g > MAX_TABLE_SIZE:
        raise EnvelopeError(f"zeta oracle needs counts over a field of size {q}^{g}")
    return l_polynomial_from_counts([count_points(curve, m) for m in range(1, g + 1)], q, g)


def l_polynomial_from_counts(counts, q: int, g: int) -> list[int]:
    """L-polynomial from N_1..N_g via Newton identities and the functional equation."""
    S = [0] + [q**m + 1 - counts[m - 1] for m in range(1, g + 1)]
    a = [1] + [0] * (2 * g)
    for k in range(1, g + 1):
        tot = -sum(S[i] * a[k - i] for i in range(1, k + 1))
        if tot % k:
            raise AssertionError("Newton identity produced a non-integer coefficient")
        a[k] = tot // k
    for k in range(g):
        a[2 * g - k] = q ** (g - k) * a[k]
    return a


def prank_from_l(a: list[int], p: int) -> int:
    """Degree of L(T) mod p."""
    return max((i for i, c in enumerate(a) if c % p), default=0)


def zeta_prank(curve) -> PRankResult:
    a = l_polynomial(curve)
    p = curve.spec.p
    return PRankResult(prank_from_l(a, p), "zeta-oracle", curve.genus, witness=[c % p for c in a])


def prank(curve, verify: bool = False) -> PRankResult:
    """p-rank by the model's native route; with verify, also by the oracle.

    verified is True when both routes ran and agree, None when the oracle is
    outside its envelope.  Disagreement raises PRankMismatch.
    """
    if isinstance(curve, HyperellipticCurve):
        A = cartier_matrix(curve)
        res = PRankResult(stable_rank(A), "cartier", curve.genus, witness=A.A.codes())
    elif isinstance(curve, ArtinSchreierCover):
        res = PRankResult(as_prank(curve), "deuring-shafarevich", curve.genus)
    else:
        raise TypeError(f"unsupported curve type {type(curve).__name__}")
    if not 0 <= res.f <= res.genus:
        raise AssertionError(f"p-rank {res.f} outside [0, {res.genus}]")
    if not verify:
        return res
    try:
        z = zeta_prank(curve)
    except EnvelopeError:
        return res
    if z.f != res.f:
        raise PRankMismatch(f"{res.method} gives {res.f}, zeta oracle gives {z.f} for {curve!r}")
    return PRankResult(res.f, res.method, res.genus, res.witness, True)
