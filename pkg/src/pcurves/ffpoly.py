"""Exact arithmetic in F_p, F_{p^n} and F_q[x], plus small dense matrices.

Scalar and polynomial arithmetic is delegated to python-flint; this module
owns the conventions layered on top of it:

* a field is identified by ``(p, n, modulus)`` where the modulus is the
  lexicographically lowest monic irreducible of degree ``n`` (elements are
  encoded as the integer ``sum(c_i * p**i)`` of their coefficient vector);
* elements and polynomials remember their field and refuse to mix with
  another field;
* embeddings ``F_{p^n} -> F_{p^N}`` are chosen deterministically (image of
  the generator is the smallest-code root of the small modulus).
"""
from __future__ import annotations

import functools
import math
import re
from typing import Iterable, Iterator, Sequence

import flint

__all__ = [
    "EnvelopeError",
    "FieldElement",
    "FieldMismatchError",
    "FieldSpec",
    "Matrix",
    "Poly",
    "ZERO_DEGREE",
    "embed",
    "format_poly",
    "frobenius",
    "is_prime",
    "matrix_rank",
    "parse_poly",
    "poly_mul",
    "poly_powmod",
    "splitting_field",
    "squarefree",
]

MAX_CHARACTERISTIC = 1 << 20
# Splitting fields of degree-7 models over F_27 reach F_{3^36}; enumeration
# code paths carry their own, much smaller, caps.
MAX_FIELD_BITS = 128
ZERO_DEGREE = -1


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


class EnvelopeError(ValueError):
    """Request is outside the supported size envelope."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for d in range(3, r + 1, 2):
        if n % d == 0:
            return False
    return True


def _digits(code: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return out


@functools.lru_cache(maxsize=None)
def lowest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lowest monic irreducible of degree n over F_p, coefficients low to high.

    Candidates ``x^n + c_{n-1} x^{n-1} + ... + c_0`` are ordered by the
    integer ``sum(c_i p^i)``.
    """
    ring = flint.fmpz_mod_poly_ctx(p)
    code = 0
    while True:
        coeffs = _digits(code, p, n) + [1]
        if coeffs[0] != 0 and ring(coeffs).is_irreducible():
            return tuple(coeffs)
        code += 1


_CONTEXTS: dict[tuple, tuple] = {}


class FieldSpec:
    """The finite field F_{p^n} with a fixed defining modulus.

    >>> F9 = FieldSpec(3, 2)
    >>> F9.modulus
    (1, 0, 1)
    """

    __slots__ = ("p", "n", "modulus", "q", "_ctx", "_pctx")

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None):
        p, n = int(p), int(n)
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p >= MAX_CHARACTERISTIC:
            raise EnvelopeError(f"characteristic {p} exceeds 2^20")
        if n < 1:
            raise ValueError("extension degree must be positive")
        if n * math.log2(p) >= MAX_FIELD_BITS:
            raise EnvelopeError(f"field of size {p}^{n} exceeds 2^{MAX_FIELD_BITS}")
        if n == 1:
            if modulus not in (None, (), []):
                raise ValueError("prime fields carry no modulus")
            modulus = ()
        elif modulus is None:
            modulus = lowest_irreducible(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree n")
            if not flint.fmpz_mod_poly_ctx(p)(list(modulus)).is_irreducible():
                raise ValueError("modulus is not irreducible")
        self.p = p
        self.n = n
        self.modulus = tuple(modulus)
        self.q = p**n
        key = (p, n, self.modulus)
        if key not in _CONTEXTS:
            m = list(self.modulus) if n > 1 else [0, 1]
            ctx = flint.fq_default_ctx(p, modulus=flint.fmpz_mod_poly_ctx(p)(m))
            _CONTEXTS[key] = (ctx, flint.fq_default_poly_ctx(ctx))
        self._ctx, self._pctx = _CONTEXTS[key]

    # identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.n, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (FieldSpec, (self.p, self.n, self.modulus or None))

    def __repr__(self):
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"

    # element construction ------------------------------------------------
    @property
    def ctx(self):
        return self._ctx

    def raw(self, code: int):
        """flint element for an integer code (or an int in the prime field)."""
        if self.n == 1:
            return self._ctx(int(code) % self.p)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        return self._ctx(_digits(int(code), self.p, self.n))

    def code(self, raw) -> int:
        coeffs = raw.to_list()
        if self.n == 1:
            return int(coeffs[0]) if coeffs else 0
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + int(c)
        return out

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatchError(f"{x.spec!r} element given to {self!r}")
            return x
        if isinstance(x, (list, tuple)):
            if len(x) > self.n:
                raise ValueError(f"vector of length {len(x)} for degree-{self.n} field")
            return FieldElement(self, self._ctx([int(c) % self.p for c in x]))
        return FieldElement(self, self._ctx(int(x) % self.p))

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self, self.raw(code))

    def zero(self) -> "FieldElement":
        return FieldElement(self, self._ctx.zero())

    def one(self) -> "FieldElement":
        return FieldElement(self, self._ctx.one())

    def gen(self) -> "FieldElement":
        """The class of t in F_p[t]/(modulus); equals 0 in a prime field."""
        if self.n == 1:
            return self.zero()
        return FieldElement(self, self._ctx.gen())

    def elements(self) -> Iterator["FieldElement"]:
        for c in range(self.q):
            yield self.from_code(c)

    def extension(self, m: int) -> "FieldSpec":
        """F_{q^m} with its own canonical modulus."""
        return FieldSpec(self.p, self.n * m)

    def contains_subfield(self, other: "FieldSpec") -> bool:
        return self.p == other.p and self.n % other.n == 0


class FieldElement:
    """Immutable element of a FieldSpec."""

    __slots__ = ("spec", "_v")

    def __init__(self, spec: FieldSpec, raw):
        self.spec = spec
        self._v = raw

    def __reduce__(self):
        return (self.spec.from_code, (int(self),))

    @property
    def raw(self):
        return self._v

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(int(self), self.spec.p, self.spec.n))

    def __int__(self):
        return self.spec.code(self._v)

    __index__ = __int__

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec!r} with {other.spec!r}")
            return other._v
        if isinstance(other, int):
            return self.spec._ctx(other % self.spec.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self._v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self._v - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, o - self._v)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElement(self.spec, self._v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero in finite field")
        return FieldElement(self.spec, self._v * o.inverse())

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, o * self.inverse()._v)

    def __neg__(self):
        return FieldElement(self.spec, -self._v)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.spec, self._v**e)

    def inverse(self) -> "FieldElement":
        if self._v.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.spec, self._v.inverse())

    def frobenius(self, k: int = 1) -> "FieldElement":
        return frobenius(self, k)

    def is_zero(self) -> bool:
        return self._v.is_zero()

    def __bool__(self):
        return not self._v.is_zero()

    def is_square(self) -> bool:
        return self._v.is_square()

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.spec, self._v.sqrt())

    def pth_root(self) -> "FieldElement":
        return FieldElement(self.spec, self._v.pth_root())

    def trace(self) -> int:
        """Absolute trace down to F_p."""
        return int(self._v.trace()) % self.spec.p

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self._v == other._v
        if isinstance(other, int):
            return self._v == self.spec._ctx(other % self.spec.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.n, int(self)))

    def __repr__(self):
        if self.spec.n == 1:
            return str(int(self))
        return "[" + ",".join(map(str, self.coeffs)) + "]"


def frobenius(a: FieldElement, k: int = 1) -> FieldElement:
    """a^(p^k); k is taken modulo the extension degree."""
    k %= a.spec.n
    if k == 0:
        return a
    return FieldElement(a.spec, a.raw.frobenius(k))


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Univariate polynomial over a FieldSpec, canonical (no leading zeros).

    The zero polynomial has degree ``ZERO_DEGREE`` (-1).
    """

    __slots__ = ("spec", "_f")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        self.spec = spec
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise FieldMismatchError(f"{c.spec!r} coefficient in {spec!r} polynomial")
                vals.append(c.raw)
            elif isinstance(c, (list, tuple)):
                vals.append(spec(c).raw)
            else:
                vals.append(spec._ctx(int(c) % spec.p))
        self._f = spec._pctx(vals)

    @classmethod
    def _wrap(cls, spec: FieldSpec, f) -> "Poly":
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._f = f
        return obj

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, [0, 1])

    @classmethod
    def constant(cls, spec: FieldSpec, c) -> "Poly":
        return cls(spec, [c])

    @classmethod
    def from_roots(cls, spec: FieldSpec, roots: Iterable) -> "Poly":
        out = cls(spec, [1])
        x = cls.x(spec)
        for r in roots:
            out = out * (x - spec(r))
        return out

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes: Iterable[int]) -> "Poly":
        return cls._wrap(spec, spec._pctx([spec.raw(c) for c in codes]))

    # views ---------------------------------------------------------------
    @property
    def flint(self):
        return self._f

    @property
    def degree(self) -> int:
        d = self._f.degree()
        return ZERO_DEGREE if d < 0 else d

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.spec, c) for c in self._f.coeffs())

    def raw_coeffs(self) -> list:
        return self._f.coeffs()

    def codes(self) -> list[int]:
        return [self.spec.code(c) for c in self._f.coeffs()]

    def __getitem__(self, k: int) -> FieldElement:
        if k < 0 or k > self.degree:
            return self.spec.zero()
        return FieldElement(self.spec, self._f.coeffs()[k])

    @property
    def leading(self) -> FieldElement:
        if self.is_zero():
            return self.spec.zero()
        return FieldElement(self.spec, self._f.leading_coefficient())

    def is_zero(self) -> bool:
        return self._f.is_zero()

    def is_constant(self) -> bool:
        return self.degree <= 0

    def is_monic(self) -> bool:
        return not self.is_zero() and self._f.leading_coefficient().is_one()

    # arithmetic ----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec!r} and {other.spec!r} polynomials")
            return other._f
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec!r} poly with {other.spec!r} scalar")
            return self.spec._pctx([other.raw])
        if isinstance(other, int):
            return self.spec._pctx([other % self.spec.p])
        return NotImplemented

    def _new(self, f):
        return Poly._wrap(self.spec, f)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self._f - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(o - self._f)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self._f * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self._f)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        return self._new(self._f**e)

    def __divmod__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        qt, r = self._f.divmod(o)
        return self._new(qt), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self._f == other._f
        if isinstance(other, (int, FieldElement)):
            return self == Poly(self.spec, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, tuple(self.codes())))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.spec != self.spec:
                raise FieldMismatchError("evaluation point from another field")
            return FieldElement(self.spec, self._f(x.raw))
        return FieldElement(self.spec, self._f(self.spec(x).raw))

    def derivative(self) -> "Poly":
        return self._new(self._f.derivative())

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self._new(self._f.monic())

    def gcd(self, other: "Poly") -> "Poly":
        o = self._other(other)
        if self.is_zero() and o.is_zero():
            return self
        return self._new(self._f.gcd(o)).monic()

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x))."""
        return self._new(self._f.compose(self._other(inner)))

    def powmod(self, e: int, m: "Poly") -> "Poly":
        return poly_powmod(self, e, m)

    def is_squarefree(self) -> bool:
        return squarefree(self)

    def frobenius_coeffs(self, k: int = 1) -> "Poly":
        """Apply a -> a^(p^k) to every coefficient."""
        k %= self.spec.n
        if k == 0:
            return self
        return self._new(self.spec._pctx([c.frobenius(k) for c in self._f.coeffs()]))

    def factor(self) -> list[tuple["Poly", int]]:
        """Monic irreducible factors with multiplicity (leading unit dropped)."""
        _, facs = self._f.factor()
        out = [(self._new(g), int(e)) for g, e in facs]
        out.sort(key=lambda t: (t[0].degree, t[0].codes()))
        return out

    def roots(self) -> list[FieldElement]:
        """Distinct roots in the field of definition, sorted by code."""
        rs = [FieldElement(self.spec, r) for r, _ in self._f.roots()]
        rs.sort(key=int)
        return rs

    def to_spec(self, big: FieldSpec) -> "Poly":
        return embed(self, big)

    def __repr__(self):
        return f"Poly({format_poly(self)} over {self.spec!r})"

    def __str__(self):
        return format_poly(self)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.spec != b.spec:
        raise FieldMismatchError("poly_mul over different fields")
    return a * b


def poly_powmod(a: Poly, e: int, m: Poly) -> Poly:
    """a^e mod m by square-and-multiply on reduced residues."""
    if m.is_zero():
        raise ZeroDivisionError("zero modulus")
    if a.spec != m.spec:
        raise FieldMismatchError("poly_powmod over different fields")
    if e < 0:
        raise ValueError("negative exponent")
    if m.degree == 0:
        return Poly(a.spec)
    result = Poly(a.spec, [1]) % m
    base = a % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def squarefree(f: Poly) -> bool:
    """True iff f has no repeated factor over the algebraic closure."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree <= 0:
        return True
    df = f.derivative()
    if df.is_zero():
        # f is a p-th power of a non-constant polynomial
        return False
    return f.gcd(df).degree == 0


# ---------------------------------------------------------------------------
# embeddings and splitting fields


@functools.lru_cache(maxsize=256)
def _generator_image(small: FieldSpec, big: FieldSpec):
    if not big.contains_subfield(small):
        raise FieldMismatchError(f"{small!r} does not embed in {big!r}")
    if small.n == 1:
        return None
    m = big._pctx([big._ctx(c) for c in small.modulus])
    roots = [r for r, _ in m.roots()]
    return min(roots, key=big.code)


def embed(x, big: FieldSpec):
    """Image of a FieldElement or Poly under the canonical embedding."""
    if isinstance(x, Poly):
        if x.spec == big:
            return x
        img = [embed_raw(c, x.spec, big) for c in x.raw_coeffs()]
        return Poly._wrap(big, big._pctx(img))
    if isinstance(x, FieldElement):
        if x.spec == big:
            return x
        return FieldElement(big, embed_raw(x.raw, x.spec, big))
    raise TypeError(f"cannot embed {type(x).__name__}")


def embed_raw(raw, small: FieldSpec, big: FieldSpec):
    if small == big:
        return raw
    t = _generator_image(small, big)
    coeffs = raw.to_list()
    if t is None:
        return big._ctx(int(coeffs[0]) if coeffs else 0)
    acc = big._ctx.zero()
    for c in reversed(coeffs):
        acc = acc * t + big._ctx(int(c))
    return acc


def splitting_field(f: Poly) -> tuple[FieldSpec, list[FieldElement]]:
    """Smallest F_{p^N} (n | N) over which f splits, with all roots of f there.

    Roots are returned sorted by integer code.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no splitting field")
    if f.degree <= 0:
        return f.spec, []
    lcm = 1
    for g, _ in f.factor():
        lcm = lcm * g.degree // math.gcd(lcm, g.degree)
    big = f.spec if lcm == 1 else f.spec.extension(lcm)
    roots = embed(f, big).roots()
    return big, roots


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense matrix over a FieldSpec (rows of FieldElements)."""

    __slots__ = ("spec", "_rows")

    def __init__(self, spec: FieldSpec, rows: Iterable[Iterable]):
        self.spec = spec
        self._rows = tuple(tuple(spec(x).raw if not isinstance(x, FieldElement) else _same(spec, x).raw
                                 for x in row) for row in rows)
        if len({len(r) for r in self._rows}) > 1:
            raise ValueError("ragged matrix")

    @classmethod
    def _from_raw(cls, spec, rows):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, spec: FieldSpec, r: int, c: int) -> "Matrix":
        return cls(spec, [[0] * c for _ in range(r)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), (len(self._rows[0]) if self._rows else 0)

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.spec, self._rows[i][j])

    def rows(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.spec, x) for x in row] for row in self._rows]

    def codes(self) -> list[list[int]]:
        return [[self.spec.code(x) for x in row] for row in self._rows]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.spec != self.spec:
            raise FieldMismatchError("matrix product over different fields")
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError("shape mismatch")
        zero = self.spec._ctx.zero()
        cols = list(zip(*other._rows)) if other._rows else [()] * c
        out = []
        for row in self._rows:
            out_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix._from_raw(self.spec, out)

    def frobenius(self, k: int = 1) -> "Matrix":
        k %= self.spec.n
        if k == 0:
            return self
        return Matrix._from_raw(self.spec, [[x.frobenius(k) for x in row] for row in self._rows])

    def rank(self) -> int:
        return matrix_rank(self)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.spec == other.spec and self.codes() == other.codes()

    def __repr__(self):
        return f"Matrix({self.codes()} over {self.spec!r})"


def _same(spec, x: FieldElement) -> FieldElement:
    if x.spec != spec:
        raise FieldMismatchError("matrix entry from another field")
    return x


def matrix_rank(M: Matrix) -> int:
    """Rank by row reduction; exact because the field is finite."""
    rows = [list(r) for r in M._rows]
    nrows, ncols = M.shape
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        pivot_row = [x * inv for x in rows[rank]]
        rows[rank] = pivot_row
        for i in range(rank + 1, nrows):
            c = rows[i][col]
            if not c.is_zero():
                rows[i] = [a - c * b for a, b in zip(rows[i], pivot_row)]
        rank += 1
        if rank == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# text syntax:  c_k*x^k + ... + c_0, coefficients ints or [a0,a1,...] vectors

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+|\[[^\]]*\])\s*(?P<star>\*)?\s*)?
        (?P<x>x(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, spec: FieldSpec, var: str = "x") -> Poly:
    """Parse ``"2*x^3 - x + [1,2]"``-style input into a Poly over spec."""
    s = text.replace(var, "x").strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    terms: dict[int, FieldElement] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if m.group("coef") is None and m.group("x") is None:
            raise ValueError(f"dangling sign in {text!r}")
        if m.group("sign") is None and not first:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        if m.group("star") and m.group("x") is None:
            raise ValueError(f"'*' without variable in {text!r}")
        coef_txt = m.group("coef")
        if coef_txt is None:
            coef = spec.one()
        elif coef_txt.startswith("["):
            body = coef_txt[1:-1].strip()
            coef = spec([int(v) for v in body.split(",")] if body else [])
        else:
            coef = spec(int(coef_txt))
        if m.group("sign") == "-":
            coef = -coef
        if m.group("x") is None:
            e = 0
        else:
            e = int(m.group("exp")) if m.group("exp") else 1
        terms[e] = terms.get(e, spec.zero()) + coef
        pos = m.end()
        first = False
    deg = max(terms)
    return Poly(spec, [terms.get(k, spec.zero()) for k in range(deg + 1)])


def _coef_text(c: FieldElement) -> str:
    if int(c) < c.spec.p:
        return str(int(c))
    return "[" + ",".join(map(str, c.coeffs)) + "]"


def format_poly(f: Poly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(_coef_text(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{_coef_text(c)}*{mono}")
    return " + ".join(parts)
