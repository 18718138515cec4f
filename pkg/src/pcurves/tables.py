"""Vectorised exp/log/Zech tables for whole-field enumeration.

Point counting touches every element of F_Q, so it runs on numpy arrays of
discrete logarithms instead of flint objects.  An element is stored as its
log to a fixed primitive root, with ``zero_log = Q - 1`` standing for 0.
"""
from __future__ import annotations

import functools
import math
from typing import Iterator, Sequence

import numpy as np

from .ffpoly import EnvelopeError, FieldElement, FieldSpec, Poly

MAX_TABLE_SIZE = 1 << 24
CHUNK = 1 << 19


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def primitive_element(spec: FieldSpec) -> FieldElement:
    """Smallest-code generator of the multiplicative group."""
    order = spec.q - 1
    rs = _prime_factors(order)
    one = spec.ctx.one()
    for code in range(1, spec.q):
        g = spec.raw(code)
        if all(g ** (order // r) != one for r in rs):
            return FieldElement(spec, g)
    raise AssertionError("no primitive element")  # pragma: no cover


class LogTables:
    """exp, log and Zech tables of F_Q together with basis traces."""

    def __init__(self, spec: FieldSpec):
        Q = spec.q
        if Q > MAX_TABLE_SIZE:
            raise EnvelopeError(f"table for field of size {Q} exceeds {MAX_TABLE_SIZE}")
        self.spec = spec
        self.Q = Q
        self.order = Q - 1
        self.zero_log = Q - 1
        p, n = spec.p, spec.n
        self.gen = primitive_element(spec)
        pw = np.array([p**i for i in range(n)], dtype=np.int64)

        # first block of powers directly, later blocks as linear images of it
        B = max(1, math.isqrt(self.order))
        if B * B < self.order:
            B += 1
        g = self.gen.raw
        first = np.zeros((B, n), dtype=np.int64)
        acc = spec.ctx.one()
        for i in range(B):
            first[i] = _digits_of(spec, acc)
            acc = acc * g
        step = acc  # g^B
        exp = np.empty(B * ((self.order + B - 1) // B), dtype=np.int64)
        h = spec.ctx.one()
        basis = [spec.raw(p**j) for j in range(n)]
        for blk in range(len(exp) // B):
            L = np.array([_digits_of(spec, h * b) for b in basis], dtype=np.int64)
            exp[blk * B:(blk + 1) * B] = ((first @ L) % p) @ pw
            h = h * step
        self.exp = exp[: self.order].copy()
        log = np.full(Q, self.zero_log, dtype=np.int64)
        log[self.exp] = np.arange(self.order, dtype=np.int64)
        self.log = log

        # Zech: log(1 + g^k); adding 1 only touches the constant digit
        d0 = self.exp % p
        one_plus = np.where(d0 == p - 1, self.exp - (p - 1), self.exp + 1)
        self.zech = log[one_plus]

        traces = np.array([FieldElement(spec, b).trace() for b in basis], dtype=np.int64)
        self._basis_traces = traces
        self._pw = pw

    # scalar conversions ---------------------------------------------------
    def log_of(self, a) -> int:
        """Log of a FieldElement (or code) of this field."""
        code = int(a)
        return int(self.log[code])

    def codes_to_logs(self, codes: Sequence[int]) -> np.ndarray:
        return self.log[np.asarray(codes, dtype=np.int64)]

    # vector arithmetic ----------------------------------------------------
    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        z = self.zero_log
        out = (a + b) % self.order
        return np.where((a == z) | (b == z), z, out)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        z = self.zero_log
        diff = (b - a) % self.order
        zz = self.zech[np.where(a == z, 0, diff)]
        s = np.where(zz == z, z, (a + zz) % self.order)
        s = np.where(a == z, b, s)
        return np.where(b == z, a, s)

    def horner(self, coeff_logs: Sequence[int], x_logs: np.ndarray) -> np.ndarray:
        """Logs of sum c_k x^k at each x; coefficients given low to high."""
        acc = np.full(x_logs.shape, coeff_logs[-1], dtype=np.int64)
        for c in reversed(coeff_logs[:-1]):
            acc = self.mul(acc, x_logs)
            if c != self.zero_log:
                acc = self.add(acc, np.full_like(acc, c))
        return acc

    def chi(self, logs: np.ndarray) -> np.ndarray:
        """Quadratic character (odd characteristic)."""
        out = np.where(logs % 2 == 0, 1, -1).astype(np.int64)
        return np.where(logs == self.zero_log, 0, out)

    def trace(self, logs: np.ndarray) -> np.ndarray:
        """Absolute trace to F_p; zero maps to zero."""
        codes = np.where(logs == self.zero_log, 0, self.exp[np.minimum(logs, self.order - 1)])
        n, p = self.spec.n, self.spec.p
        tot = np.zeros_like(codes)
        for i in range(n):
            codes, r = np.divmod(codes, p)
            tot += r * self._basis_traces[i]
        return tot % p

    def x_chunks(self, chunk: int = CHUNK) -> Iterator[np.ndarray]:
        """Logs of all field elements (zero first) in chunks."""
        yield np.array([self.zero_log], dtype=np.int64)
        for s in range(0, self.order, chunk):
            yield np.arange(s, min(s + chunk, self.order), dtype=np.int64)


def _digits_of(spec: FieldSpec, raw) -> list[int]:
    coeffs = [int(c) for c in raw.to_list()]
    return coeffs + [0] * (spec.n - len(coeffs))


@functools.lru_cache(maxsize=4)
def tables_for(spec: FieldSpec) -> LogTables:
    return LogTables(spec)


def poly_logs(T: LogTables, f: Poly) -> list[int]:
    """Coefficient logs of f, which must already live in T.spec."""
    if f.spec != T.spec:
        raise ValueError("polynomial must be embedded in the table field first")
    if f.is_zero():
        return [T.zero_log]
    return [int(T.log[c]) for c in f.codes()]


def char_sum(T: LogTables, f: Poly) -> int:
    """sum over x in F_Q of chi(f(x))."""
    cl = poly_logs(T, f)
    tot = 0
    for xs in T.x_chunks():
        tot += int(T.chi(T.horner(cl, xs)).sum())
    return tot


def trace_zero_count(T: LogTables, num: Poly, den: Poly) -> tuple[int, int]:
    """(#x with den(x) != 0 and Tr(num(x)/den(x)) = 0, #x with den(x) = 0)."""
    nl, dl = poly_logs(T, num), poly_logs(T, den)
    z = T.zero_log
    good = poles = 0
    for xs in T.x_chunks():
        nv = T.horner(nl, xs)
        dv = T.horner(dl, xs)
        pole = dv == z
        val = np.where(nv == z, z, (nv - np.where(pole, 0, dv)) % T.order)
        tr = T.trace(val)
        good += int(((tr == 0) & ~pole).sum())
        poles += int(pole.sum())
    return good, poles
