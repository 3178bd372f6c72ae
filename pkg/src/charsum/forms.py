"""Linear and quadratic forms over Z2, Witt decomposition and normal forms.

Forms are stored as bitmasks. Variables are 1-based in the text format and
0-based internally. A quadratic form on ``n`` variables has a packed integer
code of width ``1 + n + n(n-1)/2``::

    bit 0                constant term
    bits 1 .. n          linear coefficients of x1 .. xn
    bits n+1 ..          quadratic coefficients of xi*xj, i < j, lexicographic

For n = 6 that is 22 bits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

MAX_VARS = 16


class FormatError(ValueError):
    """Raised when a form string cannot be parsed."""


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in [1, {MAX_VARS}], got {n}")


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (i, j), i < j, in the canonical lexicographic order."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pair_list(n))}


def code_width(n: int) -> int:
    return 1 + n + n * (n - 1) // 2


def _popcount(v: int) -> int:
    return bin(v).count("1")


@lru_cache(maxsize=None)
def variable_masks(n: int) -> tuple[int, ...]:
    """Truth masks of the variables: bit x of mask i is set iff x_{i+1} = 1.

    Assignments are indexed as n-bit integers with x1 the least significant bit.
    """
    size = 1 << n
    out = []
    for i in range(n):
        m = 0
        for x in range(size):
            if (x >> i) & 1:
                m |= 1 << x
        out.append(m)
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@dataclass(frozen=True)
class LinearForm:
    """An affine form ``sum a_i x_i + a_0`` over Z2."""

    n: int
    coeffs: int = 0
    constant: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.coeffs >> self.n:
            raise ValueError("linear coefficients set beyond n")
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    @classmethod
    def variable(cls, n: int, i: int) -> "LinearForm":
        """The form x_i (1-based)."""
        return cls(n, 1 << (i - 1), 0)

    def is_constant(self) -> bool:
        return self.coeffs == 0

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return LinearForm(self.n, self.coeffs ^ other.coeffs, self.constant ^ other.constant)

    def __call__(self, x: Sequence[int]) -> int:
        return self.to_quadratic()(x)

    def __mul__(self, other: "LinearForm") -> "QuadraticForm":
        return linear_product(self, other)

    def to_quadratic(self) -> "QuadraticForm":
        return QuadraticForm(self.n, 0, self.coeffs, self.constant)

    def __str__(self) -> str:
        return format_form(self.to_quadratic())


@dataclass(frozen=True)
class QuadraticForm:
    """A quadratic form over Z2 with multilinear terms only."""

    n: int
    quad: int = 0
    linear: int = 0
    constant: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.quad >> (self.n * (self.n - 1) // 2):
            raise ValueError("quadratic coefficients set beyond n(n-1)/2")
        if self.linear >> self.n:
            raise ValueError("linear coefficients set beyond n")
        if self.constant not in (0, 1):
            raise ValueError("constant must be 0 or 1")

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "QuadraticForm":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "QuadraticForm":
        return cls(n, 0, 0, 1)

    @classmethod
    def from_code(cls, n: int, code: int) -> "QuadraticForm":
        code = int(code)
        if code >> code_width(n):
            raise ValueError(f"code {code} is wider than {code_width(n)} bits")
        return cls(n, code >> (1 + n), (code >> 1) & ((1 << n) - 1), code & 1)

    @classmethod
    def parse(cls, text: str, n: int) -> "QuadraticForm":
        return parse_form(text, n)

    @classmethod
    def from_adjacency(cls, n: int, adj: Sequence[int], linear: int, constant: int) -> "QuadraticForm":
        quad = 0
        for k, (i, j) in enumerate(pair_list(n)):
            if (adj[i] >> j) & 1:
                quad |= 1 << k
        return cls(n, quad, linear, constant)

    # views ----------------------------------------------------------------

    @property
    def code(self) -> int:
        return self.constant | (self.linear << 1) | (self.quad << (1 + self.n))

    def adjacency(self) -> list[int]:
        """Row masks of the symmetric quadratic-coefficient matrix."""
        adj = [0] * self.n
        q = self.quad
        for k, (i, j) in enumerate(pair_list(self.n)):
            if (q >> k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        return adj

    def quadratic_terms(self) -> Iterator[tuple[int, int]]:
        q = self.quad
        for k, p in enumerate(pair_list(self.n)):
            if (q >> k) & 1:
                yield p

    def is_linear(self) -> bool:
        return self.quad == 0

    def pure_part(self) -> "QuadraticForm":
        """The form with linear and constant terms dropped."""
        return QuadraticForm(self.n, self.quad)

    def truth_mask(self) -> int:
        """Bitmask over the 2^n assignments where the form evaluates to 1."""
        vm = variable_masks(self.n)
        m = full_mask(self.n) if self.constant else 0
        for i in range(self.n):
            if (self.linear >> i) & 1:
                m ^= vm[i]
        for i, j in self.quadratic_terms():
            m ^= vm[i] & vm[j]
        return m

    def support(self) -> int:
        """Number of assignments on which the form equals 1."""
        return _popcount(self.truth_mask())

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "QuadraticForm | LinearForm") -> "QuadraticForm":
        if isinstance(other, LinearForm):
            other = other.to_quadratic()
        return add_forms(self, other)

    __radd__ = __add__

    def __call__(self, x: Sequence[int]) -> int:
        return eval_form(self, x)

    def __str__(self) -> str:
        return format_form(self)


def eval_form(q: QuadraticForm, x: Sequence[int]) -> int:
    """Evaluate ``q`` at the assignment ``x`` (sequence of n bits)."""
    if len(x) != q.n:
        raise ValueError(f"assignment has length {len(x)}, expected {q.n}")
    bits = 0
    for i, b in enumerate(x):
        if b not in (0, 1):
            raise ValueError("assignment entries must be bits")
        bits |= int(b) << i
    v = q.constant ^ (_popcount(q.linear & bits) & 1)
    for i, j in q.quadratic_terms():
        v ^= ((bits >> i) & (bits >> j)) & 1
    return v


def add_forms(a: QuadraticForm, b: QuadraticForm) -> QuadraticForm:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return QuadraticForm(a.n, a.quad ^ b.quad, a.linear ^ b.linear, a.constant ^ b.constant)


def linear_product(a: LinearForm, b: LinearForm) -> QuadraticForm:
    """The product of two affine forms, reduced with x_i^2 = x_i."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    n = a.n
    adj = [0] * n
    for s in range(n):
        t = 0
        if (a.coeffs >> s) & 1:
            t ^= b.coeffs
        if (b.coeffs >> s) & 1:
            t ^= a.coeffs
        adj[s] = t & ~(1 << s)
    linear = (a.coeffs & b.coeffs) ^ (b.coeffs if a.constant else 0) ^ (a.coeffs if b.constant else 0)
    return QuadraticForm.from_adjacency(n, adj, linear, a.constant & b.constant)


# text format ----------------------------------------------------------------

_TERM = re.compile(r"^(?:x(\d+))(?:\*?x(\d+))?$")


def parse_form(text: str, n: int) -> QuadraticForm:
    """Parse ``"x1x2+x3x4+x5+1"``. Repeated terms cancel mod 2."""
    _check_n(n)
    s = text.replace(" ", "")
    if not s:
        raise FormatError("empty form string")
    quad = linear = const = 0
    idx = pair_index(n)
    for term in s.split("+"):
        if term in ("0", "1"):
            const ^= int(term)
            continue
        m = _TERM.match(term)
        if m is None:
            raise FormatError(f"cannot parse term {term!r} in {text!r}")
        i = int(m.group(1))
        j = int(m.group(2)) if m.group(2) else None
        for v in (i, j):
            if v is not None and not 1 <= v <= n:
                raise FormatError(f"variable x{v} out of range for n={n}")
        if j is None or i == j:
            linear ^= 1 << (i - 1)
        else:
            a, b = sorted((i - 1, j - 1))
            quad ^= 1 << idx[(a, b)]
    return QuadraticForm(n, quad, linear, const)


def format_form(q: QuadraticForm) -> str:
    """Canonical text: quadratic terms lex, then linear ascending, then 1."""
    terms = [f"x{i + 1}x{j + 1}" for i, j in q.quadratic_terms()]
    terms += [f"x{i + 1}" for i in range(q.n) if (q.linear >> i) & 1]
    if q.constant:
        terms.append("1")
    return "+".join(terms) if terms else "0"


# Witt theory ------------------------------------------------------------------

@dataclass(frozen=True)
class WittDecomposition:
    n: int
    pairs: tuple[tuple[LinearForm, LinearForm], ...]
    residual: LinearForm

    @property
    def rank(self) -> int:
        return len(self.pairs)

    def recompose(self) -> QuadraticForm:
        q = self.residual.to_quadratic()
        for a, b in self.pairs:
            q = q + linear_product(a, b)
        return q

    def linear_forms(self) -> list[LinearForm]:
        """Pair forms in order, followed by the residual if it is nonconstant."""
        out = [f for pair in self.pairs for f in pair]
        if not self.residual.is_constant():
            out.append(self.residual)
        return out

    def __str__(self) -> str:
        lines = [f"rank={self.rank}"]
        lines += [f"pair={a} | {b}" for a, b in self.pairs]
        lines.append(f"residual={self.residual}")
        return "\n".join(lines)


def parse_decomposition(text: str, n: int) -> WittDecomposition:
    """Inverse of ``str(WittDecomposition)``."""
    pairs = []
    residual = None
    rank = None
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        if key == "rank":
            rank = int(value)
        elif key == "pair":
            a, b = value.split("|")
            pairs.append((_as_linear(parse_form(a, n)), _as_linear(parse_form(b, n))))
        elif key == "residual":
            residual = _as_linear(parse_form(value, n))
        else:
            raise FormatError(f"unexpected line {line!r}")
    if residual is None or rank != len(pairs):
        raise FormatError("incomplete decomposition text")
    return WittDecomposition(n, tuple(pairs), residual)


def _as_linear(q: QuadraticForm) -> LinearForm:
    if q.quad:
        raise FormatError(f"{q} is not linear")
    return LinearForm(q.n, q.linear, q.constant)


def witt_decompose(q: QuadraticForm) -> WittDecomposition:
    """Split ``q`` into hyperbolic pairs plus an affine residual.

    Pivots x_i are visited in ascending order; the partner x_j is the smallest
    variable sharing a quadratic term with x_i. The pair is
    ``(dq/dx_j, dq/dx_i)``, each derivative carrying the linear coefficient of
    its variable as constant bit, and ``q`` is replaced by ``q + l1*l2``, which
    no longer mentions x_i or x_j.
    """
    n = q.n
    adj = q.adjacency()
    lin = q.linear
    const = q.constant
    pairs = []
    for i in range(n):
        if not adj[i]:
            continue
        j = (adj[i] & -adj[i]).bit_length() - 1
        m1, c1 = adj[j], (lin >> j) & 1
        m2, c2 = adj[i], (lin >> i) & 1
        for s in range(n):
            t = 0
            if (m1 >> s) & 1:
                t ^= m2
            if (m2 >> s) & 1:
                t ^= m1
            adj[s] = (adj[s] ^ t) & ~(1 << s)
        lin ^= (m1 & m2) ^ (m1 if c2 else 0) ^ (m2 if c1 else 0)
        const ^= c1 & c2
        pairs.append((LinearForm(n, m1, c1), LinearForm(n, m2, c2)))
    assert not any(adj)
    return WittDecomposition(n, tuple(pairs), LinearForm(n, lin, const))


def witt_rank(q: QuadraticForm) -> int:
    return witt_decompose(q).rank


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of integer bit-vectors."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def normal_form(n: int, rank: int, residual_linear: bool, constant: int) -> QuadraticForm:
    """x1x2 + ... + x_{2r-1}x_{2r} [+ x_{2r+1}] [+ 1]."""
    if 2 * rank > n or (residual_linear and 2 * rank >= n):
        raise ValueError("no such normal form")
    idx = pair_index(n)
    quad = 0
    for k in range(rank):
        quad |= 1 << idx[(2 * k, 2 * k + 1)]
    linear = (1 << (2 * rank)) if residual_linear else 0
    return QuadraticForm(n, quad, linear, constant)


def witt_normal_form(q: QuadraticForm) -> QuadraticForm:
    d = witt_decompose(q)
    return normal_form(q.n, d.rank, not d.residual.is_constant(), d.residual.constant)


def witt_normal_forms(n: int) -> list[QuadraticForm]:
    """All normal forms on n variables, ordered by rank then residual type."""
    out = []
    for r in range(n // 2 + 1):
        for lin in (False, True):
            if lin and 2 * r >= n:
                continue
            for c in (0, 1):
                out.append(normal_form(n, r, lin, c))
    return out


# sampling and families ------------------------------------------------------

def random_form(n: int, stream: np.random.Generator) -> QuadraticForm:
    """A uniformly random form drawn from ``stream``."""
    _check_n(n)
    bits = stream.integers(0, 2, size=code_width(n), dtype=np.uint8)
    code = 0
    for k, b in enumerate(bits):
        code |= int(b) << k
    return QuadraticForm.from_code(n, code)


def family(q: QuadraticForm) -> Iterator[QuadraticForm]:
    """All 2^(n+1) forms sharing the quadratic part of ``q``."""
    for linear in range(1 << q.n):
        for c in (0, 1):
            yield QuadraticForm(q.n, q.quad, linear, c)


_AFFINE_BRUTE_FORCE_MAX_N = 10


def family_support_profile(n: int, r: int) -> dict[int, int]:
    """Support value -> number of forms, for a family of Witt rank ``r``.

    Rank 0 (affine) families are counted by brute force.
    """
    _check_n(n)
    if not 0 <= r <= n // 2:
        raise ValueError(f"rank {r} out of range for n={n}")
    size = 1 << (n + 1)
    if r == 0:
        if n <= _AFFINE_BRUTE_FORCE_MAX_N:
            prof: dict[int, int] = {}
            for f in family(QuadraticForm.zero(n)):
                s = f.support()
                prof[s] = prof.get(s, 0) + 1
            return dict(sorted(prof.items()))
        return {0: 1, 1 << (n - 1): size - 2, 1 << n: 1}
    half = 1 << (n - 1)
    delta = 1 << (n - r - 1)
    extreme = 1 << (2 * r)
    return {half + delta: extreme, half - delta: extreme, half: size - 2 * extreme}
