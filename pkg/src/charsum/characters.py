"""Characters 2^q over Z3, function tables and character sums.

A function (Z2)^n -> Z3 is a :class:`FunctionTable` of 2^n values, indexed by
the assignment read as an integer with x1 as least significant bit. Since
2 * 2^q = 2^(q+1) in Z3, every character sum is a plain multiset of forms and
its 2-weight bound is the multiset size.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .forms import (
    FormatError,
    LinearForm,
    QuadraticForm,
    full_mask,
    gf2_rank,
    linear_product,
    pair_index,
    parse_form,
    witt_decompose,
)


@dataclass(frozen=True, eq=False)
class FunctionTable:
    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.uint8)
        if v.shape != (1 << self.n,):
            raise ValueError(f"table for n={self.n} needs {1 << self.n} entries, got {v.shape}")
        if (v > 2).any():
            raise ValueError("table entries must be in {0, 1, 2}")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_masks(cls, n: int, ones: int, twos: int) -> "FunctionTable":
        size = 1 << n
        nbytes = max(1, size // 8)
        o = np.unpackbits(np.frombuffer(int(ones).to_bytes(nbytes, "little"), dtype=np.uint8),
                          bitorder="little")[:size]
        t = np.unpackbits(np.frombuffer(int(twos).to_bytes(nbytes, "little"), dtype=np.uint8),
                          bitorder="little")[:size]
        return cls(n, o + 2 * t)

    @classmethod
    def parse(cls, text: str) -> "FunctionTable":
        s = text.strip()
        size = len(s)
        if size == 0 or size & (size - 1):
            raise FormatError(f"table length {size} is not a power of two")
        if set(s) - set("012"):
            raise FormatError("table characters must be 0, 1 or 2")
        return cls(size.bit_length() - 1, np.frombuffer(s.encode(), dtype=np.uint8) - ord("0"))

    def masks(self) -> tuple[int, int]:
        """(ones, twos) bitmasks over assignments."""
        o = np.packbits(self.values == 1, bitorder="little").tobytes()
        t = np.packbits(self.values == 2, bitorder="little").tobytes()
        return int.from_bytes(o, "little"), int.from_bytes(t, "little")

    def __add__(self, other: "FunctionTable") -> "FunctionTable":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return FunctionTable(self.n, (self.values + other.values) % 3)

    def __mul__(self, other: "FunctionTable") -> "FunctionTable":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return FunctionTable(self.n, (self.values.astype(np.int64) * other.values) % 3)

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def __str__(self) -> str:
        return (self.values + ord("0")).tobytes().decode()

    def __repr__(self) -> str:
        return f"FunctionTable(n={self.n}, {self})"


@dataclass(frozen=True)
class CharacterSum:
    n: int
    terms: tuple[QuadraticForm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        terms = tuple(self.terms)
        for q in terms:
            if q.n != self.n:
                raise ValueError(f"term {q} has n={q.n}, expected {self.n}")
        object.__setattr__(self, "terms", terms)

    @property
    def weight(self) -> int:
        return len(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "CharacterSum") -> "CharacterSum":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return CharacterSum(self.n, self.terms + other.terms)

    def same_terms(self, other: "CharacterSum") -> bool:
        """Multiset equality of the terms."""
        return self.n == other.n and Counter(self.terms) == Counter(other.terms)

    def reduced(self) -> "CharacterSum":
        """Merge terms sharing a non-constant part; q with q+1 cancels, as does q,q,q."""
        tally: dict[QuadraticForm, int] = {}
        for q in self.terms:
            base = QuadraticForm(q.n, q.quad, q.linear)
            tally[base] = (tally.get(base, 0) + (2 if q.constant else 1)) % 3
        out = []
        for base, c in tally.items():
            if c == 1:
                out.append(base)
            elif c == 2:
                out.append(base + QuadraticForm.one(self.n))
        return CharacterSum(self.n, tuple(out))

    @classmethod
    def parse(cls, text: str, n: int) -> "CharacterSum":
        s = text.strip()
        if not s:
            return cls(n)
        return cls(n, tuple(parse_form(part, n) for part in s.split(";")))

    def __str__(self) -> str:
        return " ; ".join(str(q) for q in self.terms)


# tables -----------------------------------------------------------------------

def _add_masks(a1: int, a2: int, b1: int, b2: int, full: int) -> tuple[int, int]:
    za = full & ~(a1 | a2)
    zb = full & ~(b1 | b2)
    return ((a1 & zb) | (za & b1) | (a2 & b2),
            (a2 & zb) | (za & b2) | (a1 & b1))


def character_table(q: QuadraticForm) -> FunctionTable:
    """Values 2^q(x) mod 3: 1 where q = 0 and 2 where q = 1."""
    m = q.truth_mask()
    return FunctionTable.from_masks(q.n, full_mask(q.n) & ~m, m)


def sum_masks(s: CharacterSum) -> tuple[int, int]:
    full = full_mask(s.n)
    a1 = a2 = 0
    for q in s.terms:
        m = q.truth_mask()
        a1, a2 = _add_masks(a1, a2, full & ~m, m, full)
    return a1, a2


def sum_table(s: CharacterSum) -> FunctionTable:
    return FunctionTable.from_masks(s.n, *sum_masks(s))


def support(t: FunctionTable) -> int:
    return int(np.count_nonzero(t.values))


def ones_twos(t: FunctionTable) -> tuple[int, int]:
    return int(np.count_nonzero(t.values == 1)), int(np.count_nonzero(t.values == 2))


def zero_table(n: int) -> FunctionTable:
    return FunctionTable(n, np.zeros(1 << n, dtype=np.uint8))


def and_table(n: int) -> FunctionTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    v = np.zeros(1 << n, dtype=np.uint8)
    v[-1] = 1
    return FunctionTable(n, v)


# constructions ---------------------------------------------------------------

def and_product_construction(n: int) -> CharacterSum:
    """Expand prod_k (2^1 + 2^(x_{2k-1} x_{2k})) into 2^(n/2) characters."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    idx = pair_index(n)
    terms = []
    for choice in itertools.product((False, True), repeat=n // 2):
        quad = 0
        const = 0
        for k, use_pair in enumerate(choice):
            if use_pair:
                quad |= 1 << idx[(2 * k, 2 * k + 1)]
            else:
                const ^= 1
        terms.append(QuadraticForm(n, quad, 0, const))
    return CharacterSum(n, tuple(terms))


def _hyperbolic_expansion(a: LinearForm, b: LinearForm) -> tuple[LinearForm, ...]:
    """2^(ab) = 2^1 + 2^(a+1) + 2^(b+1) + 2^(a+b)."""
    one = LinearForm(a.n, 0, 1)
    return (one, a + one, b + one, a + b)


def _expand_pairs(base: QuadraticForm, pairs: Sequence[tuple[LinearForm, LinearForm]]) -> CharacterSum:
    options = [_hyperbolic_expansion(a, b) for a, b in pairs]
    terms = []
    for choice in itertools.product(*options):
        q = base
        for lf in choice:
            q = q + lf
        terms.append(q)
    return CharacterSum(base.n, tuple(terms))


def expand_character(q: QuadraticForm) -> CharacterSum:
    """Write 2^q as a sum of at most 4^rank linear characters."""
    d = witt_decompose(q)
    return _expand_pairs(d.residual.to_quadratic(), d.pairs)


def complete_basis(n: int, rows: Iterable[int]) -> list[int]:
    """Standard basis vectors, in index order, that extend ``rows`` to a basis."""
    rows = list(rows)
    added = []
    for i in range(n):
        e = 1 << i
        if gf2_rank(rows + added + [e]) > gf2_rank(rows + added):
            added.append(e)
    return added


def expand_to_full_rank(q: QuadraticForm) -> CharacterSum:
    """Write 2^q as a sum of at most 4^c characters of Witt rank n/2.

    With m_1..m_2c completing the pair forms to a basis, q equals
    ``(q + sum m_{2k-1} m_{2k}) + sum m_{2k-1} m_{2k}``; the first part has
    full rank and each remaining product expands into four linear characters.
    """
    n = q.n
    if n % 2:
        raise ValueError("full rank is only defined for even n")
    d = witt_decompose(q)
    extra = complete_basis(n, [f.coeffs for pair in d.pairs for f in pair])
    ms = [LinearForm(n, v) for v in extra]
    pairs = list(zip(ms[0::2], ms[1::2]))
    base = q
    for a, b in pairs:
        base = base + linear_product(a, b)
    return _expand_pairs(base, pairs)


def shift_sum(s: CharacterSum, r: QuadraticForm) -> CharacterSum:
    """Multiply every character of ``s`` by 2^r."""
    if r.n != s.n:
        raise ValueError("dimension mismatch")
    return CharacterSum(s.n, tuple(q + r for q in s.terms))


# multilinear polynomials ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultilinearPoly:
    """Coefficients over Z3 indexed by variable subsets (bit i is x_{i+1})."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % 3
        if c.shape != (1 << self.n,):
            raise ValueError("coefficient vector must have length 2^n")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def terms(self) -> dict[frozenset[int], int]:
        out = {}
        for m in np.flatnonzero(self.coeffs):
            out[frozenset(i + 1 for i in range(self.n) if (int(m) >> i) & 1)] = int(self.coeffs[m])
        return out

    def table(self) -> FunctionTable:
        """Evaluate on every assignment (subset-sum transform)."""
        a = self.coeffs.copy()
        for i in range(self.n):
            v = a.reshape(-1, 2, 1 << i)
            v[:, 1, :] += v[:, 0, :]
        return FunctionTable(self.n, a % 3)

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.coeffs.tobytes()))


def interpolate(t: FunctionTable) -> MultilinearPoly:
    """The unique multilinear polynomial over Z3 agreeing with ``t``."""
    a = t.values.astype(np.int64)
    for i in range(t.n):
        v = a.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return MultilinearPoly(t.n, a % 3)


def poly_degree(p: MultilinearPoly) -> int:
    """Largest monomial size with nonzero coefficient; -1 for the zero polynomial."""
    nz = np.flatnonzero(p.coeffs)
    if nz.size == 0:
        return -1
    return int(np.bitwise_count(nz.astype(np.uint64)).max())


def check_tradeoff(t: FunctionTable, w: int) -> bool:
    """Whether w^2 * support(t) >= 2^n for a table known to have 2-weight <= w."""
    if w < 1:
        raise ValueError("w must be >= 1")
    return w * w * support(t) >= (1 << t.n)
