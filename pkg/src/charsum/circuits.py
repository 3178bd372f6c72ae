"""MOD3 of MOD2 (of AND2) circuits and their translation to character sums.

A circuit accepts x exactly when its character sum vanishes at x. A MOD_m
gate outputs 1 iff the number of 1s on its input wires is 0 mod m; wires may
repeat, so a gate can read the same source more than once.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .characters import CharacterSum, sum_table
from .forms import FormatError, QuadraticForm, pair_index

INPUT, CONST, MOD2, MOD3, AND2 = "INPUT", "CONST", "MOD2", "MOD3", "AND2"
KINDS = (INPUT, CONST, MOD2, MOD3, AND2)


class StructureError(ValueError):
    """Malformed wiring: forward or dangling references, bad arity."""


class ShapeError(ValueError):
    """The circuit is valid but not of the shape a converter understands."""


@dataclass(frozen=True)
class Gate:
    kind: str
    inputs: tuple[int, ...] = ()
    arg: int = 0  # variable index (1-based) for INPUT, bit for CONST


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for k, g in enumerate(self.gates):
            if g.kind not in KINDS:
                raise StructureError(f"g{k}: unknown gate kind {g.kind!r}")
            if any(not 0 <= i < k for i in g.inputs):
                raise StructureError(f"g{k}: inputs must refer to earlier gates (acyclic, topological order)")
            if g.kind in (INPUT, CONST) and g.inputs:
                raise StructureError(f"g{k}: {g.kind} takes no wires")
            if g.kind == INPUT and g.arg < 1:
                raise StructureError(f"g{k}: input variables are numbered from 1")
            if g.kind == CONST and g.arg not in (0, 1):
                raise StructureError(f"g{k}: constant must be 0 or 1")
            if g.kind == AND2 and len(g.inputs) != 2:
                raise StructureError(f"g{k}: AND2 needs exactly two inputs")
        if not 0 <= self.output < len(self.gates):
            raise StructureError("output gate out of range")

    @property
    def num_inputs(self) -> int:
        return max((g.arg for g in self.gates if g.kind == INPUT), default=0)

    def depth(self) -> int:
        d = []
        for g in self.gates:
            d.append(1 + max((d[i] for i in g.inputs), default=-1) if g.kind not in (INPUT, CONST) else 0)
        return d[self.output]

    def size(self) -> int:
        return len(self.gates)

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)


def evaluate(c: Circuit, x: Sequence[int]) -> int:
    if len(x) != c.num_inputs:
        raise ValueError(f"assignment has length {len(x)}, circuit reads {c.num_inputs} inputs")
    vals = []
    for g in c.gates:
        if g.kind == INPUT:
            v = int(x[g.arg - 1])
        elif g.kind == CONST:
            v = g.arg
        elif g.kind == AND2:
            v = vals[g.inputs[0]] & vals[g.inputs[1]]
        else:
            m = 2 if g.kind == MOD2 else 3
            v = int(sum(vals[i] for i in g.inputs) % m == 0)
        vals.append(v)
    return vals[c.output]


def acceptance_vector(c: Circuit) -> np.ndarray:
    """evaluate(c, x) for every assignment, indexed with x1 as low bit."""
    n = c.num_inputs
    return np.array([evaluate(c, [(x >> i) & 1 for i in range(n)]) for x in range(1 << n)], dtype=np.uint8)


def zero_set(s: CharacterSum) -> np.ndarray:
    """1 where the character sum vanishes."""
    return (sum_table(s).values == 0).astype(np.uint8)


# characters -> circuits ---------------------------------------------------------

def _build(s: CharacterSum, allow_quadratic: bool) -> Circuit:
    n = s.n
    gates = [Gate(INPUT, arg=i + 1) for i in range(n)]
    one = len(gates)
    gates.append(Gate(CONST, arg=1))
    top = []
    for q in s.terms:
        if q.quad and not allow_quadratic:
            raise ValueError(f"term {q} is not linear")
        wires = [i for i in range(n) if (q.linear >> i) & 1]
        for i, j in q.quadratic_terms():
            gates.append(Gate(AND2, (i, j)))
            wires.append(len(gates) - 1)
        if q.constant:
            wires.append(one)
        # the extra constant flips the MOD2 output so the gate computes q itself
        wires.append(one)
        gates.append(Gate(MOD2, tuple(wires)))
        top.append(len(gates) - 1)
        gates.append(Gate(MOD2, (one, one)))
        top.append(len(gates) - 1)
    gates.append(Gate(MOD3, tuple(top)))
    return Circuit(tuple(gates), len(gates) - 1)


def characters_to_depth2(s: CharacterSum) -> Circuit:
    """MOD3 of MOD2 gates computing 'the linear character sum is 0'."""
    return _build(s, allow_quadratic=False)


def characters_to_depth3(s: CharacterSum) -> Circuit:
    """As the depth-2 construction, with quadratic terms read through AND2 gates."""
    return _build(s, allow_quadratic=True)


# circuits -> characters ---------------------------------------------------------

def _mod2_form(c: Circuit, k: int, n: int, allow_and: bool) -> QuadraticForm:
    """The form computed by MOD2 gate k: 1 + parity of its inputs."""
    idx = pair_index(n) if n >= 2 else {}
    quad = linear = 0
    const = 1
    for w in c.gates[k].inputs:
        g = c.gates[w]
        if g.kind == INPUT:
            linear ^= 1 << (g.arg - 1)
        elif g.kind == CONST:
            const ^= g.arg
        elif g.kind == AND2 and allow_and:
            a, b = (c.gates[i] for i in g.inputs)
            if a.kind != INPUT or b.kind != INPUT:
                raise ShapeError(f"g{w}: AND2 inputs must be circuit inputs")
            if a.arg == b.arg:
                linear ^= 1 << (a.arg - 1)
            else:
                i, j = sorted((a.arg - 1, b.arg - 1))
                quad ^= 1 << idx[(i, j)]
        else:
            raise ShapeError(f"g{k}: MOD2 gate reads a {g.kind} gate")
    return QuadraticForm(n, quad, linear, const)


def _to_characters(c: Circuit, allow_and: bool) -> CharacterSum:
    out = c.gates[c.output]
    if out.kind != MOD3:
        raise ShapeError("output gate must be MOD3")
    n = max(c.num_inputs, 1)
    terms = []
    offset = 0
    for w in out.inputs:
        if c.gates[w].kind != MOD2:
            raise ShapeError(f"MOD3 output reads g{w}, which is not MOD2")
        f = _mod2_form(c, w, n, allow_and)
        if f.quad == 0 and f.linear == 0:
            offset += f.constant
        else:
            # a bit b equals 2^b + 2 in Z3
            terms.append(f)
            offset += 2
    offset %= 3
    if offset == 1:
        terms.append(QuadraticForm.zero(n))
    elif offset == 2:
        terms.append(QuadraticForm.one(n))
    return CharacterSum(n, tuple(terms))


def depth2_to_characters(c: Circuit) -> CharacterSum:
    return _to_characters(c, allow_and=False)


def depth3_to_characters(c: Circuit) -> CharacterSum:
    return _to_characters(c, allow_and=True)


# netlist text ---------------------------------------------------------------------

_LINE = re.compile(r"^g(\d+)\s*=\s*([A-Z0-9]+)\((.*)\)$")


def format_netlist(c: Circuit) -> str:
    lines = []
    for k, g in enumerate(c.gates):
        if g.kind in (INPUT, CONST):
            args = str(g.arg)
        else:
            args = ", ".join(f"g{i}" for i in g.inputs)
        lines.append(f"g{k} = {g.kind}({args})")
    lines.append(f"output g{c.output}")
    return "\n".join(lines) + "\n"


def parse_netlist(text: str) -> Circuit:
    gates = []
    output = None
    for raw in text.strip().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("output"):
            m = re.fullmatch(r"output\s+g(\d+)", line)
            if m is None:
                raise FormatError(f"bad output line {line!r}")
            output = int(m.group(1))
            continue
        m = _LINE.match(line)
        if m is None:
            raise FormatError(f"bad gate line {line!r}")
        k, kind, args = int(m.group(1)), m.group(2), m.group(3).strip()
        if k != len(gates):
            raise FormatError(f"gate g{k} out of order; expected g{len(gates)}")
        if kind not in KINDS:
            raise FormatError(f"unknown gate kind {kind!r}")
        if kind in (INPUT, CONST):
            gates.append(Gate(kind, arg=int(args)))
        else:
            refs = [a.strip() for a in args.split(",")] if args else []
            if any(not re.fullmatch(r"g\d+", r) for r in refs):
                raise FormatError(f"bad wire list {args!r}")
            gates.append(Gate(kind, tuple(int(r[1:]) for r in refs)))
    if output is None:
        raise FormatError("missing output line")
    return Circuit(tuple(gates), output)


def preserves_acceptance(c: Circuit, s: CharacterSum) -> bool:
    """Whether c accepts exactly the zeros of s, over every assignment."""
    if c.num_inputs != s.n:
        return False
    return bool(np.array_equal(acceptance_vector(c), zero_set(s)))


__all__ = [
    "Circuit",
    "Gate",
    "ShapeError",
    "StructureError",
    "acceptance_vector",
    "characters_to_depth2",
    "characters_to_depth3",
    "depth2_to_characters",
    "depth3_to_characters",
    "evaluate",
    "format_netlist",
    "parse_netlist",
    "preserves_acceptance",
    "zero_set",
]
