"""Permutation groups S3 and G72 and programs over them.

G72 acts on the nine points (u, v) of Z3 x Z3, numbered 3u + v + 1:
a shifts u, b shifts v, c swaps u and v, d negates u and e negates v.
Products read left to right: ``g * h`` applies g first, then h.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .forms import FormatError


@dataclass(frozen=True)
class Permutation:
    """mapping[i] is the image of point i (0-based)."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"{m} is not a permutation")
        object.__setattr__(self, "mapping", m)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.mapping)

    def __call__(self, point: int) -> int:
        return self.mapping[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return mul(self, other)

    def __pow__(self, k: int) -> "Permutation":
        out = Permutation.identity(self.size)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.size):
            if start in seen or self.mapping[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.mapping[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.mapping[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)


def mul(g: Permutation, h: Permutation) -> Permutation:
    """g then h."""
    if g.size != h.size:
        raise ValueError(f"size mismatch: {g.size} vs {h.size}")
    return Permutation(tuple(h.mapping[g.mapping[i]] for i in range(g.size)))


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, size: int) -> Permutation:
    """Cycle notation over points 1..size, e.g. ``"(1 2)(2 3 1)"``.

    Several cycles are multiplied left to right. Points may be separated by
    spaces or commas; with at most nine points they may also be run together.
    """
    s = text.strip()
    if s in ("", "1", "()"):
        return Permutation.identity(size)
    if _CYCLE.sub("", s).strip():
        raise FormatError(f"cannot parse cycle notation {text!r}")
    out = Permutation.identity(size)
    for body in _CYCLE.findall(s):
        body = body.strip()
        if not body:
            continue
        if not re.fullmatch(r"[\d\s,]+", body):
            raise FormatError(f"bad cycle ({body})")
        if re.search(r"[\s,]", body):
            pts = [int(p) for p in re.split(r"[\s,]+", body)]
        elif size <= 9:
            pts = [int(ch) for ch in body]
        else:
            pts = [int(body)]
        if len(set(pts)) != len(pts) or any(not 1 <= p <= size for p in pts):
            raise FormatError(f"bad cycle ({body}) for {size} points")
        m = list(range(size))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            m[a - 1] = b - 1
        out = out * Permutation(tuple(m))
    return out


def closure(generators: Iterable[Permutation]) -> set[Permutation]:
    """The group generated by ``generators`` (breadth-first over products)."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    e = Permutation.identity(gens[0].size)
    seen = {e}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen


# concrete groups ------------------------------------------------------------------

def _z3z3(f) -> Permutation:
    return Permutation(tuple(3 * (u2 % 3) + (v2 % 3)
                             for u in range(3) for v in range(3)
                             for u2, v2 in [f(u, v)]))


def g72_generators() -> dict[str, Permutation]:
    return {
        "a": _z3z3(lambda u, v: (u + 1, v)),
        "b": _z3z3(lambda u, v: (u, v + 1)),
        "c": _z3z3(lambda u, v: (v, u)),
        "d": _z3z3(lambda u, v: (-u, v)),
        "e": _z3z3(lambda u, v: (u, -v)),
    }


def s3_generators() -> dict[str, Permutation]:
    return {"s": parse_cycles("(1 2)", 3), "t": parse_cycles("(1 2 3)", 3)}


G72_RELATIONS = (
    "aaa=1", "bbb=1", "ab=ba",
    "cc=1", "cac=b", "cdc=e",
    "dd=1", "dad=aa", "db=bd",
    "ee=1", "ebe=bb", "ea=ae",
)


def eval_word(word: str, gens: dict[str, Permutation]) -> Permutation:
    """Left-to-right product of generator letters; ``"1"`` is the identity."""
    size = next(iter(gens.values())).size
    out = Permutation.identity(size)
    w = word.strip()
    if w in ("", "1"):
        return out
    for ch in w:
        if ch not in gens:
            raise FormatError(f"unknown generator {ch!r} in word {word!r}")
        out = out * gens[ch]
    return out


def check_relations(relations: Sequence[str] = G72_RELATIONS,
                    gens: dict[str, Permutation] | None = None) -> dict[str, bool]:
    gens = g72_generators() if gens is None else gens
    out = {}
    for rel in relations:
        lhs, rhs = rel.split("=")
        out[rel] = eval_word(lhs, gens) == eval_word(rhs, gens)
    return out


def shortest_words(gens: dict[str, Permutation]) -> dict[Permutation, str]:
    """A shortest generator word for each group element ("1" for identity)."""
    size = next(iter(gens.values())).size
    e = Permutation.identity(size)
    words = {e: "1"}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for name in sorted(gens):
            h = g * gens[name]
            if h not in words:
                words[h] = name if words[g] == "1" else words[g] + name
                queue.append(h)
    return words


# programs -------------------------------------------------------------------------

@dataclass(frozen=True)
class Instruction:
    bit: int  # 1-based input position
    zero: Permutation
    one: Permutation


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]
    accepting: frozenset[Permutation]
    size: int
    width: int = 0  # declared input width; 0 means "largest referenced bit"

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for ins in self.instructions:
            if ins.bit < 1 or (self.width and ins.bit > self.width):
                raise ValueError(f"instruction reads bit {ins.bit} outside the input width")
            if ins.zero.size != self.size or ins.one.size != self.size:
                raise ValueError("instruction element acts on the wrong point set")

    def __len__(self) -> int:
        return len(self.instructions)


def eval_program(p: Program, bits: Sequence[int] | str) -> tuple[Permutation, bool]:
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits.strip()]
    out = Permutation.identity(p.size)
    for ins in p.instructions:
        if ins.bit > len(bits):
            raise IndexError(f"program reads bit {ins.bit} but input has {len(bits)} bits")
        out = out * (ins.one if bits[ins.bit - 1] else ins.zero)
    return out, out in p.accepting


GROUPS = {"G72": 9, "S3": 3}


def parse_element(text: str, group: str) -> Permutation:
    """A G72 word over a..e, or an S3 element in cycle notation."""
    if group == "G72":
        t = text.strip()
        if t.startswith("("):
            return parse_cycles(t, 9)
        return eval_word(t, g72_generators())
    if group == "S3":
        return parse_cycles(text, 3)
    raise FormatError(f"unknown group {group!r}")


def format_element(g: Permutation, group: str) -> str:
    if group == "G72":
        return shortest_words(g72_generators()).get(g, str(g))
    return str(g)


def parse_program(text: str) -> Program:
    """Line format::

        group=G72
        accept=1;ab
        bit=1 zero=1 one=a
    """
    group = "G72"
    accept_text = None
    width = 0
    raw_ins = []
    for raw in text.strip().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("group="):
            group = line.split("=", 1)[1].strip()
            if group not in GROUPS:
                raise FormatError(f"unknown group {group!r}")
        elif line.startswith("accept="):
            accept_text = line.split("=", 1)[1]
        elif line.startswith("width="):
            width = int(line.split("=", 1)[1])
        else:
            m = re.fullmatch(r"bit=(\d+)\s+zero=(.*?)\s+one=(.*)", line)
            if m is None:
                raise FormatError(f"bad program line {line!r}")
            raw_ins.append((int(m.group(1)), m.group(2), m.group(3)))
    ins = tuple(Instruction(b, parse_element(z, group), parse_element(o, group)) for b, z, o in raw_ins)
    accepting = frozenset(parse_element(a, group) for a in (accept_text or "").split(";") if a.strip())
    return Program(ins, accepting, GROUPS[group], width)


def format_program(p: Program, group: str = "G72") -> str:
    lines = [f"group={group}"]
    if p.width:
        lines.append(f"width={p.width}")
    lines.append("accept=" + ";".join(sorted(format_element(a, group) for a in p.accepting)))
    for ins in p.instructions:
        lines.append(f"bit={ins.bit} zero={format_element(ins.zero, group)} one={format_element(ins.one, group)}")
    return "\n".join(lines) + "\n"
