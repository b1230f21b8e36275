"""Boolean functions as truth tables, and the classification predicates
(monotonicity per argument, local monotonicity, affinity, completeness).

Bit order: the output for arguments ``(a1, ..., ak)`` is stored at index
``sum(ai * 2**(k - i))``, so the first argument is the most significant bit.
``"0001"`` is conjunction, ``"1101"`` is implication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import ArityError, BasisError

MAX_ARITY = 10

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class TruthTable:
    name: str
    arity: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_ARITY:
            raise ArityError(f"{self.name}: arity {self.arity} outside 0..{MAX_ARITY}")
        if len(self.bits) != 1 << self.arity:
            raise ArityError(
                f"{self.name}: expected {1 << self.arity} bits for arity {self.arity}, "
                f"got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"{self.name}: bits must be 0/1")

    @classmethod
    def from_string(cls, name: str, bitstring: str) -> "TruthTable":
        n = len(bitstring)
        arity = n.bit_length() - 1
        if n == 0 or n != 1 << arity:
            raise ArityError(f"{name}: bitstring length {n} is not a power of two")
        if set(bitstring) - {"0", "1"}:
            raise ValueError(f"{name}: bitstring must consist of 0 and 1")
        return cls(name, arity, tuple(int(c) for c in bitstring))

    @classmethod
    def from_function(cls, name: str, arity: int, fn) -> "TruthTable":
        return cls(name, arity, tuple(int(bool(fn(*row))) for row in rows(arity)))

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def mask(self) -> int:
        """The table as an integer whose bit ``r`` is the output on row ``r``."""
        m = 0
        for r, b in enumerate(self.bits):
            if b:
                m |= 1 << r
        return m

    def __call__(self, *args) -> int:
        return evaluate(self, args)

    def __str__(self):
        return f"{self.name}/{self.arity}:{self.bitstring}"


def row_index(args: Sequence[int]) -> int:
    idx = 0
    for a in args:
        idx = (idx << 1) | (1 if a else 0)
    return idx


def rows(arity: int) -> Iterator[tuple[int, ...]]:
    """All argument vectors in table order."""
    return product((0, 1), repeat=arity)


def evaluate(tt: TruthTable, args: Sequence[int]) -> int:
    if len(args) != tt.arity:
        raise ArityError(f"{tt.name} expects {tt.arity} arguments, got {len(args)}")
    return tt.bits[row_index(args)]


def _check_index(tt: TruthTable, i: int) -> None:
    if not 1 <= i <= tt.arity:
        raise ArityError(f"argument index {i} out of range for {tt.name}/{tt.arity}")


def flip_pairs(tt: TruthTable, i: int) -> Iterator[tuple[int, int]]:
    """Yield ``(f(.., 0, ..), f(.., 1, ..))`` for every fixing of the other arguments."""
    _check_index(tt, i)
    shift = tt.arity - i
    for r in range(1 << tt.arity):
        if not (r >> shift) & 1:
            yield tt.bits[r], tt.bits[r | (1 << shift)]


def monotone_direction(tt: TruthTable, i: int) -> int | None:
    """+1 if non-decreasing in argument ``i``, -1 if non-increasing (and not
    constant in it), None if neither."""
    pairs = list(flip_pairs(tt, i))
    if all(lo <= hi for lo, hi in pairs):
        return 1
    if all(lo >= hi for lo, hi in pairs):
        return -1
    return None


def is_monotone_in_arg(tt: TruthTable, i: int) -> bool:
    return monotone_direction(tt, i) is not None


def is_locally_monotone(tt: TruthTable) -> bool:
    return all(is_monotone_in_arg(tt, i) for i in range(1, tt.arity + 1))


def is_affine(tt: TruthTable) -> bool:
    # each argument either never or always changes the output
    for i in range(1, tt.arity + 1):
        changes = {lo != hi for lo, hi in flip_pairs(tt, i)}
        if len(changes) > 1:
            return False
    return True


def _preserves(tt: TruthTable, value: int) -> bool:
    if tt.arity == 0:
        return tt.bits[0] == value
    return tt.bits[-1 if value else 0] == value


def _is_monotone(tt: TruthTable) -> bool:
    return all(monotone_direction(tt, i) == 1 for i in range(1, tt.arity + 1))


def _is_self_dual(tt: TruthTable) -> bool:
    if tt.arity == 0:
        return False
    top = (1 << tt.arity) - 1
    return all(tt.bits[r] != tt.bits[top ^ r] for r in range(1 << tt.arity))


def is_complete(basis: Iterable[TruthTable]) -> bool:
    """Post's criterion: some member escapes each of the five maximal clones.

    Nullary members act as constant functions.
    """
    fns = list(basis)
    return (
        any(not _preserves(f, 0) for f in fns)
        and any(not _preserves(f, 1) for f in fns)
        and any(not _is_monotone(f) for f in fns)
        and any(not is_affine(f) for f in fns)
        and any(not _is_self_dual(f) for f in fns)
    )


@dataclass(frozen=True)
class Basis:
    name: str
    functions: tuple[TruthTable, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        names = [f.name for f in self.functions]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise BasisError(f"basis {self.name!r}: duplicate function names {dupes}")

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)

    def __contains__(self, item) -> bool:
        if isinstance(item, str):
            return any(f.name == item for f in self.functions)
        return item in self.functions

    def get(self, name: str) -> TruthTable | None:
        for f in self.functions:
            if f.name == name:
                return f
        return None

    def names(self) -> list[str]:
        return [f.name for f in self.functions]

    def union(self, other: Iterable[TruthTable], name: str | None = None) -> "Basis":
        fns = list(self.functions)
        for g in other:
            existing = next((f for f in fns if f.name == g.name), None)
            if existing is None:
                fns.append(g)
            elif existing != g:
                raise BasisError(f"function name {g.name!r} has two different tables")
        return Basis(name or self.name, tuple(fns))

    def without(self, other: Iterable[TruthTable], name: str | None = None) -> "Basis":
        drop = set(other)
        return Basis(name or self.name, tuple(f for f in self.functions if f not in drop))

    @property
    def complete(self) -> bool:
        return is_complete(self.functions)

    @property
    def locally_monotone(self) -> bool:
        return all(is_locally_monotone(f) for f in self.functions)


def parse_basis(text: str, name: str = "basis") -> Basis:
    """Parse the line format ``name arity bitstring``; ``#`` starts a comment line."""
    fns = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise BasisError(f"line {lineno}: expected 'name arity bitstring', got {raw!r}")
        fname, arity_s, bitstring = parts
        if not _NAME_RE.match(fname) or fname == "dia":
            raise BasisError(f"line {lineno}: invalid function name {fname!r}")
        try:
            arity = int(arity_s)
        except ValueError:
            raise BasisError(f"line {lineno}: arity {arity_s!r} is not an integer") from None
        if not 0 <= arity <= MAX_ARITY:
            raise ArityError(f"line {lineno}: arity {arity} outside 0..{MAX_ARITY}")
        if len(bitstring) != 1 << arity:
            raise ArityError(
                f"line {lineno}: {fname} needs {1 << arity} bits for arity {arity}, "
                f"got {len(bitstring)}"
            )
        fns.append(TruthTable.from_string(fname, bitstring))
    return Basis(name, tuple(fns))


def load_basis(path: str | Path) -> Basis:
    path = Path(path)
    return parse_basis(path.read_text(), name=path.stem)


def format_basis(basis: Basis) -> str:
    return "".join(f"{f.name} {f.arity} {f.bitstring}\n" for f in basis)


TOP = TruthTable.from_string("top", "1")
BOT = TruthTable.from_string("bot", "0")
NOT = TruthTable.from_string("not", "10")
AND = TruthTable.from_string("and", "0001")
OR = TruthTable.from_string("or", "0111")
IMP = TruthTable.from_string("imp", "1101")
IFF = TruthTable.from_string("iff", "1001")
MAJ = TruthTable.from_string("maj", "00010111")
NAND = TruthTable.from_string("nand", "1110")
XOR = TruthTable.from_string("xor", "0110")

BUILTIN_FUNCTIONS = {f.name: f for f in (TOP, BOT, NOT, AND, OR, IMP, IFF, MAJ)}

DM = Basis("dm", (NOT, AND, OR, TOP, BOT))
EXTDM = Basis("extdm", (NOT, AND, OR, IFF, TOP, BOT))

BUILTIN_BASES = {"dm": DM, "extdm": EXTDM}
