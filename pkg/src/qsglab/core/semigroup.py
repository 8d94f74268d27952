"""Finite semigroups given by Cayley tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple


class MalformedTable(ValueError):
    pass


class NotAssociative(ValueError):
    def __init__(self, triple: Tuple[int, int, int]):
        s, t, r = triple
        super().__init__(f"({s}*{t})*{r} != {s}*({t}*{r})")
        self.triple = triple


@dataclass(frozen=True)
class ValidationReport:
    order: int
    associative: bool
    violation: Optional[Tuple[int, int, int]]
    identity: Optional[int]
    zero: Optional[int]
    right_translations: Tuple[bool, ...]

    @property
    def right_translations_bijective(self) -> bool:
        return all(self.right_translations)


def _check_shape(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if n == 0:
        raise MalformedTable("the empty semigroup is not accepted")
    for i, row in enumerate(table):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedTable(f"entry {v!r} in row {i} is not an element index in [0, {n})")
    return n


def validate_semigroup(table: Sequence[Sequence[int]]) -> ValidationReport:
    """Exhaustively check associativity and locate identity and zero.

    Raises :class:`MalformedTable` for a non-square table or an out-of-range
    entry.  Non-associativity is reported, not raised; the first violating
    triple in lexicographic order is recorded.
    """
    n = _check_shape(table)
    violation = None
    for s, t, r in product(range(n), repeat=3):
        if table[table[s][t]][r] != table[s][table[t][r]]:
            violation = (s, t, r)
            break
    identity = next(
        (e for e in range(n) if all(table[e][s] == s and table[s][e] == s for s in range(n))), None
    )
    zero = next((z for z in range(n) if all(table[z][s] == z and table[s][z] == z for s in range(n))), None)
    right = tuple(len({table[s][t] for s in range(n)}) == n for t in range(n))
    return ValidationReport(n, violation is None, violation, identity, zero, right)


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup; ``table[s][t]`` is the index of ``s*t``.

    Construction validates the table and rejects non-associative ones.
    """

    table: Tuple[Tuple[int, ...], ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        report = validate_semigroup(table)
        if not report.associative:
            raise NotAssociative(report.violation)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != len(table):
                raise MalformedTable(f"{len(names)} names given for order {len(table)}")
            object.__setattr__(self, "names", names)
        object.__setattr__(self, "_report", report)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def report(self) -> ValidationReport:
        return self._report

    @property
    def identity(self) -> Optional[int]:
        return self._report.identity

    @property
    def zero(self) -> Optional[int]:
        return self._report.zero

    def mul(self, s: int, t: int) -> int:
        return self.table[s][t]

    def right_translation_bijective(self, t: int) -> bool:
        return self._report.right_translations[t]

    def direct_product(self, other: "FiniteSemigroup") -> "FiniteSemigroup":
        """Componentwise product; the pair ``(s, t)`` has index ``s * |other| + t``."""
        m = other.order
        elems: List[Tuple[int, int]] = list(product(range(self.order), range(m)))
        table = [[self.mul(a, c) * m + other.mul(b, d) for c, d in elems] for a, b in elems]
        return FiniteSemigroup(table)
