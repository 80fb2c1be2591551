"""Monotone maps between finite ordinals.

The ordinal [n] is the linearly ordered set {0, ..., n}.  An OrdinalMap
records a weakly increasing function [m] -> [n]; these maps carry the whole
face/degeneracy calculus of the library.

Composition convention, fixed once and used everywhere: ``compose(f, g)``
means "f first, then g", i.e. the function x |-> g(f(x)).  A simplicial
space acts contravariantly, so ``apply(compose(f, g), x) ==
apply(f, apply(g, x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement


@dataclass(frozen=True, slots=True)
class OrdinalMap:
    """A weakly increasing map [source_size] -> [target_size]."""

    source_size: int
    target_size: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.source_size < 0 or self.target_size < 0:
            raise ValueError("ordinal sizes must be >= 0")
        if len(self.values) != self.source_size + 1:
            raise ValueError(
                f"expected {self.source_size + 1} values, got {len(self.values)}"
            )
        for v in self.values:
            if not 0 <= v <= self.target_size:
                raise ValueError(f"value {v} outside [0, {self.target_size}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} are not weakly increasing")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_identity(self) -> bool:
        return self.source_size == self.target_size and all(
            v == i for i, v in enumerate(self.values)
        )

    @property
    def is_injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target_size + 1))

    def key(self) -> tuple:
        return (self.source_size, self.target_size, self.values)

    def __repr__(self):
        return f"OrdinalMap([{self.source_size}]->[{self.target_size}], {list(self.values)})"


def identity(n: int) -> OrdinalMap:
    return OrdinalMap(n, n, tuple(range(n + 1)))


def compose(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """The composite "f then g" (as functions, g after f)."""
    if f.target_size != g.source_size:
        raise ValueError(
            f"cannot compose [{f.source_size}]->[{f.target_size}] "
            f"with [{g.source_size}]->[{g.target_size}]"
        )
    return OrdinalMap(f.source_size, g.target_size, tuple(g(v) for v in f.values))


def coface(n: int, i: int) -> OrdinalMap:
    """The injection [n-1] -> [n] whose image omits i."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"no coface ({n}, {i})")
    return OrdinalMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))

def codegeneracy(n: int, j: int) -> OrdinalMap:
    """The surjection [n+1] -> [n] hitting j twice."""
    if n < 0 or not 0 <= j <= n:
        raise ValueError(f"no codegeneracy ({n}, {j})")
    return OrdinalMap(n + 1, n, tuple(v if v <= j else v - 1 for v in range(n + 2)))


def ez_factor(f: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """The unique factorization f = "epi then mono".

    Returns (epi, mono) with epi surjective, mono injective and
    compose(epi, mono) == f.
    """
    image = sorted(set(f.values))
    index = {v: i for i, v in enumerate(image)}
    k = len(image) - 1
    epi = OrdinalMap(f.source_size, k, tuple(index[v] for v in f.values))
    mono = OrdinalMap(k, f.target_size, tuple(image))
    return epi, mono


def collapsed_positions(s: OrdinalMap) -> tuple[int, ...]:
    """Positions i with s(i) == s(i+1), in decreasing order.

    For a surjection this is its normal-form degeneracy word: s equals the
    operator word s_{i1} s_{i2} ... with i1 > i2 > ... .
    """
    return tuple(
        sorted((i for i in range(s.source_size) if s(i) == s(i + 1)), reverse=True)
    )


def surjection_from_word(source_size: int, word: tuple[int, ...]) -> OrdinalMap:
    """Rebuild a surjection from its decreasing degeneracy word."""
    collapsed = set(word)
    if len(collapsed) != len(word) or any(
        not 0 <= i < source_size for i in word
    ):
        raise ValueError(f"bad degeneracy word {word} at source size {source_size}")
    values, v = [], 0
    for i in range(source_size + 1):
        values.append(v)
        if i not in collapsed:
            v += 1
    return OrdinalMap(source_size, source_size - len(word), tuple(values))


def all_monotone(m: int, n: int):
    """All weakly increasing maps [m] -> [n], in lexicographic order."""
    for values in combinations_with_replacement(range(n + 1), m + 1):
        yield OrdinalMap(m, n, values)


def all_surjections(m: int, k: int):
    """All monotone surjections [m] ->> [k], in lexicographic order."""
    if k > m or k < 0:
        return
    for collapsed in combinations(range(m), m - k):
        cset = set(collapsed)
        values, v = [], 0
        for i in range(m + 1):
            values.append(v)
            if i not in cset:
                v += 1
        yield OrdinalMap(m, k, tuple(values))


def all_injections(k: int, n: int):
    """All monotone injections [k] -> [n], in lexicographic order."""
    if k > n:
        return
    for values in combinations(range(n + 1), k + 1):
        yield OrdinalMap(k, n, values)
