"""Words over the alphabet {1,2,3}: enumeration, ordering, maps and cylinders.

A word is a plain digit string like ``"123"`` (the empty string is the
identity).  The word ``u = u1...un`` addresses the composition
``f_{u1} o ... o f_{un}`` and the cylinder interval ``f_u(I)``.

Two orders appear:

* plain enumeration order: ordinary string order with 1 < 2 < 3;
* the chain order on {1,2}^k used by the cylinder-geometry results, in which
  the *leftmost* symbol is least significant (1^k is smallest, 2^k largest,
  and the successor of ``2^m 1 u`` is ``1^m 2 u``).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from .moebius import (
    IFSInstance,
    Interval,
    Matrix2,
    MoebiusMap,
    RationalLike,
    as_fraction,
    family_matrices,
    invariant_interval,
)

FAMILY_ALPHABET = "123"
DEFAULT_MAX_LEVEL = 12


def max_level() -> int:
    """Enumeration depth cap; override with the IFSLAB_MAX_LEVEL env var."""
    raw = os.environ.get("IFSLAB_MAX_LEVEL")
    if raw is None:
        return DEFAULT_MAX_LEVEL
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"IFSLAB_MAX_LEVEL must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"IFSLAB_MAX_LEVEL must be >= 1, got {value}")
    return value


def check_level(n: int) -> int:
    if n > max_level():
        raise ValueError(f"level {n} exceeds the enumeration cap {max_level()} (set IFSLAB_MAX_LEVEL to raise it)")
    return n


def iter_words(alphabet: str, n: int) -> Iterator[str]:
    """All length-n words in plain order, streamed (never materialized)."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    symbols = sorted(alphabet)
    for combo in itertools.product(symbols, repeat=n):
        yield "".join(combo)


def enumerate_words(alphabet: str, n: int) -> list[str]:
    check_level(n)
    return list(iter_words(alphabet, n))


def _chain_key(word: str) -> int:
    key = 0
    for i, ch in enumerate(word):
        if ch == "2":
            key |= 1 << i
        elif ch != "1":
            raise ValueError(f"chain order is defined on {{1,2}} words only, got {word!r}")
    return key


def lex_compare(v: str, w: str) -> int:
    """-1/0/1 comparison in the chain order on {1,2}^k (equal lengths required)."""
    if len(v) != len(w):
        raise ValueError(f"chain order compares equal lengths only: {v!r} vs {w!r}")
    kv, kw = _chain_key(v), _chain_key(w)
    return (kv > kw) - (kv < kw)


def chain_sorted(k: int) -> list[str]:
    """All of {1,2}^k listed in chain order, from 1^k up to 2^k."""
    return sorted(iter_words("12", k), key=_chain_key)


def lex_successor(v: str) -> str | None:
    """The chain-order successor of v in {1,2}^|v|: 2^m 1 u -> 1^m 2 u."""
    _chain_key(v)
    m = 0
    while m < len(v) and v[m] == "2":
        m += 1
    if m == len(v):
        return None  # v = 2^k is the maximum
    return "1" * m + "2" + v[m + 1:]


def word_matrix(u: str, generators: Sequence[Matrix2], alphabet: str = FAMILY_ALPHABET) -> Matrix2:
    """Exact matrix of the composition addressed by u (left-to-right product)."""
    index = {ch: i for i, ch in enumerate(alphabet)}
    result = Matrix2.identity()
    for ch in u:
        result = result @ generators[index[ch]]
    return result


def map_of_word(u: str, t: RationalLike) -> MoebiusMap:
    """The composition f_{u1} o ... o f_{un} of the family at parameter t."""
    t = as_fraction(t)
    if t <= 0:
        raise ValueError(f"parameter must be positive, got {t}")
    return MoebiusMap(word_matrix(u, family_matrices(t)))


def cylinder(u: str, t: RationalLike) -> Interval:
    """The exact cylinder interval f_u([0, 2t/3])."""
    return map_of_word(u, t).image(invariant_interval(t))


def iter_compositions(
    generators: Sequence[Matrix2],
    n: int,
    alphabet: str = FAMILY_ALPHABET,
) -> Iterator[tuple[str, Matrix2]]:
    """(word, matrix) for every length-n word, via one product per tree node."""
    check_level(n)
    if len(alphabet) != len(generators):
        raise ValueError(f"alphabet {alphabet!r} does not label {len(generators)} generators")

    def walk(prefix: str, matrix: Matrix2) -> Iterator[tuple[str, Matrix2]]:
        if len(prefix) == n:
            yield prefix, matrix
            return
        for ch, g in zip(alphabet, generators):
            yield from walk(prefix + ch, matrix @ g)

    yield from walk("", Matrix2.identity())


class SubsystemVariant(Enum):
    """Which derived word set generates the subsystem.

    FULL: every length-n word containing at least one 3 (3^n - 2^n words).
    TILDE: every word v3 with v over {1,2} and total length <= n (2^n - 1 words).
    """

    FULL = "full"
    TILDE = "tilde"


@dataclass(frozen=True)
class SubsystemSpec:
    t: Fraction
    level: int
    variant: SubsystemVariant

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", as_fraction(self.t))
        if self.t <= 0:
            raise ValueError(f"parameter must be positive, got {self.t}")
        if self.level < 1:
            raise ValueError(f"subsystem level must be >= 1, got {self.level}")

    def words(self) -> list[str]:
        check_level(self.level)
        if self.variant is SubsystemVariant.FULL:
            return [u for u in iter_words(FAMILY_ALPHABET, self.level) if "3" in u]
        return [v + "3" for k in range(self.level) for v in iter_words("12", k)]


def build_subsystem(spec: SubsystemSpec) -> IFSInstance:
    """Realize the subsystem words as an IFS on the family's invariant interval."""
    words = spec.words()
    generators = family_matrices(spec.t)
    maps = [MoebiusMap(word_matrix(u, generators)) for u in words]
    return IFSInstance.build(maps, invariant_interval(spec.t), names=words)
