"""Exact overlap search, semigroup freeness certification and separation metrics.

An *exact overlap* is a pair of distinct words inducing literally the same
matrix.  All generator products here have determinant 1 and nonnegative
entries, so matrix equality coincides with equality of the induced maps, and
every verdict below is a pure rational computation, reproducible bit for bit.

Freeness of the sub-semigroup generated by the first two maps is certified by
conjugating the (scaled) inverse generators into the integer matrices

    E = [[4, 0], [0, 1]],   F = [[4, 0], [1, 1]],

whose products are lower triangular with bottom row (m, 1): any product
ending in E has bottom-left divisible by 4, any ending in F has residue 1
mod 4, so no word in E can equal a word in F.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .moebius import Interval, Matrix2, MoebiusMap, RationalLike, as_fraction, family_matrices, invariant_interval, make_family
from .words import FAMILY_ALPHABET, check_level, iter_compositions

POINTWISE_ON_X = "POINTWISE_ON_X"
MATRIX_ENTRY = "MATRIX_ENTRY"


@dataclass(frozen=True)
class OverlapReport:
    """Outcome of an exhaustive exact-equality search over composition words."""

    t: Fraction | None
    level: int
    pairs: tuple[tuple[str, str], ...]
    words_searched: int
    note: str = ""

    @property
    def is_free_so_far(self) -> bool:
        return not self.pairs


def _bucket_pairs(buckets: dict, restrict=None) -> list[tuple[str, str]]:
    """All ordered word pairs sharing a bucket (exact equality re-verified)."""
    pairs = []
    for key, words in buckets.items():
        if len(words) < 2:
            continue
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                u, w = words[i], words[j]
                if restrict is not None and not restrict(u, w):
                    continue
                pairs.append((u, w))
    return pairs


def overlap_search_maps(
    maps: list[MoebiusMap],
    n: int,
    t: Fraction | None = None,
    alphabet: str | None = None,
) -> OverlapReport:
    """Exact overlap search for arbitrary user-supplied maps (equal lengths <= n)."""
    check_level(n)
    if alphabet is None:
        alphabet = "".join(str(i + 1) for i in range(len(maps)))
    generators = [f.matrix for f in maps]
    searched = 0
    pairs: list[tuple[str, str]] = []
    for k in range(1, n + 1):
        buckets: dict[tuple, list[str]] = {}
        for word, matrix in iter_compositions(generators, k, alphabet):
            searched += 1
            buckets.setdefault(matrix.entries(), []).append(word)
        pairs.extend(_bucket_pairs(buckets))
    return OverlapReport(t=t, level=n, pairs=tuple(pairs), words_searched=searched)


def exact_overlap_search(t: RationalLike, n: int) -> OverlapReport:
    """Search the family at parameter t for equal matrices among distinct words."""
    t = as_fraction(t)
    return overlap_search_maps(list(make_family(t).maps), n, t=t, alphabet=FAMILY_ALPHABET)


@dataclass(frozen=True)
class SeparationReport:
    """Minimum pairwise distance between distinct level-n words, and c_n = delta^(1/n).

    ``delta`` is an exact rational; only the root c_n is floating point.  The
    strong variant ranges over all distinct word pairs; the plain variant
    skips pairs whose matrices coincide exactly.
    """

    t: Fraction
    level: int
    metric_variant: str
    delta: Fraction
    c_n: float
    strong: bool
    pairs_compared: int
    equal_matrix_pairs: int
    probes: tuple[Fraction, ...] | None = None


def _min_pair_distance(items: list, distance) -> tuple[Fraction, int, int]:
    best: Fraction | None = None
    compared = 0
    zero_pairs = 0
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            d = distance(items[i], items[j])
            compared += 1
            if d == 0:
                zero_pairs += 1
            if best is None or d < best:
                best = d
    if best is None:
        raise ValueError("need at least two words to compare")
    return best, compared, zero_pairs


def sesc_metric(
    t: RationalLike,
    n: int,
    probes: list[RationalLike],
    maps: list[MoebiusMap] | None = None,
) -> SeparationReport:
    """Pointwise separation sup_{x in probes} |f_u(x) - f_w(x)|, minimized over pairs.

    ``maps`` substitutes a user-supplied system for the family at parameter t
    (t then only labels the report).
    """
    t = as_fraction(t)
    if not probes:
        raise ValueError("probe set must be nonempty")
    xs = [as_fraction(x) for x in probes]
    check_level(n)
    generators = family_matrices(t) if maps is None else [f.matrix for f in maps]
    alphabet = FAMILY_ALPHABET if maps is None else "".join(str(i + 1) for i in range(len(maps)))
    values = []
    for word, matrix in iter_compositions(generators, n, alphabet):
        f = MoebiusMap(matrix)
        values.append((word, tuple(f(x) for x in xs)))  # PoleError propagates

    def distance(p, q) -> Fraction:
        return max(abs(a - b) for a, b in zip(p[1], q[1]))

    delta, compared, zero_pairs = _min_pair_distance(values, distance)
    c_n = float(delta) ** (1.0 / n) if delta > 0 else 0.0
    return SeparationReport(
        t=t,
        level=n,
        metric_variant=POINTWISE_ON_X,
        delta=delta,
        c_n=c_n,
        strong=True,
        pairs_compared=compared,
        equal_matrix_pairs=zero_pairs,
        probes=tuple(xs),
    )


def fixed_point_probe(t: RationalLike) -> Fraction:
    """The right endpoint 2t/3 (the third map's fixed point), a natural probe."""
    return invariant_interval(t).right


def diophantine_metric(t: RationalLike, n: int, strong: bool = True) -> SeparationReport:
    """Entrywise matrix separation min over distinct word pairs of max |entry diff|.

    ``strong=True`` takes all distinct word pairs; ``strong=False`` only
    pairs with distinct matrices (exact coincidences are excluded and counted).
    """
    t = as_fraction(t)
    check_level(n)
    items = list(iter_compositions(family_matrices(t), n))
    best: Fraction | None = None
    compared = 0
    equal_pairs = 0
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            d = items[i][1].entry_distance(items[j][1])
            compared += 1
            if d == 0:
                equal_pairs += 1
                if not strong:
                    continue
            if best is None or d < best:
                best = d
    if best is None:
        best = Fraction(0)  # every pair coincided and was excluded
    c_n = float(best) ** (1.0 / n) if best > 0 else 0.0
    return SeparationReport(
        t=t,
        level=n,
        metric_variant=MATRIX_ENTRY,
        delta=best,
        c_n=c_n,
        strong=strong,
        pairs_compared=compared,
        equal_matrix_pairs=equal_pairs,
    )


# Integer conjugates of the (scaled, inverted) first two generators.
E_MATRIX = Matrix2(Fraction(4), Fraction(0), Fraction(0), Fraction(1))
F_MATRIX = Matrix2(Fraction(4), Fraction(0), Fraction(1), Fraction(1))
CONJUGATOR = Matrix2(Fraction(4), Fraction(0), Fraction(4, 3), Fraction(1))


@dataclass(frozen=True)
class ConjugacyResult:
    ok: bool
    from_first: Matrix2
    from_second: Matrix2
    expected_e: Matrix2 = E_MATRIX
    expected_f: Matrix2 = F_MATRIX
    conjugator: Matrix2 = CONJUGATOR


def appendix_conjugacy_check() -> ConjugacyResult:
    """Verify exactly that 2*R*G^-1*R^-1 maps the first two generators to E and F."""
    gen_a, gen_b, _ = family_matrices(Fraction(1))
    r_inv = CONJUGATOR.inverse()
    from_first = (CONJUGATOR @ gen_a.inverse() @ r_inv).scaled(2)
    from_second = (CONJUGATOR @ gen_b.inverse() @ r_inv).scaled(2)
    ok = from_first == E_MATRIX and from_second == F_MATRIX
    return ConjugacyResult(ok=ok, from_first=from_first, from_second=from_second)


def triangular_word_matrix(word: str) -> Matrix2:
    """Exact product of a word over {E, F} (left to right)."""
    lookup = {"E": E_MATRIX, "F": F_MATRIX}
    result = Matrix2.identity()
    for ch in word:
        result = result @ lookup[ch]
    return result


@dataclass(frozen=True)
class ResidueCheck:
    """One random word pair (X, Y) over {E, F} and the mod-4 obstruction data."""

    x_word: str
    y_word: str
    xe_bottom_left: int
    yf_bottom_left: int
    xe_residue: int
    yf_residue: int
    shape_ok: bool

    @property
    def ok(self) -> bool:
        return self.shape_ok and self.xe_residue == 0 and self.yf_residue == 1


def _triangular_shape_ok(m: Matrix2, length: int) -> bool:
    return (
        m.b == 0
        and m.d == 1
        and m.a == Fraction(4) ** length
        and m.c.denominator == 1
    )


def residue_freeness_check(sample_count: int, max_len: int, seed: int) -> list[ResidueCheck]:
    """Seeded random word pairs: bottom-left of X*E is 0 mod 4, of Y*F is 1 mod 4.

    The two residues can never agree, so no product ending in E equals one
    ending in F; together with cancellation this certifies freeness of the
    {E, F} semigroup, hence of the first two family generators.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    rng = random.Random(seed)
    checks = []
    for _ in range(sample_count):
        x_word = "".join(rng.choice("EF") for _ in range(rng.randint(0, max_len)))
        y_word = "".join(rng.choice("EF") for _ in range(rng.randint(0, max_len)))
        xe = triangular_word_matrix(x_word) @ E_MATRIX
        yf = triangular_word_matrix(y_word) @ F_MATRIX
        shape_ok = _triangular_shape_ok(xe, len(x_word) + 1) and _triangular_shape_ok(yf, len(y_word) + 1)
        checks.append(
            ResidueCheck(
                x_word=x_word,
                y_word=y_word,
                xe_bottom_left=int(xe.c),
                yf_bottom_left=int(yf.c),
                xe_residue=int(xe.c) % 4,
                yf_residue=int(yf.c) % 4,
                shape_ok=shape_ok,
            )
        )
    return checks


def relation_search_ABC(t: RationalLike, depth: int, alphabet: str = FAMILY_ALPHABET) -> OverlapReport:
    """Search for semigroup relations between words with distinct leading symbols.

    Any minimal relation must start with different symbols (products are
    invertible, so common prefixes cancel), and the third symbol cannot lead
    either side because its image interval is verified disjoint from the
    images of the first two.  The remaining candidates - one word leading
    with symbol 1, the other with symbol 2, any lengths up to ``depth`` - are
    compared by exact matrix equality.
    """
    t = as_fraction(t)
    check_level(depth)
    family = make_family(t)
    note = ""
    if "3" in alphabet:
        third = family.maps[2].image(family.interval)
        others = Interval(
            min(f.image(family.interval).left for f in family.maps[:2]),
            max(f.image(family.interval).right for f in family.maps[:2]),
        )
        if third.intersects(others):
            note = "third-symbol image overlaps the first two; pruning disabled"
        else:
            note = "third-symbol image disjoint from the first two; leading 3 pruned"
    generators = [family.maps[i].matrix for i in range(len(alphabet))]
    leaders = alphabet[:2] if not note.startswith("third-symbol image overlaps") else alphabet
    buckets: dict[tuple, list[str]] = {}
    searched = 0
    for k in range(1, depth + 1):
        for word, matrix in iter_compositions(generators, k, alphabet):
            searched += 1
            if word[0] in leaders:
                buckets.setdefault(matrix.entries(), []).append(word)
    pairs = _bucket_pairs(buckets, restrict=lambda u, w: u[0] != w[0])
    return OverlapReport(t=t, level=depth, pairs=tuple(pairs), words_searched=searched, note=note)
