"""Cylinder-interval geometry, parameter certificates, box counting and measure stats.

The cylinder intervals of words v3 (v over {1,2}) drive everything here.  The
library's three catalogued geometric facts about them are verified
exhaustively at explicit parameters:

* lemma 2 (chain order): if v < w in the chain order on {1,2}^k then
  f_v(x) < f_w(x) for x > 0, hence the v3-cylinder sits weakly left of the
  w3-cylinder (both endpoints strictly smaller);
* lemma 3 (large-parameter splitting): consecutive chain pairs become
  strictly disjoint once the parameter t is large enough - the threshold is
  witnessed by exact search, never assumed;
* lemma 4 (cross-length splitting): cylinders of length-(k+1) words lie
  strictly left of cylinders of length-k words exactly while
  t < 3/(1 - 4^(-k)) at the extremal pair.

Per-pair disjointness witnesses assemble into non-degeneracy certificates; a
single parameter making *all* cylinders pairwise disjoint upgrades the
subsystem to open-set-condition status, where box-counting dimension and the
bracketed conformal dimension must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .moebius import (
    IFSInstance,
    Interval,
    Matrix2,
    MoebiusMap,
    RationalLike,
    as_fraction,
    invariant_interval,
    make_family,
)
from .words import chain_sorted, check_level, cylinder, iter_words, lex_successor, map_of_word


class OrderRelation(Enum):
    """Strongest relation of an ordered interval pair (PREC > PRECSIM > OVERLAP > OTHER)."""

    PREC = "PREC"          # strictly disjoint, first entirely left of second
    PRECSIM = "PRECSIM"    # both endpoints strictly smaller (may overlap)
    OVERLAP = "OVERLAP"    # intersecting, not endpoint-ordered
    OTHER = "OTHER"        # disjoint in the reversed order


def classify_intervals(first: Interval, second: Interval) -> OrderRelation:
    if first.right < second.left:
        return OrderRelation.PREC
    if first.left < second.left and first.right < second.right:
        return OrderRelation.PRECSIM
    if first.intersects(second):
        return OrderRelation.OVERLAP
    return OrderRelation.OTHER


def intervals_disjoint(a: Interval, b: Interval) -> bool:
    return not a.intersects(b)


@dataclass(frozen=True)
class LemmaReport:
    """Verdict of an exhaustive exact check, with every counterexample found."""

    ok: bool
    pairs_checked: int
    points_checked: int
    counterexamples: tuple[str, ...]


def verify_lemma2(
    k: int,
    t: RationalLike,
    samples: int = 64,
    all_pairs: bool = False,
    max_k: int = 7,
) -> LemmaReport:
    """Chain order on {1,2}^k forces pointwise map order and cylinder order.

    Consecutive chain pairs are checked pointwise on a rational grid in
    (0, 2t/3] (the shared fixed point 0 is checked for equality) and their
    v3/w3 cylinders compared exactly; ``all_pairs`` extends the exact
    cylinder comparison to every pair instead of relying on transitivity.
    """
    if k < 1 or k > max_k:
        raise ValueError(f"k must be in 1..{max_k}, got {k}")
    t = as_fraction(t)
    interval = invariant_interval(t)
    grid = interval.grid(samples, include_left=False)
    chain = chain_sorted(k)
    maps = {v: map_of_word(v, t) for v in chain}
    cylinders = {v: cylinder(v + "3", t) for v in chain}

    bad: list[str] = []
    pairs = points = 0
    for v, w in zip(chain, chain[1:]):
        fv, fw = maps[v], maps[w]
        if fv(0) != fw(0):
            bad.append(f"f_{v}(0) != f_{w}(0)")
        for x in grid:
            points += 1
            if not fv(x) < fw(x):
                bad.append(f"f_{v}({x}) >= f_{w}({x})")
        pairs += 1
        if classify_intervals(cylinders[v], cylinders[w]) not in (OrderRelation.PREC, OrderRelation.PRECSIM):
            bad.append(f"cylinder order fails for consecutive ({v}3, {w}3)")
    if all_pairs:
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                pairs += 1
                v, w = chain[i], chain[j]
                if classify_intervals(cylinders[v], cylinders[w]) not in (OrderRelation.PREC, OrderRelation.PRECSIM):
                    bad.append(f"cylinder order fails for ({v}3, {w}3)")
    return LemmaReport(ok=not bad, pairs_checked=pairs, points_checked=points, counterexamples=tuple(bad))


def verify_lemma4(k: int, t: RationalLike) -> LemmaReport:
    """Every (k+1)-word cylinder strictly precedes every k-word cylinder."""
    if k < 1:
        raise ValueError("k must be >= 1")
    t = as_fraction(t)
    long_cyls = {v: cylinder(v + "3", t) for v in iter_words("12", k + 1)}
    short_cyls = {w: cylinder(w + "3", t) for w in iter_words("12", k)}
    bad = []
    pairs = 0
    for v, cv in long_cyls.items():
        for w, cw in short_cyls.items():
            pairs += 1
            if classify_intervals(cv, cw) is not OrderRelation.PREC:
                bad.append(f"({v}3, {w}3)")
    return LemmaReport(ok=not bad, pairs_checked=pairs, points_checked=0, counterexamples=tuple(bad))


def lemma4_extremal_threshold(k: int) -> Fraction:
    """Exact parameter 3/(1 - 4^(-k)) at which the extremal pair stops splitting."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(3) / (1 - Fraction(1, 4**k))


def lemma4_extremal_disjoint(k: int, t: RationalLike) -> bool:
    """Exact check of the binding pair: 2^(k+1)-cylinder strictly left of 1^k-cylinder."""
    t = as_fraction(t)
    cv = cylinder("2" * (k + 1) + "3", t)
    cw = cylinder("1" * k + "3", t)
    return classify_intervals(cv, cw) is OrderRelation.PREC


@dataclass(frozen=True)
class ThresholdWitness:
    """Result of the parameter search splitting one consecutive cylinder pair."""

    v: str
    w: str
    found: bool
    witness_t: Fraction | None
    fail_t: Fraction | None      # largest parameter checked where the pair still meets
    best_t: Fraction | None      # closest-to-splitting parameter when not found
    best_gap: Fraction | None    # left(w-cyl) - right(v-cyl) at best_t (> 0 means split)
    checked: int


def _pair_gap(v: str, w: str, t: Fraction) -> Fraction:
    return cylinder(w + "3", t).left - cylinder(v + "3", t).right


def lemma3_find_threshold(
    v: str,
    w: str,
    t_max: RationalLike,
    resolution: RationalLike = Fraction(1, 64),
    t_start: RationalLike | None = None,
) -> ThresholdWitness:
    """Find the smallest witnessed parameter splitting a consecutive chain pair.

    Doubles t geometrically from ``t_start`` (default: ``resolution``) until
    the v3/w3 cylinders are strictly disjoint, then bisects the bracketing
    step down to ``resolution``.  Every verdict is an exact endpoint
    comparison at a rational parameter; nothing is interpolated.
    """
    if lex_successor(v) != w:
        raise ValueError(f"{w!r} is not the chain successor of {v!r}")
    t_max = as_fraction(t_max)
    resolution = as_fraction(resolution)
    if resolution <= 0 or t_max <= 0:
        raise ValueError("t_max and resolution must be positive")
    t = as_fraction(t_start) if t_start is not None else resolution

    checked = 0
    best_t: Fraction | None = None
    best_gap: Fraction | None = None
    prev: Fraction | None = None
    while True:
        probe = min(t, t_max)
        gap = _pair_gap(v, w, probe)
        checked += 1
        if best_gap is None or gap > best_gap:
            best_t, best_gap = probe, gap
        if gap > 0:
            lo, hi = prev, probe
            break
        if probe == t_max:
            return ThresholdWitness(v, w, False, None, probe, best_t, best_gap, checked)
        prev = probe
        t *= 2

    if lo is not None:
        while hi - lo > resolution:
            mid = (lo + hi) / 2
            checked += 1
            if _pair_gap(v, w, mid) > 0:
                hi = mid
            else:
                lo = mid
    return ThresholdWitness(v, w, True, hi, lo, hi, _pair_gap(v, w, hi), checked)


class WindowKind(Enum):
    PER_PAIR_CERTIFICATE = "PER_PAIR_CERTIFICATE"
    COMMON_DISJOINT = "COMMON_DISJOINT"


@dataclass(frozen=True)
class ParameterWindow:
    level: int
    t_lo: Fraction
    t_hi: Fraction
    kind: WindowKind


@dataclass(frozen=True)
class PairWitness:
    v: str
    w: str
    t: Fraction
    relation: OrderRelation


def _tilde_prefixes(n: int) -> list[str]:
    """All words over {1,2} of length < n (the v of each subsystem word v3)."""
    return [v for k in range(n) for v in iter_words("12", k)]


@dataclass(frozen=True)
class NondegeneracyCertificate:
    """Per-pair disjointness witnesses over a parameter grid (or the failing pairs)."""

    level: int
    grid: tuple[Fraction, ...]
    complete: bool
    window: ParameterWindow | None
    witnesses: tuple[PairWitness, ...]
    missing: tuple[tuple[str, str], ...]


def nondegeneracy_certificate(n: int, t_grid: Sequence[RationalLike]) -> NondegeneracyCertificate:
    """For every distinct pair of subsystem words find a grid parameter splitting them."""
    if n < 2:
        raise ValueError("level must be >= 2")
    grid = tuple(as_fraction(t) for t in t_grid)
    prefixes = _tilde_prefixes(n)
    cyls = {t: {v: cylinder(v + "3", t) for v in prefixes} for t in grid}
    witnesses = []
    missing = []
    for i in range(len(prefixes)):
        for j in range(i + 1, len(prefixes)):
            v, w = prefixes[i], prefixes[j]
            for t in grid:
                if intervals_disjoint(cyls[t][v], cyls[t][w]):
                    witnesses.append(PairWitness(v, w, t, classify_intervals(cyls[t][v], cyls[t][w])))
                    break
            else:
                missing.append((v, w))
    window = ParameterWindow(n, min(grid), max(grid), WindowKind.PER_PAIR_CERTIFICATE) if grid and not missing else None
    return NondegeneracyCertificate(
        level=n,
        grid=grid,
        complete=not missing and bool(grid),
        window=window,
        witnesses=tuple(witnesses),
        missing=tuple(missing),
    )


@dataclass(frozen=True)
class CommonDisjointSearch:
    """Scan for a single parameter making all subsystem cylinders pairwise disjoint."""

    level: int
    grid: tuple[Fraction, ...]
    found: bool
    window: ParameterWindow | None
    ok_points: tuple[Fraction, ...]
    best_t: Fraction | None
    best_violations: tuple[tuple[str, str], ...]


def find_common_disjoint_parameter(
    n: int,
    t_range: tuple[RationalLike, RationalLike],
    resolution: RationalLike,
) -> CommonDisjointSearch:
    if n < 2:
        raise ValueError("level must be >= 2")
    lo, hi = (as_fraction(x) for x in t_range)
    resolution = as_fraction(resolution)
    if lo > hi or lo <= 0:
        raise ValueError("need 0 < t_lo <= t_hi")
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    grid = [lo]
    while grid[-1] < hi:
        grid.append(min(grid[-1] + resolution, hi))
    prefixes = _tilde_prefixes(n)

    def violations_at(t: Fraction) -> list[tuple[str, str]]:
        cyls = {v: cylinder(v + "3", t) for v in prefixes}
        found = []
        for i in range(len(prefixes)):
            for j in range(i + 1, len(prefixes)):
                if not intervals_disjoint(cyls[prefixes[i]], cyls[prefixes[j]]):
                    found.append((prefixes[i], prefixes[j]))
        return found

    per_point = [(t, violations_at(t)) for t in grid]
    ok_points = tuple(t for t, bad in per_point if not bad)

    best_run: list[Fraction] = []
    run: list[Fraction] = []
    for t, bad in per_point:
        if not bad:
            run.append(t)
            if len(run) > len(best_run):
                best_run = list(run)
        else:
            run = []
    if best_run:
        window = ParameterWindow(n, best_run[0], best_run[-1], WindowKind.COMMON_DISJOINT)
        return CommonDisjointSearch(n, tuple(grid), True, window, ok_points, None, ())
    best_t, best_bad = min(per_point, key=lambda item: len(item[1]))
    return CommonDisjointSearch(n, tuple(grid), False, None, ok_points, best_t, tuple(best_bad))


@dataclass(frozen=True)
class BoxCountEstimate:
    """Grid-box counts of the level-n cylinder unions and the fitted growth rate."""

    scales: tuple[Fraction, ...]
    counts: tuple[int, ...]
    slope: float
    stderr: float


def _level_cylinders(ifs: IFSInstance, n: int) -> list[Interval]:
    check_level(n)
    generators = [f.matrix for f in ifs.maps]
    out: list[Interval] = []

    def walk(matrix: Matrix2, depth: int) -> None:
        if depth == n:
            out.append(MoebiusMap(matrix).image(ifs.interval))
            return
        for g in generators:
            walk(matrix @ g, depth + 1)

    walk(Matrix2.identity(), 0)
    return out


def box_counting(ifs: IFSInstance, levels: Sequence[int]) -> BoxCountEstimate:
    """Count grid boxes meeting the union of level-n cylinders, regress log-log.

    For each level the box width is the largest cylinder length and the grid
    is anchored at 0 with half-open boxes [k*eps, (k+1)*eps); membership is
    exact rational arithmetic.  The cylinder union contains the attractor,
    so the fitted slope is an upper-biased estimate.
    """
    if len(levels) < 2:
        raise ValueError("need at least two levels to fit a slope")
    scales: list[Fraction] = []
    counts: list[int] = []
    for n in levels:
        if n < 1:
            raise ValueError("levels must be >= 1")
        cylinders = _level_cylinders(ifs, n)
        eps = max(c.length() for c in cylinders)
        if eps == 0:
            raise ValueError("degenerate cylinders (zero length)")
        boxes: set[int] = set()
        for c in cylinders:
            boxes.update(range(math.floor(c.left / eps), math.floor(c.right / eps) + 1))
        scales.append(eps)
        counts.append(len(boxes))

    xs = [-(math.log(e.numerator) - math.log(e.denominator)) for e in scales]
    ys = [math.log(c) for c in counts]
    slope, stderr = _least_squares_slope(xs, ys)
    return BoxCountEstimate(scales=tuple(scales), counts=tuple(counts), slope=slope, stderr=stderr)


def _least_squares_slope(xs: list[float], ys: list[float]) -> tuple[float, float]:
    n = len(xs)
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("levels produced identical scales; cannot fit a slope")
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    if n > 2:
        ss_res = math.fsum((y - mean_y - slope * (x - mean_x)) ** 2 for x, y in zip(xs, ys))
        stderr = math.sqrt(ss_res / ((n - 2) * sxx))
    else:
        stderr = 0.0
    return slope, stderr


@dataclass(frozen=True)
class MeasureEstimate:
    """Level-n cylinder-weight statistics for weights proportional to |I_u|^s.

    ``ball_mass`` is the total weight of the cylinders containing 0 (for the
    family: exactly the words over {1,2}), ``local_dim_quotient`` the ratio
    log(ball_mass)/log(r) with r the largest such cylinder length, and
    ``lq_sums`` the coarse moment sums over the level-n partition.
    """

    level: int
    exponent: float
    cylinder_count: int
    zero_cylinder_count: int
    ball_mass: float
    max_zero_cylinder_length: Fraction | None
    local_dim_quotient: float | None
    lq_sums: dict[float, float]
    weight_total: float


def measure_stats(
    ifs: IFSInstance,
    n: int,
    s: float,
    qs: Sequence[float] = (2.0, 3.0),
) -> MeasureEstimate:
    if n < 1:
        raise ValueError("level must be >= 1")
    if not 0 < s <= 1:
        raise ValueError("exponent must lie in (0, 1]")
    cylinders = _level_cylinders(ifs, n)
    raw = [float(c.length()) ** s for c in cylinders]
    total = math.fsum(raw)
    if total == 0:
        raise ValueError("degenerate cylinders (zero length); weights undefined")
    at_zero = [c.contains(0) for c in cylinders]
    ball_raw = math.fsum(x for x, z in zip(raw, at_zero) if z)
    zero_count = sum(at_zero)
    max_zero_len = max((c.length() for c, z in zip(cylinders, at_zero) if z), default=None)
    quotient = None
    if ball_raw > 0 and max_zero_len is not None and max_zero_len < 1:
        radius_log = math.log(max_zero_len.numerator) - math.log(max_zero_len.denominator)
        quotient = math.log(ball_raw / total) / radius_log
    lq = {float(q): math.fsum((x / total) ** q for x in raw) for q in qs}
    return MeasureEstimate(
        level=n,
        exponent=s,
        cylinder_count=len(cylinders),
        zero_cylinder_count=zero_count,
        ball_mass=ball_raw / total,
        max_zero_cylinder_length=max_zero_len,
        local_dim_quotient=quotient,
        lq_sums=lq,
        weight_total=math.fsum(x / total for x in raw),
    )


def natural_measure_stats(
    t: RationalLike,
    n: int,
    s: float,
    qs: Sequence[float] = (2.0, 3.0),
) -> MeasureEstimate:
    """Measure statistics for the family at parameter t."""
    return measure_stats(make_family(t), n, s, qs)
