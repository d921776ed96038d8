"""Finite-level partition sums, level dimensions and bracketed conformal dimension.

The level-n partition sum of an IFS at exponent s is

    S_n(s) = sum over all length-n words u of ||f_u'||^s,

where ||f_u'|| is the *exact* rational sup of |f_u'| over the invariant
interval.  Only the power and the accumulation are floating point; the sum is
strictly decreasing in s, so its unit root d_n (the level-n dimension) is
found by plain bisection.  Sub/supermultiplicativity of the norms gives the
distortion-corrected bracket

    d_n - log(C)/(n*log(1/gamma2)) <= conformal dimension <= d_n

with C a distortion constant and gamma2 the global contraction bound.  The C
computed here is an empirical finite-depth maximum, and every bracket carries
it explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .moebius import IFSInstance, Matrix2, MoebiusMap, RationalLike, as_fraction, make_family
from .words import SubsystemSpec, SubsystemVariant, build_subsystem, check_level


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def _norm_counter(ifs: IFSInstance, n: int) -> dict[Fraction, int]:
    """Multiset of exact sup-norms ||f_u'|| over all length-n words u."""
    if n < 1:
        raise ValueError("level must be >= 1")
    check_level(n)
    generators = [f.matrix for f in ifs.maps]
    interval = ifs.interval
    counter: dict[Fraction, int] = {}

    def walk(matrix: Matrix2, depth: int) -> None:
        if depth == n:
            _, sup = MoebiusMap(matrix).derivative_bounds(interval)
            counter[sup] = counter.get(sup, 0) + 1
            return
        for g in generators:
            walk(matrix @ g, depth + 1)

    walk(Matrix2.identity(), 0)
    return counter


def partition_sum(ifs: IFSInstance, n: int, s: float) -> float:
    """S_n(s), with exact norms powered and accumulated in error-free summation."""
    if s < 0:
        raise ValueError("exponent must be >= 0")
    counter = _norm_counter(ifs, n)
    return math.fsum(count * float(norm) ** s for norm, count in counter.items())


@dataclass(frozen=True)
class PressureEstimate:
    """(1/n) * log S_n(s): the finite-level growth-rate approximant."""

    level: int
    exponent: float
    value: float


def pressure_estimate(ifs: IFSInstance, n: int, s: float) -> PressureEstimate:
    return PressureEstimate(level=n, exponent=s, value=math.log(partition_sum(ifs, n, s)) / n)


@dataclass(frozen=True)
class LevelDimension:
    """The unit root d_n of S_n, with the achieved residual |S_n(d_n) - 1|."""

    level: int
    value: float
    residual: float
    word_count: int


def solve_level_dimension(ifs: IFSInstance, n: int, tol: float = 1e-12, max_iter: int = 200) -> LevelDimension:
    """Bisection solve of S_n(s) = 1 on [0, log(m)/log(1/gamma2)].

    The bracket width is shrunk far enough below ``tol`` that the residual
    itself (not just the root) lands under ``tol``.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if ifs.gamma_upper >= 1:
        raise ValueError("maps must be strict contractions")
    counter = _norm_counter(ifs, n)
    word_count = sum(counter.values())
    floats = [(float(norm), count) for norm, count in counter.items()]

    def sum_at(s: float) -> float:
        return math.fsum(count * norm ** s for norm, count in floats)

    m = len(ifs.maps)
    hi = math.log(m) / -_log_fraction(ifs.gamma_upper) if m > 1 else 0.0
    lo = 0.0
    # |dS/ds| <= n*log(1/gamma1) near the root, so this width caps the residual at tol.
    width = tol / max(1.0, n * -_log_fraction(ifs.gamma_lower))
    iterations = 0
    while hi - lo > width and iterations < max_iter:
        mid = (lo + hi) / 2
        if sum_at(mid) >= 1.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    root = (lo + hi) / 2
    return LevelDimension(level=n, value=root, residual=abs(sum_at(root) - 1.0), word_count=word_count)


@dataclass(frozen=True)
class DistortionEstimate:
    """Max over words of length <= depth of sup|f_u'| / inf|f_u'| on the interval.

    The true distortion constant is a supremum over *all* words; this is the
    finite-depth observable, hence the EMPIRICAL flag.
    """

    depth: int
    value: Fraction
    rigor: str = "EMPIRICAL"


def distortion_constant(ifs: IFSInstance, depth: int) -> DistortionEstimate:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    check_level(depth)
    generators = [f.matrix for f in ifs.maps]
    interval = ifs.interval
    best = Fraction(1)

    def walk(matrix: Matrix2, level: int) -> None:
        nonlocal best
        if level > 0:
            inf, sup = MoebiusMap(matrix).derivative_bounds(interval)
            ratio = sup / inf
            if ratio > best:
                best = ratio
        if level < depth:
            for g in generators:
                walk(matrix @ g, level + 1)

    walk(Matrix2.identity(), 0)
    return DistortionEstimate(depth=depth, value=best)


@dataclass(frozen=True)
class DimensionBracket:
    """Certified-style interval around the conformal dimension, empirical C."""

    level: int
    lower: float
    upper: float
    distortion: Fraction
    gamma_upper: Fraction

    def width(self) -> float:
        return self.upper - self.lower

    def midpoint(self) -> float:
        return (self.lower + self.upper) / 2


def dimension_bracket(
    ifs: IFSInstance,
    n: int,
    distortion: Fraction | None = None,
    tol: float = 1e-12,
) -> DimensionBracket:
    """[d_n - log(C)/(n*log(1/gamma2)), d_n]; C defaults to the depth-n empirical constant."""
    if distortion is None:
        distortion = distortion_constant(ifs, n).value
    distortion = as_fraction(distortion)
    if distortion < 1:
        raise ValueError("distortion constant must be >= 1")
    d_n = solve_level_dimension(ifs, n, tol).value
    correction = _log_fraction(distortion) / (n * -_log_fraction(ifs.gamma_upper))
    return DimensionBracket(
        level=n,
        lower=d_n - correction,
        upper=d_n,
        distortion=distortion,
        gamma_upper=ifs.gamma_upper,
    )


@dataclass(frozen=True)
class SubsystemDimensionReport:
    """Level-N dimension data for the family versus its keep-a-3 subsystem.

    ``s1`` is the level-1 dimension of the subsystem built from all length-N
    words containing the third symbol.  When ``mass_premise_holds`` (the
    subsystem retains at least half the unit partition mass at exponent
    d_N), the bound d_N - 1/(2N) <= s1 <= d_N is expected; violations are
    reported, never silently dropped.
    """

    t: Fraction
    level: int
    d_level: LevelDimension
    d_doubled: LevelDimension
    epsilon_proxy: float
    s1: LevelDimension
    lower_bound: float
    lower_bound_holds: bool
    upper_bound_holds: bool
    mass_at_d: float
    mass_floor: float
    mass_premise_holds: bool
    bracket: DimensionBracket
    error_bound: float
    subsystem_size: int


def subsystem_dimension_report(
    t: RationalLike,
    level: int,
    tol: float = 1e-12,
    slack: float = 1e-9,
) -> SubsystemDimensionReport:
    t = as_fraction(t)
    family = make_family(t)
    d_level = solve_level_dimension(family, level, tol)
    d_doubled = solve_level_dimension(family, 2 * level, tol)
    epsilon_proxy = abs(d_level.value - d_doubled.value)

    sub = build_subsystem(SubsystemSpec(t, level, SubsystemVariant.FULL))
    s1 = solve_level_dimension(sub, 1, tol)

    mass_at_d = partition_sum(sub, 1, d_level.value)
    mass_floor = 1.0 - 2.0**level * 4.0 ** (-level * d_level.value)
    mass_premise_holds = mass_at_d >= 0.5

    lower_bound = d_level.value - 1.0 / (2 * level)
    lower_bound_holds = s1.value >= lower_bound - slack
    upper_bound_holds = s1.value <= d_level.value + slack

    sub_distortion = distortion_constant(sub, 1).value
    bracket = dimension_bracket(sub, 1, sub_distortion, tol)
    error_bound = epsilon_proxy + 1.0 / (2 * level) + _log_fraction(sub_distortion) / (level * math.log(4.0))

    return SubsystemDimensionReport(
        t=t,
        level=level,
        d_level=d_level,
        d_doubled=d_doubled,
        epsilon_proxy=epsilon_proxy,
        s1=s1,
        lower_bound=lower_bound,
        lower_bound_holds=lower_bound_holds,
        upper_bound_holds=upper_bound_holds,
        mass_at_d=mass_at_d,
        mass_floor=mass_floor,
        mass_premise_holds=mass_premise_holds,
        bracket=bracket,
        error_bound=error_bound,
        subsystem_size=len(sub),
    )
