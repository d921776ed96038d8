"""Exact 2x2 rational matrices and the linear-fractional maps they induce.

Everything in this module is exact: entries, interval endpoints and all
derived quantities are ``fractions.Fraction`` values, so equality tests,
overlap detection and cylinder comparisons are decidable with no rounding.
Floating point enters the package only where irrational exponents force it
(see :mod:`ifslab.pressure`).

A matrix ``[[a, b], [c, d]]`` acts on the line as ``x -> (a*x + b)/(c*x + d)``
with derivative ``det/(c*x + d)**2``.  Composition of maps corresponds to the
matrix product in the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

RationalLike = Union[Fraction, int, str]

#: Default width of the rational enclosure returned for irrational fixed points.
DEFAULT_ROOT_WIDTH = Fraction(1, 10**30)


class PoleError(ZeroDivisionError):
    """The pole of a map lies at an evaluation point or inside a working interval."""


class DegenerateMapError(ValueError):
    """The map is the identity (or has determinant zero) where that is not allowed."""


def as_fraction(x: RationalLike) -> Fraction:
    """Convert ``x`` to an exact Fraction.

    Accepts Fractions, ints and strings in either "p/q" or decimal form;
    decimal strings are converted exactly, never through binary floats.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to convert a binary float; pass a string or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 matrix with exact rational entries (row-major a, b, c, d)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for field in ("a", "b", "c", "d"):
            object.__setattr__(self, field, as_fraction(getattr(self, field)))

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scaled(self, k: RationalLike) -> "Matrix2":
        k = as_fraction(k)
        return Matrix2(k * self.a, k * self.b, k * self.c, k * self.d)

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 0:
            raise DegenerateMapError("matrix is singular")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def entry_distance(self, other: "Matrix2") -> Fraction:
        """Max absolute entrywise difference (the metric used on matrix sets)."""
        return max(abs(p - q) for p, q in zip(self.entries(), other.entries()))

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d != 0

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class Interval:
    """A nonempty closed interval with exact rational endpoints."""

    left: Fraction
    right: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", as_fraction(self.left))
        object.__setattr__(self, "right", as_fraction(self.right))
        if self.left > self.right:
            raise ValueError(f"empty interval [{self.left}, {self.right}]")

    def length(self) -> Fraction:
        return self.right - self.left

    def contains(self, x: RationalLike) -> bool:
        x = as_fraction(x)
        return self.left <= x <= self.right

    def contains_interval(self, other: "Interval") -> bool:
        return self.left <= other.left and other.right <= self.right

    def intersects(self, other: "Interval") -> bool:
        return max(self.left, other.left) <= min(self.right, other.right)

    def grid(self, count: int, include_left: bool = True) -> list[Fraction]:
        """``count + 1`` equally spaced rational points, optionally dropping the left end."""
        step = self.length() / count
        points = [self.left + i * step for i in range(count + 1)]
        return points if include_left else points[1:]

    def __str__(self) -> str:
        return f"[{self.left}, {self.right}]"


@dataclass(frozen=True)
class MoebiusMap:
    """The line map ``x -> (a*x + b)/(c*x + d)`` of an invertible rational matrix."""

    matrix: Matrix2

    def __post_init__(self) -> None:
        if self.matrix.det() == 0:
            raise DegenerateMapError("determinant zero does not define a Moebius map")

    @classmethod
    def from_entries(cls, a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike) -> "MoebiusMap":
        return cls(Matrix2(as_fraction(a), as_fraction(b), as_fraction(c), as_fraction(d)))

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(Matrix2.identity())

    @classmethod
    def affine(cls, ratio: RationalLike, offset: RationalLike) -> "MoebiusMap":
        """The affine map ``x -> ratio*x + offset`` (ratio nonzero)."""
        return cls.from_entries(ratio, offset, 0, 1)

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        m = self.matrix
        denom = m.c * x + m.d
        if denom == 0:
            raise PoleError(f"pole of {self} at x = {x}")
        return (m.a * x + m.b) / denom

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self.compose(g)`` is the map x -> self(g(x))."""
        return MoebiusMap(self.matrix @ other.matrix)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.matrix.inverse())

    def derivative(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        m = self.matrix
        denom = m.c * x + m.d
        if denom == 0:
            raise PoleError(f"pole of {self} at x = {x}")
        return m.det() / denom**2

    def pole(self) -> Fraction | None:
        """The finite pole -d/c, or None for an affine map."""
        if self.matrix.c == 0:
            return None
        return -self.matrix.d / self.matrix.c

    def has_pole_in(self, interval: Interval) -> bool:
        p = self.pole()
        return p is not None and interval.contains(p)

    def derivative_bounds(self, interval: Interval) -> tuple[Fraction, Fraction]:
        """Exact (inf, sup) of |derivative| over ``interval``.

        |f'| = |det|/(c*x+d)^2 is monotone wherever c*x+d keeps one sign, so
        both bounds are attained at the endpoints.  A sign change means the
        pole sits inside the interval and the bounds do not exist.
        """
        m = self.matrix
        lo_den = m.c * interval.left + m.d
        hi_den = m.c * interval.right + m.d
        if lo_den == 0 or hi_den == 0 or (lo_den > 0) != (hi_den > 0):
            raise PoleError(f"pole of {self} inside {interval}")
        values = (abs(self.derivative(interval.left)), abs(self.derivative(interval.right)))
        return min(values), max(values)

    def image(self, interval: Interval) -> Interval:
        """Exact image interval (the map is monotone off its pole)."""
        if self.has_pole_in(interval):
            raise PoleError(f"pole of {self} inside {interval}")
        u, v = self(interval.left), self(interval.right)
        return Interval(min(u, v), max(u, v))

    def fixed_points(self, width: Fraction = DEFAULT_ROOT_WIDTH) -> list[tuple[Fraction, Fraction]]:
        """Real fixed points as (lo, hi) rational enclosures, ascending.

        Rational roots come back exact (lo == hi); irrational roots as
        enclosures no wider than ``width``.  The identity map has every point
        fixed and is rejected.
        """
        m = self.matrix
        if m.is_identity():
            raise DegenerateMapError("identity map fixes every point")
        # Fixed points solve c*x^2 + (d - a)*x - b = 0.
        qa, qb, qc = m.c, m.d - m.a, -m.b
        if qa == 0:
            if qb == 0:
                return []  # pure translation, no finite fixed point
            root = -qc / qb
            return [(root, root)]
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            return []
        if disc == 0:
            root = -qb / (2 * qa)
            return [(root, root)]
        sq = _sqrt_enclosure(disc, width * 2 * abs(qa))
        roots = []
        for sgn in (-1, 1):
            lo = (-qb + sgn * sq[1 if sgn < 0 else 0]) / (2 * qa)
            hi = (-qb + sgn * sq[0 if sgn < 0 else 1]) / (2 * qa)
            roots.append((min(lo, hi), max(lo, hi)))
        return sorted(roots)

    def __str__(self) -> str:
        m = self.matrix
        return f"x -> ({m.a}*x + {m.b})/({m.c}*x + {m.d})"


def _sqrt_enclosure(q: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo <= sqrt(q) <= hi and hi - lo <= width; exact when possible."""
    if q < 0:
        raise ValueError("negative radicand")
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        exact = Fraction(sp, sr)
        return exact, exact
    # sqrt(p/r) = isqrt(p*r*M^2) / (r*M) up to 1/(r*M).
    scale = (Fraction(1) / (width * r)).__ceil__() + 1
    root = math.isqrt(p * r * scale * scale)
    lo = Fraction(root, r * scale)
    return lo, lo + Fraction(1, r * scale)


def family_matrices(t: RationalLike) -> tuple[Matrix2, Matrix2, Matrix2]:
    """The three generator matrices of the one-parameter family at parameter t."""
    t = as_fraction(t)
    half = Fraction(1, 2)
    gen_a = Matrix2(half, Fraction(0), Fraction(2), Fraction(2))
    gen_b = Matrix2(half, Fraction(0), Fraction(0), Fraction(2))
    gen_c = Matrix2(half, t, Fraction(0), Fraction(2))
    return gen_a, gen_b, gen_c


@dataclass(frozen=True)
class IFSInstance:
    """A hyperbolic IFS: contracting maps of a common invariant interval.

    ``gamma_lower``/``gamma_upper`` are the exact global derivative bounds
    0 < gamma_lower <= |f'| <= gamma_upper < 1 over the interval, taken over
    all maps.  ``names`` optionally labels the maps (e.g. by generating word).
    """

    maps: tuple[MoebiusMap, ...]
    interval: Interval
    gamma_lower: Fraction
    gamma_upper: Fraction
    names: tuple[str, ...] | None = None

    @classmethod
    def build(
        cls,
        maps: Sequence[MoebiusMap],
        interval: Interval,
        names: Sequence[str] | None = None,
    ) -> "IFSInstance":
        """Validate invariance and strict contraction, computing the gamma bounds."""
        if not maps:
            raise ValueError("an IFS needs at least one map")
        if names is not None and len(names) != len(maps):
            raise ValueError("names must match maps one-to-one")
        infs, sups = [], []
        for f in maps:
            if not interval.contains_interval(f.image(interval)):
                raise ValueError(f"map {f} does not send {interval} into itself")
            lo, hi = f.derivative_bounds(interval)
            infs.append(lo)
            sups.append(hi)
        gamma_lower, gamma_upper = min(infs), max(sups)
        if gamma_lower <= 0:
            raise ValueError("derivative vanishes on the interval")
        if gamma_upper >= 1:
            raise ValueError(f"not a strict contraction: sup |f'| = {gamma_upper}")
        return cls(
            maps=tuple(maps),
            interval=interval,
            gamma_lower=gamma_lower,
            gamma_upper=gamma_upper,
            names=tuple(names) if names is not None else None,
        )

    def __len__(self) -> int:
        return len(self.maps)


def invariant_interval(t: RationalLike) -> Interval:
    """[0, 2t/3]: from the common fixed point 0 to the fixed point of the third map."""
    t = as_fraction(t)
    if t <= 0:
        raise ValueError(f"parameter must be positive, got {t}")
    return Interval(Fraction(0), 2 * t / 3)


def make_family(t: RationalLike) -> IFSInstance:
    """The three-map family at parameter t > 0 on its invariant interval.

    The maps are x/(4x+4), x/4 and x/4 + t/2; the first two share the fixed
    point 0 and the interval runs up to 2t/3, the fixed point of the third.
    """
    t = as_fraction(t)
    interval = invariant_interval(t)
    maps = tuple(MoebiusMap(m) for m in family_matrices(t))
    return IFSInstance.build(maps, interval, names=("1", "2", "3"))
