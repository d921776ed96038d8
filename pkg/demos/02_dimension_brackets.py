"""Level dimensions, distortion constants and conformal-dimension brackets.

The level-n dimension d_n solves  sum over |u| = n of ||f_u'||^s = 1, with
exact rational sup-norms and bisection in s.  The sequence d_n decreases
toward the conformal dimension, and a distortion constant C turns each d_n
into a two-sided bracket

    d_n - log(C)/(n log(1/gamma2))  <=  dim  <=  d_n.

The keep-a-3 subsystems (all length-N words containing the third symbol)
have level-1 dimensions s1 trapped in [d_N - 1/(2N), d_N] once they retain
at least half of the unit partition mass.
"""

from ifslab import (
    dimension_bracket,
    distortion_constant,
    make_family,
    partition_sum,
    solve_level_dimension,
    subsystem_dimension_report,
)

fam = make_family(1)

print("partition sums at level 1 (all three sup-norms equal 1/4):")
for s in (0.0, 0.5, 1.0):
    print(f"  S_1({s}) = {partition_sum(fam, 1, s)}")
print()

print("level dimensions decrease toward the conformal dimension:")
for n in (1, 2, 4, 8):
    d = solve_level_dimension(fam, n)
    print(f"  d_{n} = {d.value:.12f}   residual {d.residual:.2e}   ({d.word_count} words)")
print()

c4 = distortion_constant(fam, 4)
print(f"empirical distortion constant, depth 4: {c4.value} ~ {float(c4.value):.6f} [{c4.rigor}]")
bracket = dimension_bracket(fam, 4, c4.value)
print(f"level-4 bracket: [{bracket.lower:.6f}, {bracket.upper:.6f}] (width {bracket.width():.6f})")
print()

print("keep-a-3 subsystem reports at t = 1:")
for level in (2, 3, 4):
    r = subsystem_dimension_report(1, level)
    print(
        f"  N={level}: {r.subsystem_size} maps, s1 = {r.s1.value:.6f} in "
        f"[{r.lower_bound:.6f}, {r.d_level.value:.6f}]  "
        f"(mass {r.mass_at_d:.3f} >= floor {r.mass_floor:.3f}; total error bound {r.error_bound:.3f})"
    )
