"""Exact overlap search, freeness certificates and separation metrics.

Whether distinct composition words can induce literally the same map is the
central algebraic question for this family.  Matrix equality is decidable
here (determinant-1 products with nonnegative entries), so:

* exhaustive overlap search certifies "no coincidence up to level n";
* for the first two generators, freeness is certified outright by an
  integer conjugation and a mod-4 residue obstruction;
* separation metrics quantify *how far apart* distinct words stay, either
  pointwise at probe points or entrywise on the matrices.
"""

from fractions import Fraction as F

from ifslab import (
    appendix_conjugacy_check,
    diophantine_metric,
    exact_overlap_search,
    fixed_point_probe,
    relation_search_ABC,
    residue_freeness_check,
    sesc_metric,
)

print("integer conjugates of the (scaled, inverted) first two generators:")
conj = appendix_conjugacy_check()
print(f"  E = {conj.from_first}   F = {conj.from_second}   exact: {conj.ok}")
print()

print("mod-4 residue obstruction on 300 seeded random word pairs (length <= 15):")
checks = residue_freeness_check(300, 15, seed=11)
print(f"  XE bottom-left residues: {sorted({c.xe_residue for c in checks})}")
print(f"  YF bottom-left residues: {sorted({c.yf_residue for c in checks})}")
print(f"  all consistent: {all(c.ok for c in checks)} -> no E-word ever equals an F-word")
print()

print("exhaustive searches at t = 1:")
overlaps = exact_overlap_search(1, 5)
print(f"  exact overlaps up to level 5: {list(overlaps.pairs)} ({overlaps.words_searched} words)")
relations = relation_search_ABC(1, 5)
print(f"  leading-symbol relations up to depth 5: {list(relations.pairs)}")
print(f"  ({relations.note})")
print()

probe = fixed_point_probe(1)
print(f"pointwise separation at the probe x = {probe} (level 3):")
report = sesc_metric(1, 3, [probe])
print(f"  delta = {report.delta} ~ {float(report.delta):.3e}   c_3 = {report.c_n:.4f}")
print("pointwise separation at the shared fixed point collapses by design:")
print(f"  delta at x = 0, level 1: {sesc_metric(1, 1, [F(0)]).delta}")
print()

print("entrywise matrix separation (strong variant, all distinct word pairs):")
for n in (1, 2, 3):
    report = diophantine_metric(1, n)
    print(f"  level {n}: delta = {report.delta}   c_n = {report.c_n:.4f}   ({report.pairs_compared} pairs)")
