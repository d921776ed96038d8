"""Tour of the map family and its exact arithmetic.

The family has three contractions of I = [0, 2t/3]:

    f1(x) = x/(4x+4),   f2(x) = x/4,   f3(x) = x/4 + t/2,

encoded by 2x2 rational matrices of determinant 1.  f1 and f2 share the
fixed point 0; the right endpoint 2t/3 is the fixed point of f3.  Everything
printed below is an exact rational, no rounding anywhere.
"""

from fractions import Fraction as F

from ifslab import make_family, map_of_word, cylinder

fam = make_family(1)
f1, f2, f3 = fam.maps

print("invariant interval:", fam.interval)
print("contraction bounds: gamma1 =", fam.gamma_lower, " gamma2 =", fam.gamma_upper)
print()

print("the three maps and their matrices:")
for name, f in zip(fam.names, fam.maps):
    print(f"  f{name}: {f}   matrix {f.matrix}  det {f.matrix.det()}")
print()

print("exact evaluation: f1(1) =", f1(1), "  f2(1) =", f2(1), "  f3(1) =", f3(1))
print("shared fixed point: f1(0) =", f1(0), " f2(0) =", f2(0))
print("fixed point of f3:", f3.fixed_points()[0][0])
print()

print("composition is matrix multiplication, in the same order:")
word = "213"
g = map_of_word(word, 1)
x = F(1, 3)
print(f"  word {word}: matrix {g.matrix}")
print(f"  map-of-word value at {x}: {g(x)}")
print(f"  folded evaluation f2(f1(f3({x}))) = {f2(f1(f3(x)))}")
print()

print("derivative bounds attained at interval endpoints (|f'| is monotone):")
lo, hi = f1.derivative_bounds(fam.interval)
print(f"  f1 on {fam.interval}: inf = {lo}, sup = {hi}")
print()

print("cylinder intervals f_u(I) for a few words at t = 1:")
for u in ("", "3", "13", "23", "223"):
    print(f"  I_{u or 'empty':5s} = {cylinder(u, 1)}")
