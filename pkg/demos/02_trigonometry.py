from xeric import XSeries, series_frobenius, series_invert, sigma, trig, verify_trig_identity
from xeric.special import pythagoras_defect

# SIN AND COS ================================================================

# sin and cos are the xeric basis of x^2 y'' + x^2 y = 0, one solution per
# root of the indicial polynomial s(s - 1)
p = 3
for fn in ("sin", "cos", "sinh", "cosh"):
    print(f"{fn}_3 =", trig(fn, p, 12))

# EVEN AND ODD PARTS =========================================================

eve, odd = trig("eve", p, 12), trig("odd", p, 12)
print("eve =", eve)
print("odd =", odd)

# exp splits as cosh plus a rescaled sinh; the scale is 1/(1 - sigma(x)^p)
K = series_invert(1 - series_frobenius(sigma(XSeries.x(p), 30)), 30)
print("1/(1 - sigma^p) =", K)
for q in (3, 5):
    print(f"p={q}: exp - cosh - K sinh =", verify_trig_identity(q, 30))

# the Pythagorean identity is lost
print("sin^2 + cos^2 - 1 =", pythagoras_defect(p, 12))
