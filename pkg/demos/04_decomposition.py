from xeric import DiffOperator, XSeries, decompose, exp_tilde, project, series_invert
from xeric.decomp import sp_membership
from xeric.series import derive

# PRODUCT DECOMPOSITION ========================================================

# the solution of y' = y splits as h_0 h_1 h_2 ..., where h_i only involves
# z_1..z_i and corrects the previous partial product from degree p^i on
p = 3
r = decompose(DiffOperator.d(p) - 1, 2, 30)
for lv in r.levels:
    print(f"v_{lv.i} =", lv.v)
    print(f"h_{lv.i} =", lv.h.truncate(20))
print("residual order:", r.residual_order)

# each factor minus 1 is built from monomials x^a (x^(p^k) w_k)^b
print("all h_i - 1 in S_p:", all(sp_membership(lv.h - 1, lv.i) for lv in r.levels))

# partial products match the projections of exp~ up to a constant
et = exp_tilde(p, 30).product
for k in range(3):
    ratio = r.partial_product(k) * series_invert(project(et, k), 30)
    print(f"k={k}: partial product / pi_k(exp~) is constant:", derive(ratio).vanishes_mod(29))
