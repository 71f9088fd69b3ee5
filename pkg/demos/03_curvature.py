from xeric import DiffOperator, XSeries, cartier_check, lambda_coefficient, pk_curvature_order1, series_invert, symbolic_am
from xeric.curvature import curvature_order1_recursive, curvature_support

# P-CURVATURE OF y' + a y = 0 ==================================================

# (D + a)^(p^k) (1) only depends on a few derivatives of a
p = 3
x = XSeries.x(p)
a = x + XSeries.monomial(p, 2, (1,))
for k in (1, 2):
    fast = pk_curvature_order1(a, k, 12)
    slow = curvature_order1_recursive(a, p**k, 12)
    print(f"a_{p**k} =", fast, "| recursion agrees:", fast == slow)

# WHICH MONOMIALS SURVIVE ======================================================

# a_m = sum lambda_alpha prod (a^(j))^alpha_j; mod p only a few alpha remain
for m in (3, 4, 9):
    terms = {str(alpha): c for alpha, c in symbolic_am(m, p).items()}
    print(f"a_{m} mod 3:", terms)
print("predicted support of a_9:", sorted(str(al) for al in curvature_support(2, p)))
print("lambda for a*a'' in a_4:", lambda_coefficient((1, 0, 1), 4, p))

# CARTIER ======================================================================

# zero p-curvature <=> D^p is a right multiple of L
D = DiffOperator.d(p)
for name, L in (("D - 1", D - 1), ("D - 2/(1+x)", D - series_invert(1 + x, 40).scale(2))):
    rec = cartier_check(L, 0, 20)
    print(f"{name}: curvature zero = {rec.curvature_zero}, remainder zero = {rec.division_remainder_zero}")
