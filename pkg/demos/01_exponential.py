from xeric import DiffOperator, XSeries, derive, exp_tilde, exp_xeric, project, series_invert, solve_xeric

# EXP IN CHARACTERISTIC 3 ===================================================

# y' = y has no power series solution over F_3 (1/3! does not exist), but it
# does once z1 with z1' = 1/x is adjoined
p = 3
x = XSeries.x(p)
D = DiffOperator.d(p)
L = x * D - x
y = solve_xeric(L, 12)[0][1]
print("exp_3 =", y)
print("y' - y =", derive(y) - y)

# the xeric solution is the one whose only p-th power monomial is the constant 1
print("exp_xeric agrees:", y == exp_xeric(p, 12))

# TRUNCATED PRODUCT ==========================================================

# exp~ is a product of polynomials in sigma-like series; it also solves y' = y
et = exp_tilde(p, 30)
for i, h in enumerate(et.factors):
    print(f"factor {i}:", h.truncate(12))
print("exp~ mod x^12 =", et.product.truncate(12))

# the two solutions differ by a constant: the ratio has zero derivative
ratio = et.product * series_invert(exp_xeric(p, 30), 30)
print("ratio =", ratio)
print("ratio' vanishes:", derive(ratio).vanishes_mod(29))

# only z1 appears up to x^8, z2 enters at x^9
for k in range(3):
    print(f"pi_{k}(exp~) mod x^12 =", project(et.product, k).truncate(12))
