"""Confluent Heun series: where it converges and what it sums to.

The Frobenius coefficients of the confluent Heun equation obey a
three-term recurrence.  Its leading ratio fixes the disc |x| < 1, and
inside the disc the series is summed until a rigorous tail bound drops
below the tolerance.
"""

from trirec import HeunParams, classify, empirical_ratio, eval_series, heun_family

params = HeunParams(alpha=1, beta=1, gamma=4, delta=1, q=2)
family = heun_family(params)
print("A_n numerator  :", family.a_num)
print("A_n denominator:", family.a_den)
print("B_n numerator  :", family.b_num)

cls = classify(family)
print("\nclassification:", cls.to_json())

# The ratio test agrees: |d_{n+1}/d_n| creeps towards 1/radius.
for n in (100, 1000, 10_000):
    print(f"|d_{n + 1}/d_{n}| = {float(empirical_ratio(family, n)):.8f}")

print()
for x in (0.25, 0.5, -0.9, 0.6 + 0.3j):
    run = eval_series(family, x=x, tol=1e-13)
    print(f"y({x}) = {run.value:.15g}   terms = {run.M + 1:5d}   bound = {run.truncation_error_bound:.1e}")
