"""A recurrence driven by B_n: A_n = 1/(n+1), B_n = (4n+1)/(n+1).

Here B_n tends to 4 while A_n decays, so the disc radius is 1/sqrt(4).
The majorant can be regrouped by the number of A-steps instead of
B-steps, and the regrouping is checked coefficient by coefficient.
"""

from trirec import CoefficientFamily, PolyN, classify, decomposition_check, eval_series
from trirec.boundary_diag import doubling_increments

family = CoefficientFamily(PolyN.of(1), PolyN.of(1, 1), PolyN.of(1, 4), PolyN.of(1, 1))
print(classify(family).to_json())

run = eval_series(family, x=0.45, tol=1e-12)
print(f"y(0.45) = {run.value.real:.15g} after {run.M + 1} terms")

incs = doubling_increments(family, 0.5, [1000, 10_000, 50_000])
print("S_2M - S_M on |x| = 1/2:", ", ".join(f"{v:.2f}" for v in incs))

for mode in ("GroupByA", "GroupByB"):
    rep = decomposition_check(family, 5, 12, mode=mode)
    print(f"{mode}: discrepancy {rep['discrepancy']} over {len(rep['lhs_coeffs'])} coefficients")
