"""From inequality witnesses to a growing lower bound.

``find_witness`` locates integers (N, h, h0) such that, for every n in the
scanned range, |A_n/A| > 1 - h/n and |B_n/B| > 1/(n + h0), and checks both
in exact arithmetic.  ``m`` is where the Pochhammer tail estimate starts
to hold.  Feeding the witness into the harmonic lower-bound chain gives a
quantity that grows without bound in the truncation depth M.

The constant K in (0, 1) absorbs correction terms that are never
quantified, so the numbers below are a family of lower bounds indexed by
K rather than a proven bound for one K.
"""

from trirec import HeunParams, find_witness, heun_family, lower_bound_witness
from trirec.series_eval import abs_partial_sums

family = heun_family(HeunParams(alpha=1, beta=1, gamma=4, delta=1, q=2))
w = find_witness(family, eps="1/1000", scan_limit=100_000)
print(w.to_json())

print("\nlower bound at eta = |B|/|A|^2 = 1, p_max = 1")
for M in (20_000, 40_000, 80_000, 160_000, 320_000):
    print(f"  M = {M:7d}: {lower_bound_witness(w, 1, 1, M):.6e}")

S = abs_partial_sums(family, 1.0, 100_000)[100_000]
print(f"\nS_M at M = 1e5 is {S:.4f}")
print("p_max  bound (M = 1e5)")
for p in (1, 5, 10, 20, 25):
    print(f"{p:5d}  {lower_bound_witness(w, 1, p, 100_000):.4e}")
print("Products of independent harmonic sums overcount the ordered nested sums,")
print("so for large p_max the displayed bound outgrows S_M; only small p_max is safe.")
