"""Absolute partial sums on the boundary circle.

On |x| = 1 the majorant sums S_M = sum |d_n| keep growing like log M for
the Heun family, exactly as for the Gauss-divergent 2F1(1/2, 1/2; 1; x).
A point just inside the disc settles after a few hundred terms.
Writes ``boundary_scan.csv`` next to this script.
"""

from pathlib import Path

from trirec import HeunParams, boundary_scan, doubling_increments, heun_family, hypergeometric_family

heun = heun_family(HeunParams(alpha=1, beta=1, gamma=4, delta=1, q=2))
gauss = hypergeometric_family("1/2", "1/2", 1)
checkpoints = [1000, 3000, 10_000, 30_000, 100_000]

for name, fam in (("Heun", heun), ("2F1(1/2,1/2;1)", gauss)):
    scan = boundary_scan(fam, "ThmOneBoundary", checkpoints)
    alpha, beta = scan.fitted_model
    print(f"{name}: S_M ~ {alpha:.4f} log M + {beta:.4f}")
    for M, S in scan.checkpoints:
        print(f"    M = {M:6d}   S_M = {S:.6f}")

print("\nS_2M - S_M for the Heun family")
for x_abs in (1.0, 0.9):
    incs = doubling_increments(heun, x_abs, [1000, 10_000, 50_000])
    print(f"  |x| = {x_abs}: " + "  ".join(f"{v:.3e}" for v in incs))

out = Path(__file__).with_name("boundary_scan.csv")
out.write_text(boundary_scan(heun, "ThmOneBoundary", checkpoints).to_csv())
print(f"\nwrote {out.name}")
