"""
Certifying chi-square maxima by enumeration
===========================================

For small tables every integer table with a given total can be visited.
That turns the claimed maxima into checked facts:

* flat expectations: max chi-square is ``n (rc - 1)``, at a one-hot table;
* margin expectations: max chi-square is ``n (min(r, c) - 1)`` when
  ``min(r, c)`` divides ``n``, and below it otherwise.
"""

from cramerv import INDEPENDENCE, UNIFORM, certify_max, sup_phi_square_scan

print(f"{'dims':>5} {'n':>2} {'model':>12} {'max chi2':>9} {'claim':>6} verdict  argmax")
for r, c in [(2, 2), (2, 3), (3, 3)]:
    for n in (3, 6):
        for model in (UNIFORM, INDEPENDENCE):
            cert = certify_max(r, c, n, model)
            print(f"{r}x{c:<3} {n:>2} {cert.model:>12} {cert.max_chi_square:>9.3f} "
                  f"{cert.theoretical_claim:>6.0f} {cert.verdict:<8} {cert.argmax_table.tolist()}")

# phi squared over a lattice of probability tables. Both candidate
# ceilings are shown; the scan only reports what it finds.
for g in (2, 4, 8, 12):
    scan = sup_phi_square_scan(2, 3, g)
    print(f"2x3 grid 1/{g:<2}: sup phi2 = {scan.sup_phi_square:.4f}  "
          f"(min(r,c)-1 = {scan.ceiling_min_dim}, rc-1 = {scan.ceiling_cells})")
