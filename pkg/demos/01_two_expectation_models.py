"""
V under two expectation models
==============================

Chi-square needs expected counts, and there are two natural choices:
expectations built from the table's own margins, or a flat ``n / (rc)``
in every cell. They give the same V on many tables and very different
maxima on others.
"""

import numpy as np

from cramerv import INDEPENDENCE, UNIFORM, ContingencyTable, compute_all, extremal_table

# A perfectly diagonal table: strongest possible association under margins.
diag = ContingencyTable(np.array([[10, 0], [0, 10]]))
for model in (INDEPENDENCE, UNIFORM):
    print(diag, model.tag, compute_all(diag, model))

# All mass in one cell. The margin-based model sees no association at all
# (zero rows and columns contribute nothing), while the flat model reports
# V = sqrt(3) > 1 and modified V = 1.
one_hot = ContingencyTable(np.array([[200, 0], [0, 0]]))
for model in (INDEPENDENCE, UNIFORM):
    res = compute_all(one_hot, model)
    print(f"{model.tag:>12}: chi2={res.chi_square:.1f}  V={res.v:.4f}  modified V={res.modified_v:.4f}")

# The 3x3 analogue reaches V = 2.
big = extremal_table(3, 3, 200)
res = compute_all(big, UNIFORM)
print(f"3x3 one-hot, uniform: V={res.v:.4f}  modified V={res.modified_v:.4f}")
