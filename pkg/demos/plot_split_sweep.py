"""
How the split point moves information between components
========================================================

Sweeping epsilon from 0 to 1 shifts the share of I(X;Y) that the first
decoded component carries. At epsilon = 0 component a is constant, at
epsilon = 1 component b is.
"""

import numpy as np

from sdrs import ProbVec, broken_typewriter, msb_channel
from sdrs.ratesplit import sweep_epsilon

px = ProbVec.uniform(range(4))
rows = sweep_epsilon(px, [broken_typewriter(), msb_channel()], grid=11)

print(" eps   Rx1 I(Xa;Y)  Rx2 I(Xa;Y)  Rx1 I(Xb;Y|Xa)  Rx2 I(Xb;Y|Xa)")
for eps, (a1, a2) in rows:
    print(f"{eps:4.1f}   {a1.i_a_y:10.4f}  {a2.i_a_y:10.4f}  {a1.i_b_y_given_a:14.4f}  "
          f"{a2.i_b_y_given_a:14.4f}")

###############################################################################
# Whatever the split, the two stages always add up to the full information.
tot = np.array([[a.i_a_y + a.i_b_y_given_a for a in r] for _, r in rows])
print("max |I(Xa;Y)+I(Xb;Y|Xa) - 1| =", np.abs(tot - 1).max())
