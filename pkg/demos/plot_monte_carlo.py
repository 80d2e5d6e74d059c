"""
Finite-length random codes with successive ML decoding
======================================================

Random codebooks over a BSC(0.11), whose capacity is about half a bit,
decoded by maximum likelihood. Below capacity the error falls with n,
above capacity it stays high. The last part runs the rate-split code of
the two-receiver counterexample at both receivers.
"""

from sdrs import ProbVec, broken_typewriter, bsc, msb_channel
from sdrs.mcsim import CodebookSpec, error_vs_n, simulate_successive, table_to_csv
from sdrs.ratesplit import RatePair, make_split

p = ProbVec.uniform((0, 1))
for rate in (0.25, 0.9):
    rows = error_vs_n(bsc(0.11), CodebookSpec.unsplit(8, rate, p, seed=1), [8, 12, 16],
                      trials=2000, seed=7)
    print(f"R = {rate}")
    print(table_to_csv(rows))

###############################################################################
# The split code at n = 16 carries 20 x 3248 codeword pairs. Both receivers
# already miss m_b most of the time at this length, so the asymptotic
# separation between them is not visible yet.
spec = CodebookSpec(16, RatePair(0.2708, 0.7291), make_split(ProbVec.uniform(range(4)), 0.5))
print("M_a, M_b =", spec.M_a, spec.M_b)
for label, ch in (("Rx1", broken_typewriter()), ("Rx2", msb_channel())):
    r = simulate_successive(ch, spec, "ab", trials=2000, seed=0)
    print(f"{label}: err_a={r.err_a:.3f}  err_b={r.err_b:.3f} +- {r.half_width('b'):.3f}")
