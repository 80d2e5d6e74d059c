"""
Switch splitting and the constraint one receiver breaks
=======================================================

Sender 2 splits its message into four parts that occupy the four cells of
two independent switches. Each receiver decodes two parts, then sender 1,
then the rest. Rates tuned for receiver 2 overload receiver 1.
"""

from sdrs.files import load_switch_fixture
from sdrs.switchsplit import common_rates, feasibility_check, receiver_rates, stage_constraints

ic, sw = load_switch_fixture()
for rx in (1, 2):
    info = ic.letter_info(rx)
    print(f"Rx{rx}: " + "  ".join(f"{k}={v:.4f}" for k, v in info.items()))

###############################################################################
# Stage caps: part fraction times the per-letter information at that stage.
for c in stage_constraints(ic, sw):
    print(f"stage {c.stage}  {c.name:<10s} cap {c.cap:.4f}")

###############################################################################
# Rates at receiver 2's caps fail at receiver 1 on m2b, which receiver 1
# decodes first while receiver 2 decodes it last.
rep = feasibility_check(ic, sw, receiver_rates(ic, sw, 2))
print("first failures:", rep.first_failure)

###############################################################################
# The componentwise minimum of both receivers' caps is always feasible.
print("common rates feasible:", feasibility_check(ic, sw, common_rates(ic, sw)).feasible)
