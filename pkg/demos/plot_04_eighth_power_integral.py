"""
The eighth-power integral
=========================

The second-order ladder uses phi_2'(t) = 2 pi^2 Z(t)^4 / log^4 t.  Over the
inverse image of [T, T+U], the product |zeta(phi_2)|^4 |zeta|^4 integrates to
about U log^8 T / (4 pi^4).  The ratio splits into two factors: the mean of
Z^4 on [T, T+U] relative to log^4 T/(2 pi^2), and (log t / log T)^4 at the
inverse image.  Both tend to 1, from opposite sides and slowly.
"""

import math

from jacobladder import build_ladder
from jacobladder.verify import thm2_records

L2 = build_ladder(2, 10.0, 7000.0)
print(f"image [{L2.phi_min:.1f}, {L2.phi_max:.1f}]")

###############################################################################
# Windows of relative size U = T/log T.

for T in (1250.0, 2500.0, 5000.0, 10_000.0):
    U = T / math.log(T)
    full, mid = thm2_records(L2, T, U)
    moment = mid.rhs / U / (math.log(T) ** 4 / (2 * math.pi ** 2))
    t_lo = float(L2.inverse(T))
    print(f"T={T:7.0f}  ratio={full.ratio:.3f}  moment factor={moment:.3f}  "
          f"log factor={(math.log(t_lo) / math.log(T)) ** 4:.3f}  "
          f"midchain rel={abs(mid.residual / mid.rhs):.1e}")

###############################################################################
# Short windows fluctuate much more.

for T in (2500.0, 5000.0, 10_000.0):
    print(f"T={T:7.0f}  U=50  ratio={thm2_records(L2, T, 50.0)[0].ratio:.3f}")
