"""Why the printed Crawford lower bound fails, and the fix.

On the unit A-sphere ||Sz||_A^2 = <S#S z, z>_A, which is at least
c_A(S#S), not c_A(S#S)^2.  When c_A(S#S) > 1 the squared version is
larger, and the bound can exceed the radius.  A rank-one compression with
a scalar 2 is the smallest example: dw^2 = 4 + 16 = 20, while the printed
second term is 4 * (1 + 16) = 68.
"""

import numpy as np

from semihilbert import a_dw_radius
from semihilbert.bounds import lower_crawford, lower_crawford_corrected

if __name__ == "__main__":
    A = np.diag([1.0, 0.0])
    for t in (0.5, 1.0, 1.5, 2.0, 3.0):
        S = np.diag([t, 0.0])
        dw2 = a_dw_radius(A, S).value ** 2
        printed = lower_crawford(A, S) ** 2
        fixed = lower_crawford_corrected(A, S) ** 2
        flag = "exceeds dw^2" if printed > dw2 + 1e-9 else ""
        print(f"t = {t:3.1f}   dw^2 = {dw2:9.4f}   printed = {printed:9.4f}   corrected = {fixed:9.4f}   {flag}")
