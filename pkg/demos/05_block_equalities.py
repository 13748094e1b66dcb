"""Block operators under the lifted weight diag(A, A).

The numerical and Davis-Wielandt radii of diagonal, symmetric and
antidiagonal block operators reduce to radii of the blocks.  Both sides
are computed independently and should agree to optimizer accuracy.
"""

import numpy as np

from semihilbert.blocks import bound_th310, bound_th312, bound_TT, dw_offdiag, omega_block_equalities
from semihilbert.core import validate_psd
from semihilbert.fuzz import random_a_unitary, random_ba_operator, random_weight

if __name__ == "__main__":
    rng = np.random.default_rng(7)
    A = validate_psd(random_weight(rng, 3, 1))
    S, T = random_ba_operator(rng, A), random_ba_operator(rng, A)
    V = random_a_unitary(rng, A)

    rep = omega_block_equalities(A, S, T, V=V)
    for c in rep.checks:
        print(f"{c.name:<16}{c.lhs:12.8f}{c.rhs:12.8f}   diff {abs(c.lhs - c.rhs):.1e}")

    print("\noff-diagonal block [[0, S], [T, 0]]")
    print(f"  dw (optimized) {dw_offdiag(A, S, T):10.6f}")
    for name, fn in (("TT", bound_TT), ("th310", bound_th310), ("th312", bound_th312)):
        print(f"  {name:<15}{fn(A, S, T):10.6f}")
