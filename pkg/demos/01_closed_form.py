"""Seminorm quantities on small weights where the answers are known by hand.

For A = diag(1, 2) the unit A-sphere is |z1|^2 + 2|z2|^2 = 1.  With the
shift S = [[0, 1], [0, 0]] the quantity <Sz, z>_A = z2 conj(z1) peaks at
sqrt(2)/4, and the Davis-Wielandt radius is 1/2.  The singular weight
[[1, 1], [1, 1]] shows an A-selfadjoint operator that differs from its
A-adjoint.
"""

import math

import numpy as np

from semihilbert import a_adjoint, a_crawford, a_dw_radius, a_numerical_radius, a_op_norm, reduce

D12 = np.diag([1.0, 2.0])
SHIFT = np.array([[0.0, 1.0], [0.0, 0.0]])
ONES = np.ones((2, 2))


def show(label, A, S):
    dw = a_dw_radius(A, S)
    print(f"{label}")
    print(f"  ||S||_A = {a_op_norm(A, S):.6f}   omega_A = {a_numerical_radius(A, S):.6f}"
          f"   c_A = {a_crawford(A, S):.6f}")
    print(f"  dw_A    = {dw.value:.6f}   (cap {dw.upper_cap:.6f}, converged {dw.converged})")


if __name__ == "__main__":
    show("A = S = diag(1,2)  [dw = sqrt(20) = %.6f]" % math.sqrt(20), D12, D12)
    show("A = diag(1,2), S = shift  [omega = sqrt(2)/4, dw = 1/2]", D12, SHIFT)

    S = np.array([[2.0, 2.0], [0.0, 0.0]])
    print("\nA = [[1,1],[1,1]], S = [[2,2],[0,0]]")
    print("  A-adjoint:\n", a_adjoint(ONES, S).real)
    print("  compression onto range(A):", reduce(ONES, S).reduced)
