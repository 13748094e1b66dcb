"""Side-by-side comparison of the new bounds with earlier ones.

Each row is one published comparison: a prior bound, the sharper one, and
the optimized radius on the same scale.  The same table is what
``semihilbert reproduce`` prints as CSV.
"""

from semihilbert.reproduce import reproduce

if __name__ == "__main__":
    print(f"{'row':<14}{'scale':<7}{'prior':>8} {'value':>12}   {'new':>14} {'value':>12}   {'dw':>12}  verdict")
    for r in reproduce():
        if r.scale == "matrix":
            print(f"{r.remark_id:<14}{r.scale:<7}{'adjoint':>8} {r.paper_bound_value:>12}   "
                  f"{'computed':>14} {r.our_bound_value:>12}")
            continue
        print(f"{r.remark_id:<14}{r.scale:<7}{r.paper_bound_id:>8} {r.paper_bound_value:12.6f}   "
              f"{r.our_bound_id:>14} {r.our_bound_value:12.6f}   {r.dw_lower:12.6f}  {r.verdict}")
