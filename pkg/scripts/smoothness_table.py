#!/usr/bin/env python3
"""Print the rho table and smoothness estimate for every catalog mask.

Usage: python scripts/smoothness_table.py [N]
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hermsub.convergence import hermite_convergence_decision, smoothness_estimate
from hermsub.maskio import builtin_mask_names, load_builtin_mask


def main():
    n_levels = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    for name in builtin_mask_names():
        doc = load_builtin_mask(name)
        a = doc.mask
        rep = smoothness_estimate(a, n_levels=n_levels)
        print(f"== {name}  (r={a.rows}, support {a.support()})")
        if rep.failure_stage is not None:
            print(f"   {rep.failure_stage}")
            continue
        print(f"   sum-rule order: {rep.sum_rule_order}")
        rhos = "  ".join(f"{x:.6f}" for x in rep.rho_estimates)
        print(f"   rho_n:          {rhos}")
        print(f"   sm estimate:    {rep.sm_estimate:.6f}")
        m_target = a.rows - 1
        dec = hermite_convergence_decision(a, a.rows, m_target, n_levels=n_levels)
        print(f"   decision at m={m_target}: {dec.label}")


if __name__ == "__main__":
    main()
