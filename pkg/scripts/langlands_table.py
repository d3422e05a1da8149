#!/usr/bin/env python3
"""Print the supersingular-module-to-singular-point table for one group.

Example:
    python scripts/langlands_table.py --q 7 --group SL2
"""

from __future__ import annotations

import argparse
import sys

from heckelab.gf import field_create
from heckelab.scheme import correspondence_table
from heckelab.torus import GroupKind, TorusCtx


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--group", choices=["GL2", "SL2", "PGL2"], default="SL2")
    ap.add_argument("--ambient-degree", type=int, default=0)
    args = ap.parse_args()

    q = args.q
    p = next(c for c in range(2, q + 1) if q % c == 0)
    e = 0
    qq = q
    while qq % p == 0:
        qq //= p
        e += 1
    tctx = TorusCtx(field_create(p, args.ambient_degree or e), q)
    rep = correspondence_table(tctx, GroupKind(args.group))
    print(f"{'module':<28} component  segment  coord      gm")
    for row in rep["rows"]:
        pt = row["point"]
        print(
            f"{row['module']:<28} {str(pt['component']):<10} {pt['segment']:<8} "
            f"{str(pt['coord']):<10} {pt['gm']}"
        )
    print()
    print(f"modules: {rep['module_count']}, singular points: {rep['node_count']}")
    print(f"injective: {rep['injective']}, image = nodes: {rep['image_is_nodes']}")
    if "fiber_partition" in rep:
        print(f"fibers (by character exponent): {rep['fiber_partition']}")
        print(f"fibers match the packet partition: {rep['fibers_match_L_packets']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
