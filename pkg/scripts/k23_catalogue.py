"""Catalogue the drawings of K_{2,3} by the rotations of its degree-3 vertices.

Usage: python scripts/k23_catalogue.py [--out PATH]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from canondraw.extraction import k23_catalogue
from canondraw.io import dumps, write_atomic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    s = k23_catalogue()
    rows = []
    for key, count in s.completions.items():
        rot = dict(key)
        equal = rot["1(1)"] == rot["1(2)"]
        rows.append(
            {
                "rotation_1(1)": list(rot["1(1)"]),
                "rotation_1(2)": list(rot["1(2)"]),
                "equal": equal,
                "crossing_patterns": count,
                "crossing_parities": sorted(s.parities[key]),
            }
        )
        print(
            f"{'equal   ' if equal else 'distinct'} {rot['1(1)']} {rot['1(2)']}: "
            f"{count} crossing patterns, parities {sorted(s.parities[key])}"
        )
    print(f"every K2,2 crossed once: {s.equal_classes} classes (equal), {s.distinct_classes} (distinct)")
    if args.out:
        write_atomic(
            args.out,
            dumps({"systems": rows, "equal_classes": s.equal_classes, "distinct_classes": s.distinct_classes}),
        )


if __name__ == "__main__":
    main()
