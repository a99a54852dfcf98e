"""Regenerate the packaged K4 rotation-system table.

Usage: python scripts/build_k4_table.py [--out PATH]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from canondraw.io import dumps, write_atomic
from canondraw.realizer import build_k4_table, k4_table_to_json

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "canondraw" / "data" / "k4_table.json"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    data = k4_table_to_json(build_k4_table())
    write_atomic(args.out, dumps(data))
    print(f"{data['realizable_count']} of {len(data['entries'])} systems realizable -> {args.out}")


if __name__ == "__main__":
    main()
