"""Render schematic SVG figures for the bundled templates.

Usage: python scripts/render_figures.py [--outdir figures] [--n 3]
"""

from __future__ import annotations

import argparse
from pathlib import Path

from canondraw.io import read_json, template_from_json, write_atomic
from canondraw.render import render_svg
from canondraw.templates import CanonicalSpec, is_realizable

DATA = Path(__file__).resolve().parents[1] / "data"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("figures"))
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for path in sorted(DATA.glob("*.json")):
        t = template_from_json(read_json(path))
        ok, w = is_realizable(t, witness=True)
        if not ok:
            print(f"{path.name}: unrealizable, skipped")
            continue
        out = args.outdir / f"{path.stem}_n{args.n}.svg"
        write_atomic(out, render_svg(CanonicalSpec(t, args.n), w))
        print(f"{path.name} -> {out}")


if __name__ == "__main__":
    main()
