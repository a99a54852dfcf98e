"""Run the extraction pipeline on canonical drawings of every small template.

Usage: python scripts/extraction_sweep.py [--m 3] [--size 4] [--target 2] [--ratio 0.5] [--out PATH]
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from canondraw.errors import NotFound
from canondraw.extraction import StageSchedule, extract_canonical
from canondraw.io import dumps, write_atomic
from canondraw.templates import CanonicalSpec, all_templates, canonical_drawing, is_realizable, verify_canonical


@dataclass
class ExtractionSweepConfig:
    m: int = 3
    size: int = 4
    target: int = 2
    ratio: float = 0.5


def sweep(cfg: ExtractionSweepConfig) -> dict:
    outcomes: Counter = Counter()
    t0 = time.perf_counter()
    slowest = 0.0
    for t in all_templates(cfg.m):
        if not is_realizable(t):
            outcomes["unrealizable"] += 1
            continue
        d = canonical_drawing(CanonicalSpec(t, cfg.size))
        s0 = time.perf_counter()
        try:
            res = extract_canonical(d, cfg.target, StageSchedule(cfg.ratio))
        except NotFound:
            outcomes["not-found"] += 1
            continue
        finally:
            slowest = max(slowest, time.perf_counter() - s0)
        ok = not verify_canonical(d, res.classes, res.template)
        outcomes["verified" if ok else "failed-verification"] += 1
    return {
        "config": asdict(cfg),
        "outcomes": dict(outcomes),
        "seconds": round(time.perf_counter() - t0, 3),
        "slowest": round(slowest, 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--size", type=int, default=4)
    ap.add_argument("--target", type=int, default=2)
    ap.add_argument("--ratio", type=float, default=0.5)
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    res = sweep(ExtractionSweepConfig(args.m, args.size, args.target, args.ratio))
    print(f"{res['outcomes']} in {res['seconds']}s (slowest {res['slowest']}s)")
    if args.out:
        write_atomic(args.out, dumps(res))


if __name__ == "__main__":
    main()
