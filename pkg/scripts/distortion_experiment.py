#!/usr/bin/env python3
"""Distortion experiment: certified norm growth of powers in the corpus.

For each (group, element) pair below, computes the certified lower bound and
the BFS upper bound of |x^n| for n up to --nmax, prints the table, and
writes CSV files (plus SVG plots) under --out.

Usage: python scripts/distortion_experiment.py [--nmax 12] [--out results]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from gpnorm import (
    aut0_generators,
    classify,
    distortion_table,
    expand_to_primary,
    named_presentation,
    normal_form,
    orbit,
    parse_word,
)
from gpnorm.cli import _write_svg

CASES = [
    # (corpus name, word literal, orbit depth, length cap, radius)
    ("psl", "a b", 4, 8, 6),
    ("f2", "a b a^-1 b^-1", 2, 6, 4),
    ("z", "a", 2, 4, 6),
    ("dinf", "a b", 6, 13, 2),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name, literal, depth, cap, radius in CASES:
        p = expand_to_primary(named_presentation(name))
        x = parse_word(p, literal)
        verdict = classify(p)
        cert = None if verdict.bounded else verdict.certificate
        orb = orbit(
            p, [normal_form(p, [(v, 1)]) for v in p.vertex_ids],
            aut0_generators(p), depth, cap,
        )
        rows = distortion_table(p, x, cert, args.nmax, orb, radius)
        print(f"== {name}: x = {literal} ({verdict.certificate.kind}) ==")
        print("n,lower,upper")
        lines = ["n,lower,upper"]
        for n, lo, up in rows:
            line = f"{n},{lo},{'' if up is None else up}"
            print(line)
            lines.append(line)
        (out / f"{name}_distortion.csv").write_text("\n".join(lines) + "\n")
        _write_svg(str(out / f"{name}_distortion.svg"), rows)
        print()
    print(f"wrote CSV/SVG to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
