#!/usr/bin/env python3
"""Classify and verify every presentation JSON in a directory.

Usage: python scripts/classify_corpus.py [corpus_dir] [--seed N]

Writes one line per file: verdict kind, certificate chain, and whether the
certificate verifies.  Generates the named corpus into the directory first
if it is empty or missing.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from gpnorm import (
    VerifyEffort,
    classify,
    expand_to_primary,
    gen_corpus,
    parse_presentation,
    verify_certificate,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", nargs="?", default="corpus")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    directory = Path(args.corpus)
    if not directory.exists() or not list(directory.glob("*.json")):
        gen_corpus(directory)

    fails = 0
    for path in sorted(directory.glob("*.json")):
        p = expand_to_primary(parse_presentation(path.read_text()))
        verdict = classify(p)
        report = verify_certificate(p, verdict, VerifyEffort(seed=args.seed))
        status = "PASS" if report.passed else "FAIL"
        if not report.passed:
            fails += 1
        chain = " -> ".join("{" + ",".join(step) + "}" for step in verdict.certificate.chain)
        print(
            f"{path.name:24s} bounded={str(verdict.bounded):5s} "
            f"{verdict.certificate.kind:22s} {status}  {chain}"
        )
    return 2 if fails else 0


if __name__ == "__main__":
    sys.exit(main())
