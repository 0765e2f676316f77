#!/usr/bin/env python3
"""Run the acceptance checks outside pytest; one line per criterion, exit 1 on any failure."""

from __future__ import annotations

import argparse
import sys
import time

from kcompletion.acceptance import CHECKS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", type=int, nargs="*", help="criterion numbers to run (default: all)")
    ap.add_argument("--verbose", action="store_true", help="print every failure note")
    args = ap.parse_args()
    ok = True
    start = time.perf_counter()
    for i, check in enumerate(CHECKS, 1):
        if args.only and i not in args.only:
            continue
        t = time.perf_counter()
        res = check()
        print(f"{res.line()}  [{time.perf_counter() - t:.1f} s]", flush=True)
        if args.verbose:
            for note in res.notes:
                print(f"      {note}")
        ok &= res.passed
    print(f"total {time.perf_counter() - start:.1f} s: {'ALL PASS' if ok else 'FAILURES'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
