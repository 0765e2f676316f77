#!/usr/bin/env python3
"""Print small reference tables: characters, graded dimensions and unit values per preset."""

from __future__ import annotations

import argparse
from fractions import Fraction

from kcompletion.completion import central_invertibility_check, graded_iso_report, molien_dimension
from kcompletion.reptheory import dominant_weights, weyl_character, weyl_dimension
from kcompletion.rootdatum import TorsionPoint, centralizer_subdatum, datum_from_preset, weyl_elements
from kcompletion.suites import ACCEPTANCE_PRESETS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--presets", nargs="*", default=list(ACCEPTANCE_PRESETS))
    ap.add_argument("--height", type=int, default=2)
    ap.add_argument("--order", type=int, default=4)
    args = ap.parse_args()
    for label in args.presets:
        d = datum_from_preset(label)
        print(f"== {label}: rank {d.rank}, |W| = {len(weyl_elements(d))}, rho = {list(d.rho)}")
        for lam in dominant_weights(d, args.height):
            print(f"  chi{list(lam)} (dim {weyl_dimension(d, lam)}): {weyl_character(d, lam)}")
        dims = [molien_dimension(weyl_elements(d), k) for k in range(args.order + 1)]
        print(f"  invariant dims of Sym^d, d <= {args.order}: {dims}")
        q = TorsionPoint.zero(d.rank)
        g = graded_iso_report(d, q, args.order)
        print(f"  generator degrees at the identity: {g.generator_degrees} ({g.status})")
        half = TorsionPoint([Fraction(1, 2)] + [0] * (d.rank - 1))
        z = centralizer_subdatum(d, half)
        unit = central_invertibility_check(d, half).info["unit_value"]
        print(f"  at q = ({half}): centralizer {len(z.roots)} roots, unit value {unit}")


if __name__ == "__main__":
    main()
