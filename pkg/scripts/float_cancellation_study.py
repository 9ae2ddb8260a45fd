#!/usr/bin/env python3
"""Why exact mode is the default.

Builds the leading-coefficient sequence for x/(x+1) about 1 twice: in
exact rationals and in float mode at a chosen width.  The binomial
weights grow like 2^m, so past m ~ width/2 the float column stops
tracking the exact one, while the exact column keeps shrinking its
step-to-step delta geometrically.
"""

import argparse
import warnings

from invpower.asymptotics import convergence_table
from invpower.corpus import mobius, taylor_coeffs
from invpower.scalar import Scalar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=60)
    ap.add_argument("--precision", type=int, default=64,
                    help="float width in bits (64 = IEEE double)")
    args = ap.parse_args()

    f = mobius(1, 0, 1, 1)
    series = taylor_coeffs(f, Scalar.rational(1), args.m_max + 1)
    exact = convergence_table(series, args.m_max)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        floated = convergence_table(series.to_inexact(args.precision), args.m_max)
    for w in caught:
        print(f"(library warning: {w.message})")

    print(f"{'m':>4} {'exact delta':>14} {'float deviation from exact':>28}")
    for m in range(0, args.m_max + 1, max(1, args.m_max // 15)):
        exact_q0 = exact.rows[m].q0.as_fraction()
        drift = abs(floated.rows[m].q0.as_fraction() - exact_q0)
        delta = exact.rows[m].delta0
        delta_text = delta.render_decimal(3) if delta is not None else "-"
        print(f"{m:>4} {delta_text:>14} {float(drift):>28.3e}")

    last = args.m_max
    exact_delta = exact.rows[last].delta0.as_fraction()
    drift = abs(floated.rows[last].q0.as_fraction() - exact.rows[last].q0.as_fraction())
    print(f"\nat m = {last}: exact delta {float(exact_delta):.3e}, "
          f"float deviation {float(drift):.3e} "
          f"({'noise dominates' if drift > exact_delta else 'still fine'})")


if __name__ == "__main__":
    main()
