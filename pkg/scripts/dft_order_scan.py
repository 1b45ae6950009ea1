#!/usr/bin/env python3
"""Tabulate the DFT incompatibility order chi(d) = low + d/low over a range.

With --verify, cross-checks the closed form against the exhaustive subset
search and the deficiency route for every d up to the subset-search cap.
"""

import argparse

from incompat import dft_chi, dft_matrix, divisor_decomposition, min_support_uncertainty, tau_fast


def run(max_dim: int, verify: bool) -> None:
    print(f"{'d':>4} {'low':>4} {'high':>5} {'chi':>4}  note")
    for d in range(2, max_dim + 1):
        dec = divisor_decomposition(d)
        chi = dft_chi(d)
        note = "prime, completely incompatible" if dec.low == 1 else ""
        if verify and d <= 8:
            tm = dft_matrix(d)
            searched = min_support_uncertainty(tm).n_ab
            via_deficiency = d - tau_fast(tm)
            status = "ok" if searched == chi == via_deficiency else (
                f"MISMATCH search={searched} deficiency={via_deficiency}"
            )
            note = (note + " " if note else "") + f"[{status}]"
        print(f"{d:>4} {dec.low:>4} {dec.high:>5} {chi:>4}  {note}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-dim", type=int, default=40)
    parser.add_argument("--verify", action="store_true",
                        help="cross-check d <= 8 against both computational routes")
    args = parser.parse_args()
    run(args.max_dim, args.verify)
