#!/usr/bin/env python3
"""Regenerate the OEIS b-file prefixes in crates/core/tests/data/oeis.

Each sequence is computed from its OEIS defining formula, independently of
the Rust code, and written in b-file format.
"""

import argparse
from pathlib import Path

TERMS = 2000


def a046699(count):
    # a(1) = a(2) = 1, a(n) = a(n - a(n-1)) + a(n-1 - a(n-2))
    a = [None, 1, 1]
    for n in range(3, count + 1):
        a.append(a[n - a[n - 1]] + a[n - 1 - a[n - 2]])
    return [(n, a[n]) for n in range(1, count + 1)]


def a006949(count):
    # a(0) = a(1) = a(2) = 1, a(n) = a(n-1 - a(n-1)) + a(n-2 - a(n-2))
    a = [1, 1, 1]
    for n in range(3, count):
        a.append(a[n - 1 - a[n - 1]] + a[n - 2 - a[n - 2]])
    return [(n, a[n]) for n in range(count)]


def a005187(count):
    # a(0) = 0, a(n) = n + a(floor(n/2))
    a = [0]
    for n in range(1, count):
        a.append(n + a[n // 2])
    return [(n, a[n]) for n in range(count)]


def a101925(count):
    # 2n - popcount(n) + 1
    return [(n, 2 * n - bin(n).count("1") + 1) for n in range(count)]


def a079559(count):
    # characteristic function of {2k - popcount(k)}
    values = {2 * k - bin(k).count("1") for k in range(count + 1)}
    return [(n, int(n in values)) for n in range(count)]


def a001511(count):
    # 2-adic valuation of 2n
    return [(n, ((n & -n).bit_length())) for n in range(1, count + 1)]


SEQUENCES = {
    "A046699": a046699,
    "A006949": a006949,
    "A079559": a079559,
    "A101925": a101925,
    "A005187": a005187,
    "A001511": a001511,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent
                        / "crates/core/tests/data/oeis")
    parser.add_argument("--terms", type=int, default=TERMS)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for seq_id, fn in SEQUENCES.items():
        path = args.out / f"b{seq_id[1:]}.txt"
        with path.open("w", newline="\n") as f:
            f.write(f"# {seq_id}, first {args.terms} terms, computed from the OEIS definition\n")
            for n, v in fn(args.terms):
                f.write(f"{n} {v}\n")


if __name__ == "__main__":
    main()
