#!/usr/bin/env python3
"""Spectra of a zoo of small algebras: ideals, homs, topology, evaluation map.

Usage: python scripts/spectrum_report.py [spec ...]   (default zoo if none)
"""

import argparse

from mvdelta.carriers import carrier_from_spec
from mvdelta.cli import run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("specs", nargs="*", default=[
        "chain:1",
        "chain:4",
        "prod(chain:2,chain:3)",
        "prod(chain:2,chain:2,chain:2)",
        "chang",
    ])
    args = parser.parse_args()
    for spec in args.specs:
        carrier_from_spec(spec)  # validate before printing the banner
        print("=" * 60)
        run(["spectrum", "--algebra", spec])
        print()


if __name__ == "__main__":
    main()
