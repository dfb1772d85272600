#!/usr/bin/env python3
"""Run the bundled verification corpus and print the aggregate verdict."""

import sys

from burchlab.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["corpus", *sys.argv[1:]]))
