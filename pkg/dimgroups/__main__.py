#!/usr/bin/env python3
import sys

from dimgroups.cli import run


def main() -> None:
    """
    Main entry point for the dimgroups command line.
    Runs one command and exits with its report's exit code.
    """
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
