"""Main entry point for the latred package.

This module provides the console script entry point.
"""

import sys

from latred.ui.cli.app import main


def cli_main() -> None:
    """Synchronous entry point for CLI script."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        sys.exit(130)


if __name__ == "__main__":
    cli_main()
