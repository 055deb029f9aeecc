"""Entry point for running the CLI directly.

This module allows running the CLI with: python -m latred.ui.cli
"""

import sys

from latred.ui.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
