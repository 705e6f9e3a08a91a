"""
Entry point for running kqlab as a module: python -m kqlab
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
