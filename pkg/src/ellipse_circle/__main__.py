"""Allow ``python -m ellipse_circle``."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
