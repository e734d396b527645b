"""
Brickyard — __main__ entrypoint
Allows: python -m brickyard
"""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
