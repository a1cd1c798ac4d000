"""``python -m hilbertlab``."""

import sys

from hilbertlab.cli import main

sys.exit(main())
